#pragma once

#include "manicheck/core/model.hpp"

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace manicheck::eval {

enum class BenchmarkScheme { Binary, SixWayCollapse, ThreeWayCollapse };

std::string_view to_string(BenchmarkScheme s) noexcept;
// "binary", "sixway" or "threeway".
BenchmarkScheme parse_benchmark_scheme(std::string_view s);

struct BenchmarkAdapterConfig {
    BenchmarkScheme scheme = BenchmarkScheme::Binary;
    bool evidence_mode = false;
};

struct BenchmarkItem {
    std::string id;  // "id" field, or "row-<line>" zero padded
    std::string claim;
    Veracity ground_truth = Veracity::True;
    std::optional<std::vector<std::string>> evidence;  // only in evidence mode
};

// Lower case, spaces and underscores to '-', "pants-on-fire" -> "pants-fire".
std::string normalize_benchmark_label(std::string_view label);

// Ground truth under `scheme`, or nullopt for a dropped neutral label.
// Throws FormatError for a label the scheme does not know.
std::optional<Veracity> collapse_label(std::string_view label, BenchmarkScheme scheme);

// JSONL rows {"claim": str, "label": str, "evidence": [str]?, "id": str?}.
// Errors carry the line number.
std::vector<BenchmarkItem> load_benchmark(std::istream& in, const BenchmarkAdapterConfig& config);
std::vector<BenchmarkItem> load_benchmark(const std::filesystem::path& path, const BenchmarkAdapterConfig& config);

}  // namespace manicheck::eval
