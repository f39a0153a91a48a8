#include "manicheck/eval/benchmark.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/core/text.hpp"

#include <cstdio>
#include <fstream>

namespace manicheck::eval {

std::string_view to_string(BenchmarkScheme s) noexcept {
    switch (s) {
        case BenchmarkScheme::Binary: return "binary";
        case BenchmarkScheme::SixWayCollapse: return "sixway";
        case BenchmarkScheme::ThreeWayCollapse: return "threeway";
    }
    return "binary";
}

BenchmarkScheme parse_benchmark_scheme(std::string_view s) {
    if (s == "binary") return BenchmarkScheme::Binary;
    if (s == "sixway") return BenchmarkScheme::SixWayCollapse;
    if (s == "threeway") return BenchmarkScheme::ThreeWayCollapse;
    throw InvalidArgument("unknown benchmark scheme \"" + std::string(s) + "\" (binary, sixway, threeway)");
}

std::string normalize_benchmark_label(std::string_view label) {
    std::string out = text::ascii_lower(text::collapse_whitespace(label));
    for (char& c : out) {
        if (c == ' ' || c == '_') c = '-';
    }
    if (out == "pants-on-fire") out = "pants-fire";
    return out;
}

std::optional<Veracity> collapse_label(std::string_view label, BenchmarkScheme scheme) {
    std::string l = normalize_benchmark_label(label);
    switch (scheme) {
        case BenchmarkScheme::Binary:
            if (l == "true") return Veracity::True;
            if (l == "false") return Veracity::False;
            break;
        case BenchmarkScheme::SixWayCollapse:
            if (l == "true" || l == "mostly-true") return Veracity::True;
            if (l == "false" || l == "pants-fire") return Veracity::False;
            if (l == "half-true" || l == "barely-true") return std::nullopt;
            break;
        case BenchmarkScheme::ThreeWayCollapse:
            if (l == "true") return Veracity::True;
            if (l == "false") return Veracity::False;
            if (l == "half-true") return std::nullopt;
            break;
    }
    throw FormatError("label \"" + std::string(label) + "\" is not part of the " +
                      std::string(to_string(scheme)) + " scheme");
}

std::vector<BenchmarkItem> load_benchmark(std::istream& in, const BenchmarkAdapterConfig& config) {
    std::vector<BenchmarkItem> out;
    for_each_jsonl(in, [&](const Json& j, std::size_t line) {
        auto fail = [](const std::string& why) { throw FormatError(why); };
        if (!j.is_object()) fail("row must be a JSON object");
        auto claim = j.find("claim");
        auto label = j.find("label");
        if (claim == j.end() || !claim->is_string() || text::trim_view(claim->get<std::string>()).empty()) {
            fail("\"claim\" must be a non-empty string");
        }
        if (label == j.end() || !label->is_string()) fail("\"label\" must be a string");
        std::optional<Veracity> truth;
        truth = collapse_label(label->get<std::string>(), config.scheme);
        if (!truth) return;

        BenchmarkItem item;
        if (auto id = j.find("id"); id != j.end() && id->is_string()) {
            item.id = id->get<std::string>();
        } else {
            char buf[32];
            std::snprintf(buf, sizeof buf, "row-%06zu", line);
            item.id = buf;
        }
        item.claim = text::trim(claim->get<std::string>());
        item.ground_truth = *truth;
        if (config.evidence_mode) {
            std::vector<std::string> evidence;
            if (auto ev = j.find("evidence"); ev != j.end() && !ev->is_null()) {
                if (!ev->is_array()) fail("\"evidence\" must be an array of strings");
                for (const auto& e : *ev) {
                    if (!e.is_string()) fail("\"evidence\" must be an array of strings");
                    evidence.push_back(e.get<std::string>());
                }
            }
            item.evidence = std::move(evidence);
        }
        out.push_back(std::move(item));
    });
    return out;
}

std::vector<BenchmarkItem> load_benchmark(const std::filesystem::path& path, const BenchmarkAdapterConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open file: " + path.string());
    try {
        return load_benchmark(in, config);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace manicheck::eval
