#pragma once

// JSON and JSON Lines serialization of the domain types. Field names are the
// snake_case names used in the dataset, cache and report files.

#include "manicheck/core/model.hpp"
#include "manicheck/core/report.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace manicheck {

using Json = nlohmann::ordered_json;

Json to_json(const ClaimRecord& r);
ClaimRecord claim_record_from_json(const Json& j);

Json to_json(const Document& d);
Document document_from_json(const Json& j);

Json to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

// Timing is left out when `include_timing` is false so that two runs over the
// same fixtures serialize identically.
Json to_json(const Prediction& p, bool include_timing = true);
Prediction prediction_from_json(const Json& j);

Json to_json(const ConfusionMatrix& cm);
ConfusionMatrix confusion_from_json(const Json& j);
Json to_json(const Metrics& m);
Json to_json(const EvalReport& r, bool include_timing = true);
EvalReport eval_report_from_json(const Json& j);

// Serializes with invalid UTF-8 replaced rather than throwing.
std::string dump_json(const Json& j, int indent = -1);

// Reads a whole file; throws NotFoundError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
// Writes via a temporary sibling and rename, so readers never see a torn file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

Json read_json_file(const std::filesystem::path& path);

// Calls `fn(json, line_number)` for every non-blank line. Parse failures are
// FormatErrors naming the line.
void for_each_jsonl(std::istream& in, const std::function<void(const Json&, std::size_t)>& fn);

std::vector<ClaimRecord> read_claims_jsonl(std::istream& in);
std::vector<ClaimRecord> read_claims_jsonl(const std::filesystem::path& path);
void write_claims_jsonl(std::ostream& out, const std::vector<ClaimRecord>& records);

}  // namespace manicheck
