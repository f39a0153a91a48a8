#pragma once

#include "manicheck/core/json_io.hpp"
#include "manicheck/core/model.hpp"
#include "manicheck/dataset/generation.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace manicheck::dataset {

// Human-authored instruction to swap one context item of an original headline.
struct AlterationDirective {
    std::string origin_id;
    std::string original;
    std::string replacement;
    std::optional<std::string> rationale;
    // Code point offset of the occurrence to replace; required when
    // `original` occurs more than once.
    std::optional<std::size_t> offset;

    friend bool operator==(const AlterationDirective&, const AlterationDirective&) = default;
};

// The ContextAltered record derived from `origin`, id `<origin.id>-alt<sequence>`.
// Errors: NotFoundError when `original` is absent (or not at `offset`),
// InvalidDirective for a non-Original origin, an empty fragment, a
// replacement equal to the original or one that makes the result invalid or
// irreversible, AmbiguityError for repeated occurrences without an offset.
ClaimRecord apply_alteration(const ClaimRecord& origin, const AlterationDirective& directive,
                             std::size_t sequence = 1);

// The headline with the manipulation undone (replacement -> original).
std::string revert_alteration(const ClaimRecord& altered);

// Negation record `<origin.id>-neg` (or `-neg<sequence>` past the first).
ClaimRecord make_negation_record(const ClaimRecord& origin, const std::string& negated_headline,
                                 std::size_t sequence = 1);

// Templated proposal: a whole-number Quantity multiplied by `factor`
// ("150" -> "1500"). Nothing for other kinds or non-integer text.
std::optional<AlterationDirective> magnitude_directive(const ClaimRecord& origin, const ContextItem& item,
                                                       unsigned factor = 10);

Json to_json(const AlterationDirective& d);
AlterationDirective directive_from_json(const Json& j);
std::vector<AlterationDirective> read_directives_jsonl(const std::filesystem::path& path);

// LLM output for one original, before review.
struct Derivation {
    std::string origin_id;
    std::string headline;
    std::optional<std::string> negation;
    std::optional<std::string> negation_error;  // set when generation failed
    std::vector<ContextItem> key_context;
    std::optional<std::string> extraction_error;
};

// Negation and key-context extraction for one original. Generation failures
// are recorded in the result for review; provider errors propagate.
Derivation derive(const ClaimRecord& origin, inference::LlmProvider& provider,
                  const GenerationPrompts& prompts = {});

Json to_json(const Derivation& d);
Derivation derivation_from_json(const Json& j);

// A proposed derived claim awaiting a reviewer's `approved` decision.
struct ReviewRow {
    std::string origin_id;
    ClaimKind kind = ClaimKind::Negation;
    std::optional<std::string> proposed_headline;   // negations
    std::optional<AlterationDirective> directive;   // context alterations
    bool approved = false;
    std::string note;
};

Json to_json(const ReviewRow& r);
ReviewRow review_row_from_json(const Json& j);
std::vector<ReviewRow> read_review_jsonl(const std::filesystem::path& path);
void write_review_jsonl(const std::filesystem::path& path, const std::vector<ReviewRow>& rows);

// Review rows, unapproved: one per generated negation, one per directive and,
// when `propose_magnitude` is set, one per templated magnitude change of an
// extracted quantity not already covered by a directive.
std::vector<ReviewRow> review_rows(const std::vector<Derivation>& derivations,
                                   const std::vector<AlterationDirective>& directives,
                                   const std::vector<ClaimRecord>& originals, bool propose_magnitude = true);

struct DatasetSummary {
    std::map<std::string, std::size_t> by_kind;
    std::map<std::string, std::size_t> by_provider;
    std::map<std::string, std::size_t> by_region;
    std::size_t total = 0;
};

Json to_json(const DatasetSummary& s);

struct AssembledDataset {
    std::vector<ClaimRecord> records;  // sorted by id
    DatasetSummary summary;
};

// Merges the three sets. Throws IntegrityError on a duplicate id, a derived
// record whose origin_id does not name an original in `originals`, or any
// record failing validate_claim_record.
AssembledDataset assemble_dataset(const std::vector<ClaimRecord>& originals,
                                  const std::vector<ClaimRecord>& negations,
                                  const std::vector<ClaimRecord>& alterations);

// Builds the derived records from the approved review rows, then assembles.
AssembledDataset assemble_from_review(const std::vector<ClaimRecord>& originals,
                                      const std::vector<ReviewRow>& rows);

}  // namespace manicheck::dataset
