#include "manicheck/dataset/assembly.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/log.hpp"
#include "manicheck/core/text.hpp"
#include "manicheck/core/validate.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace manicheck::dataset {
namespace {

ClaimRecord derived_from(const ClaimRecord& origin) {
    ClaimRecord r;
    r.provider = origin.provider;
    r.region = origin.region;
    r.published_date = origin.published_date;
    r.origin_id = origin.id;
    return r;
}

std::string numbered(const std::string& base, std::size_t sequence, bool bare_first) {
    if (sequence == 1 && bare_first) return base;
    return base + std::to_string(sequence);
}

std::string replace_at(std::string_view s, std::size_t pos, std::size_t len, std::string_view with) {
    std::string out(s.substr(0, pos));
    out.append(with);
    out.append(s.substr(pos + len));
    return out;
}

std::optional<std::string> opt_string(const Json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_string()) throw FormatError(std::string("\"") + key + "\" must be a string");
    return j[key].get<std::string>();
}

std::string req_string(const Json& j, const char* key) {
    auto v = opt_string(j, key);
    if (!v) throw FormatError(std::string("missing \"") + key + "\"");
    return *v;
}

template <class T, class F>
std::vector<T> read_jsonl(const std::filesystem::path& path, F parse) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open " + path.string());
    std::vector<T> out;
    try {
        for_each_jsonl(in, [&](const Json& j, std::size_t) { out.push_back(parse(j)); });
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    return out;
}

Json optional_json(const std::optional<std::string>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

ClaimRecord apply_alteration(const ClaimRecord& origin, const AlterationDirective& d, std::size_t sequence) {
    if (origin.kind != ClaimKind::Original) {
        throw InvalidDirective("alteration of " + origin.id + ": origin must be an original claim");
    }
    std::string original = text::trim(d.original);
    std::string replacement = text::trim(d.replacement);
    if (original.empty() || replacement.empty()) {
        throw InvalidDirective("alteration of " + origin.id + ": original and replacement must be non-empty");
    }
    if (text::same_text_ci(original, replacement)) {
        throw InvalidDirective("alteration of " + origin.id + ": replacement equals original");
    }
    auto positions = text::fragment_positions(origin.headline, original);
    if (positions.empty()) {
        throw NotFoundError("alteration of " + origin.id + ": \"" + original + "\" not in headline");
    }
    std::size_t pos = positions.front();
    if (d.offset) {
        auto it = std::find_if(positions.begin(), positions.end(), [&](std::size_t p) {
            return text::codepoint_length(std::string_view(origin.headline).substr(0, p)) == *d.offset;
        });
        if (it == positions.end()) {
            throw NotFoundError("alteration of " + origin.id + ": \"" + original + "\" not at offset " +
                                std::to_string(*d.offset));
        }
        pos = *it;
    } else if (positions.size() > 1) {
        throw AmbiguityError("alteration of " + origin.id + ": \"" + original + "\" occurs " +
                             std::to_string(positions.size()) + " times; give an offset");
    }
    if (text::contains_fragment(origin.headline, replacement)) {
        throw InvalidDirective("alteration of " + origin.id + ": \"" + replacement +
                               "\" already occurs in the headline");
    }

    ClaimRecord r = derived_from(origin);
    r.id = origin.id + numbered("-alt", sequence, false);
    r.kind = ClaimKind::ContextAltered;
    r.label = Veracity::False;
    r.headline = replace_at(origin.headline, pos, original.size(), replacement);
    r.manipulation = ManipulationSpan{original, replacement};

    auto violations = validate_claim_record(r);
    if (!violations.empty()) {
        throw InvalidDirective("alteration of " + origin.id + ": " + text::join(violations, "; "));
    }
    if (revert_alteration(r) != origin.headline) {
        throw InvalidDirective("alteration of " + origin.id + ": result cannot be reverted unambiguously");
    }
    return r;
}

std::string revert_alteration(const ClaimRecord& altered) {
    if (!altered.manipulation) throw InvalidArgument(altered.id + ": record carries no manipulation");
    const auto& m = *altered.manipulation;
    auto positions = text::fragment_positions(altered.headline, m.replacement);
    if (positions.empty()) throw NotFoundError(altered.id + ": replacement not in headline");
    return replace_at(altered.headline, positions.front(), m.replacement.size(), m.original);
}

ClaimRecord make_negation_record(const ClaimRecord& origin, const std::string& negated_headline,
                                 std::size_t sequence) {
    if (origin.kind != ClaimKind::Original) {
        throw InvalidArgument("negation of " + origin.id + ": origin must be an original claim");
    }
    ClaimRecord r = derived_from(origin);
    r.id = origin.id + numbered("-neg", sequence, true);
    r.kind = ClaimKind::Negation;
    r.label = Veracity::False;
    r.headline = text::trim(negated_headline);
    return r;
}

std::optional<AlterationDirective> magnitude_directive(const ClaimRecord& origin, const ContextItem& item,
                                                       unsigned factor) {
    if (item.kind != ContextKind::Quantity || item.text.empty() || item.text.size() > 15 || factor < 2) {
        return std::nullopt;
    }
    if (!std::all_of(item.text.begin(), item.text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return std::nullopt;
    }
    unsigned long long v = std::stoull(item.text);
    AlterationDirective d;
    d.origin_id = origin.id;
    d.original = item.text;
    d.replacement = std::to_string(v * factor);
    d.rationale = "magnitude increase x" + std::to_string(factor);
    return d;
}

Json to_json(const AlterationDirective& d) {
    Json j{{"origin_id", d.origin_id}, {"original", d.original}, {"replacement", d.replacement}};
    j["rationale"] = optional_json(d.rationale);
    j["offset"] = d.offset ? Json(*d.offset) : Json(nullptr);
    return j;
}

AlterationDirective directive_from_json(const Json& j) {
    if (!j.is_object()) throw FormatError("directive must be a JSON object");
    AlterationDirective d;
    d.origin_id = req_string(j, "origin_id");
    d.original = req_string(j, "original");
    d.replacement = req_string(j, "replacement");
    d.rationale = opt_string(j, "rationale");
    if (j.contains("offset") && !j["offset"].is_null()) {
        if (!j["offset"].is_number_unsigned()) throw FormatError("\"offset\" must be a non-negative integer");
        d.offset = j["offset"].get<std::size_t>();
    }
    return d;
}

std::vector<AlterationDirective> read_directives_jsonl(const std::filesystem::path& path) {
    return read_jsonl<AlterationDirective>(path, directive_from_json);
}

Derivation derive(const ClaimRecord& origin, inference::LlmProvider& provider,
                  const GenerationPrompts& prompts) {
    Derivation d;
    d.origin_id = origin.id;
    d.headline = origin.headline;
    try {
        d.negation = generate_negation(origin.headline, provider, prompts);
    } catch (const GenerationError& e) {
        d.negation_error = std::string(e.what()) + " (raw: " + e.raw() + ")";
        log::warn(origin.id + ": " + e.what());
    }
    try {
        d.key_context = extract_key_context(origin.headline, provider, prompts);
    } catch (const ExtractionError& e) {
        d.extraction_error = std::string(e.what()) + " (raw: " + e.raw() + ")";
        log::warn(origin.id + ": " + e.what());
    }
    return d;
}

Json to_json(const Derivation& d) {
    Json items = Json::array();
    for (const auto& ci : d.key_context) items.push_back(Json{{"kind", to_string(ci.kind)}, {"text", ci.text}});
    Json j{{"origin_id", d.origin_id}, {"headline", d.headline}};
    j["negation"] = optional_json(d.negation);
    j["negation_error"] = optional_json(d.negation_error);
    j["key_context"] = std::move(items);
    j["extraction_error"] = optional_json(d.extraction_error);
    return j;
}

Derivation derivation_from_json(const Json& j) {
    if (!j.is_object()) throw FormatError("derivation must be a JSON object");
    Derivation d;
    d.origin_id = req_string(j, "origin_id");
    d.headline = req_string(j, "headline");
    d.negation = opt_string(j, "negation");
    d.negation_error = opt_string(j, "negation_error");
    d.extraction_error = opt_string(j, "extraction_error");
    if (j.contains("key_context")) {
        for (const auto& item : j.at("key_context")) {
            d.key_context.push_back(ContextItem{parse_context_kind(req_string(item, "kind")), req_string(item, "text")});
        }
    }
    return d;
}

Json to_json(const ReviewRow& r) {
    Json j{{"origin_id", r.origin_id}, {"kind", to_string(r.kind)}};
    if (r.proposed_headline) j["proposed_headline"] = *r.proposed_headline;
    if (r.directive) {
        j["original"] = r.directive->original;
        j["replacement"] = r.directive->replacement;
        j["rationale"] = optional_json(r.directive->rationale);
        j["offset"] = r.directive->offset ? Json(*r.directive->offset) : Json(nullptr);
    }
    j["approved"] = r.approved;
    j["note"] = r.note;
    return j;
}

ReviewRow review_row_from_json(const Json& j) {
    if (!j.is_object()) throw FormatError("review row must be a JSON object");
    ReviewRow r;
    r.origin_id = req_string(j, "origin_id");
    r.kind = parse_claim_kind(req_string(j, "kind"));
    if (!j.contains("approved") || !j["approved"].is_boolean()) {
        throw FormatError("\"approved\" must be true or false");
    }
    r.approved = j["approved"].get<bool>();
    r.note = opt_string(j, "note").value_or("");
    if (r.kind == ClaimKind::Negation) {
        r.proposed_headline = req_string(j, "proposed_headline");
    } else if (r.kind == ClaimKind::ContextAltered) {
        Json dj = j;
        r.directive = directive_from_json(dj);
    } else {
        throw FormatError("review rows must be negation or context_altered");
    }
    return r;
}

std::vector<ReviewRow> read_review_jsonl(const std::filesystem::path& path) {
    return read_jsonl<ReviewRow>(path, review_row_from_json);
}

void write_review_jsonl(const std::filesystem::path& path, const std::vector<ReviewRow>& rows) {
    std::string out;
    for (const auto& r : rows) out += dump_json(to_json(r)) + "\n";
    write_file_atomic(path, out);
}

std::vector<ReviewRow> review_rows(const std::vector<Derivation>& derivations,
                                   const std::vector<AlterationDirective>& directives,
                                   const std::vector<ClaimRecord>& originals, bool propose_magnitude) {
    std::map<std::string, const ClaimRecord*> by_id;
    for (const auto& o : originals) by_id[o.id] = &o;

    std::vector<ReviewRow> rows;
    std::set<std::pair<std::string, std::string>> covered;
    for (const auto& d : directives) {
        covered.emplace(d.origin_id, d.original);
        ReviewRow r;
        r.origin_id = d.origin_id;
        r.kind = ClaimKind::ContextAltered;
        r.directive = d;
        rows.push_back(std::move(r));
    }
    for (const auto& d : derivations) {
        if (d.negation) {
            ReviewRow r;
            r.origin_id = d.origin_id;
            r.kind = ClaimKind::Negation;
            r.proposed_headline = d.negation;
            rows.push_back(std::move(r));
        }
        auto origin = by_id.find(d.origin_id);
        if (!propose_magnitude || origin == by_id.end()) continue;
        for (const auto& item : d.key_context) {
            if (covered.count({d.origin_id, item.text})) continue;
            if (auto md = magnitude_directive(*origin->second, item)) {
                covered.emplace(d.origin_id, item.text);
                ReviewRow r;
                r.origin_id = d.origin_id;
                r.kind = ClaimKind::ContextAltered;
                r.directive = std::move(md);
                r.note = "templated proposal";
                rows.push_back(std::move(r));
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ReviewRow& a, const ReviewRow& b) { return a.origin_id < b.origin_id; });
    return rows;
}

Json to_json(const DatasetSummary& s) {
    return Json{{"total", s.total}, {"by_kind", s.by_kind}, {"by_provider", s.by_provider}, {"by_region", s.by_region}};
}

AssembledDataset assemble_dataset(const std::vector<ClaimRecord>& originals,
                                  const std::vector<ClaimRecord>& negations,
                                  const std::vector<ClaimRecord>& alterations) {
    AssembledDataset out;
    std::set<std::string> ids;
    std::set<std::string> original_ids;
    auto add = [&](const ClaimRecord& r, ClaimKind expected) {
        if (r.kind != expected) {
            throw IntegrityError(r.id + ": expected kind " + std::string(to_string(expected)));
        }
        if (!ids.insert(r.id).second) throw IntegrityError("duplicate record id " + r.id);
        auto violations = validate_claim_record(r);
        if (!violations.empty()) throw IntegrityError(r.id + ": " + text::join(violations, "; "));
        if (expected == ClaimKind::Original) {
            original_ids.insert(r.id);
        } else if (!r.origin_id || !original_ids.count(*r.origin_id)) {
            throw IntegrityError(r.id + ": origin_id " + r.origin_id.value_or("(none)") +
                                 " does not name an original claim");
        }
        out.records.push_back(r);
    };
    for (const auto& r : originals) add(r, ClaimKind::Original);
    for (const auto& r : negations) add(r, ClaimKind::Negation);
    for (const auto& r : alterations) add(r, ClaimKind::ContextAltered);

    std::sort(out.records.begin(), out.records.end(),
              [](const ClaimRecord& a, const ClaimRecord& b) { return a.id < b.id; });
    for (const auto& r : out.records) {
        ++out.summary.by_kind[std::string(to_string(r.kind))];
        ++out.summary.by_provider[r.provider];
        ++out.summary.by_region[r.region];
    }
    out.summary.total = out.records.size();
    return out;
}

AssembledDataset assemble_from_review(const std::vector<ClaimRecord>& originals,
                                      const std::vector<ReviewRow>& rows) {
    std::map<std::string, const ClaimRecord*> by_id;
    for (const auto& o : originals) by_id[o.id] = &o;
    std::map<std::string, std::size_t> neg_seq, alt_seq;
    std::vector<ClaimRecord> negations, alterations;
    for (const auto& row : rows) {
        if (!row.approved) continue;
        auto it = by_id.find(row.origin_id);
        if (it == by_id.end()) {
            throw IntegrityError("review row refers to unknown original " + row.origin_id);
        }
        if (row.kind == ClaimKind::Negation) {
            negations.push_back(make_negation_record(*it->second, *row.proposed_headline, ++neg_seq[row.origin_id]));
        } else {
            alterations.push_back(apply_alteration(*it->second, *row.directive, ++alt_seq[row.origin_id]));
        }
    }
    return assemble_dataset(originals, negations, alterations);
}

}  // namespace manicheck::dataset
