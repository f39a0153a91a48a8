#include "manicheck/core/json_io.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/text.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace manicheck {
namespace {

const Json& field(const Json& j, const char* name) {
    if (!j.is_object()) throw FormatError("expected a JSON object");
    auto it = j.find(name);
    if (it == j.end()) throw FormatError(std::string("missing field \"") + name + "\"");
    return *it;
}

std::string string_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_string()) throw FormatError(std::string("field \"") + name + "\" must be a string");
    return v.get<std::string>();
}

std::optional<std::string> optional_string(const Json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw FormatError(std::string("field \"") + name + "\" must be a string");
    return it->get<std::string>();
}

double number_field(const Json& j, const char* name, double fallback) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) return fallback;
    if (!it->is_number()) throw FormatError(std::string("field \"") + name + "\" must be a number");
    return it->get<double>();
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json to_json(const Quantiles& q) {
    return Json{{"median", q.median}, {"p25", q.p25}, {"p75", q.p75}};
}

Quantiles quantiles_from_json(const Json& j) {
    return Quantiles{number_field(j, "p25", 0.0), number_field(j, "median", 0.0),
                     number_field(j, "p75", 0.0)};
}

Json to_json(const StageTiming& t) {
    return Json{{"retrieval_seconds", t.retrieval_seconds},
                {"context_build_seconds", t.context_build_seconds},
                {"inference_seconds", t.inference_seconds}};
}

StageTiming timing_from_json(const Json& j) {
    return StageTiming{number_field(j, "retrieval_seconds", 0.0),
                       number_field(j, "context_build_seconds", 0.0),
                       number_field(j, "inference_seconds", 0.0)};
}

}  // namespace

Json to_json(const ClaimRecord& r) {
    Json j;
    j["id"] = r.id;
    j["headline"] = r.headline;
    j["kind"] = to_string(r.kind);
    j["label"] = to_string(r.label);
    j["provider"] = r.provider;
    j["region"] = r.region;
    j["published_date"] = r.published_date.str();
    j["origin_id"] = r.origin_id ? Json(*r.origin_id) : Json(nullptr);
    if (r.manipulation) {
        j["manipulation"] = Json{{"original", r.manipulation->original},
                                 {"replacement", r.manipulation->replacement}};
    } else {
        j["manipulation"] = nullptr;
    }
    return j;
}

ClaimRecord claim_record_from_json(const Json& j) {
    ClaimRecord r;
    r.id = string_field(j, "id");
    r.headline = string_field(j, "headline");
    r.kind = parse_claim_kind(string_field(j, "kind"));
    r.label = parse_veracity(string_field(j, "label"));
    r.provider = string_field(j, "provider");
    r.region = string_field(j, "region");
    auto date = CalendarDate::try_parse(string_field(j, "published_date"));
    if (!date) throw FormatError("field \"published_date\" must be an ISO 8601 date");
    r.published_date = *date;
    r.origin_id = optional_string(j, "origin_id");
    auto m = j.find("manipulation");
    if (m != j.end() && !m->is_null()) {
        r.manipulation = ManipulationSpan{string_field(*m, "original"),
                                          string_field(*m, "replacement")};
    }
    return r;
}

Json to_json(const Document& d) {
    return Json{{"url", d.url},
                {"rank", d.rank},
                {"fetched_at", d.fetched_at},
                {"title", d.title},
                {"text", d.text}};
}

Document document_from_json(const Json& j) {
    Document d;
    d.url = string_field(j, "url");
    d.rank = static_cast<int>(number_field(j, "rank", 1));
    d.fetched_at = optional_string(j, "fetched_at").value_or("");
    d.title = optional_string(j, "title").value_or("");
    d.text = string_field(j, "text");
    return d;
}

Json to_json(const Verdict& v) {
    return Json{{"label", to_string(v.label)}, {"explanation", v.explanation}, {"raw", v.raw}};
}

Verdict verdict_from_json(const Json& j) {
    return Verdict{parse_verdict_label(string_field(j, "label")),
                   optional_string(j, "explanation").value_or(""), string_field(j, "raw")};
}

Json to_json(const Prediction& p, bool include_timing) {
    Json j;
    j["claim"] = p.claim;
    j["mode"] = p.mode;
    j["region"] = p.region ? Json(*p.region) : Json(nullptr);
    j["date"] = p.date ? Json(p.date->str()) : Json(nullptr);
    j["majority"] = to_string(p.majority);
    Json runs = Json::array();
    for (const auto& v : p.runs) runs.push_back(to_json(v));
    j["runs"] = std::move(runs);
    Json digest = Json::array();
    for (const auto& s : p.context_digest) digest.push_back(Json{{"url", s.url}, {"rank", s.rank}});
    j["context_digest"] = std::move(digest);
    j["warnings"] = p.warnings;
    if (include_timing) j["elapsed"] = to_json(p.elapsed);
    return j;
}

Prediction prediction_from_json(const Json& j) {
    Prediction p;
    p.claim = string_field(j, "claim");
    p.mode = optional_string(j, "mode").value_or("");
    p.region = optional_string(j, "region");
    if (auto d = optional_string(j, "date")) p.date = CalendarDate::parse(*d);
    p.majority = parse_verdict_label(string_field(j, "majority"));
    for (const auto& v : field(j, "runs")) p.runs.push_back(verdict_from_json(v));
    for (const auto& s : field(j, "context_digest")) {
        p.context_digest.push_back(
            SourceRef{string_field(s, "url"), static_cast<int>(number_field(s, "rank", 0))});
    }
    if (auto w = j.find("warnings"); w != j.end()) p.warnings = w->get<std::vector<std::string>>();
    if (auto e = j.find("elapsed"); e != j.end()) p.elapsed = timing_from_json(*e);
    return p;
}

Json to_json(const ConfusionMatrix& cm) {
    return Json{{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

ConfusionMatrix confusion_from_json(const Json& j) {
    auto count = [&](const char* name) {
        const Json& v = field(j, name);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
            throw FormatError(std::string("confusion \"") + name +
                              "\" must be a non-negative integer");
        }
        return v.get<std::size_t>();
    };
    return ConfusionMatrix{count("tp"), count("fp"), count("fn"), count("tn")};
}

Json to_json(const Metrics& m) {
    return Json{{"averaging", "micro"},
                {"precision", optional_number(m.precision)},
                {"recall", optional_number(m.recall)},
                {"f1", optional_number(m.f1)},
                {"accuracy", optional_number(m.accuracy)}};
}

Json to_json(const EvalReport& r, bool include_timing) {
    Json j;
    j["mode"] = r.mode;
    j["config_digest"] = r.config_digest;
    Json rows = Json::array();
    for (const auto& c : r.per_claim) {
        Json row;
        row["id"] = c.id;
        row["kind"] = c.kind ? Json(to_string(*c.kind)) : Json(nullptr);
        row["ground_truth"] = to_string(c.ground_truth);
        row["majority"] = to_string(c.majority);
        Json labels = Json::array();
        for (auto l : c.run_labels) labels.push_back(to_string(l));
        row["runs"] = std::move(labels);
        row["accepted"] = c.accepted;
        row["predicted_positive"] = c.predicted_positive;
        row["explanation_valid"] =
            c.explanation_valid ? Json(*c.explanation_valid) : Json(nullptr);
        row["error"] = c.error ? Json(*c.error) : Json(nullptr);
        row["warnings"] = c.warnings;
        if (include_timing) row["elapsed"] = to_json(c.elapsed);
        rows.push_back(std::move(row));
    }
    j["per_claim"] = std::move(rows);
    j["confusion"] = to_json(r.confusion);
    j["metrics"] = to_json(r.metrics);
    Json per_kind = Json::object();
    for (const auto& [kind, acc] : r.per_kind_accuracy) per_kind[std::string(to_string(kind))] = acc;
    j["per_kind_accuracy"] = std::move(per_kind);
    j["non_conclusive_rate_runs"] = r.non_conclusive_rate_runs;
    j["non_conclusive_rate_majority"] = r.non_conclusive_rate_majority;
    if (include_timing) {
        j["timing"] = Json{{"samples", r.timing.samples},
                           {"context_build_seconds", to_json(r.timing.context_build)},
                           {"inference_seconds", to_json(r.timing.inference)}};
    }
    return j;
}

EvalReport eval_report_from_json(const Json& j) {
    EvalReport r;
    r.mode = optional_string(j, "mode").value_or("");
    r.config_digest = optional_string(j, "config_digest").value_or("");
    r.confusion = confusion_from_json(field(j, "confusion"));
    if (auto m = j.find("metrics"); m != j.end() && m->is_object()) {
        auto metric = [&](const char* name) -> std::optional<double> {
            auto it = m->find(name);
            if (it == m->end() || it->is_null()) return std::nullopt;
            return it->get<double>();
        };
        r.metrics.precision = metric("precision");
        r.metrics.recall = metric("recall");
        r.metrics.f1 = metric("f1");
        r.metrics.accuracy = metric("accuracy");
    }
    if (auto rows = j.find("per_claim"); rows != j.end()) {
        for (const auto& row : *rows) {
            ClaimOutcome c;
            c.id = string_field(row, "id");
            if (auto k = optional_string(row, "kind")) c.kind = parse_claim_kind(*k);
            c.ground_truth = parse_veracity(string_field(row, "ground_truth"));
            c.majority = parse_verdict_label(string_field(row, "majority"));
            if (auto runs = row.find("runs"); runs != row.end()) {
                for (const auto& l : *runs) c.run_labels.push_back(parse_verdict_label(l.get<std::string>()));
            }
            c.accepted = field(row, "accepted").get<bool>();
            if (auto pp = row.find("predicted_positive"); pp != row.end()) c.predicted_positive = pp->get<bool>();
            if (auto ev = row.find("explanation_valid"); ev != row.end() && !ev->is_null()) {
                c.explanation_valid = ev->get<bool>();
            }
            c.error = optional_string(row, "error");
            if (auto w = row.find("warnings"); w != row.end()) c.warnings = w->get<std::vector<std::string>>();
            if (auto e = row.find("elapsed"); e != row.end()) c.elapsed = timing_from_json(*e);
            r.per_claim.push_back(std::move(c));
        }
    }
    if (auto pk = j.find("per_kind_accuracy"); pk != j.end()) {
        for (const auto& [k, v] : pk->items()) r.per_kind_accuracy[parse_claim_kind(k)] = v.get<double>();
    }
    r.non_conclusive_rate_runs = number_field(j, "non_conclusive_rate_runs", 0.0);
    r.non_conclusive_rate_majority = number_field(j, "non_conclusive_rate_majority", 0.0);
    if (auto t = j.find("timing"); t != j.end()) {
        r.timing.samples = static_cast<std::size_t>(number_field(*t, "samples", 0));
        r.timing.context_build = quantiles_from_json(field(*t, "context_build_seconds"));
        r.timing.inference = quantiles_from_json(field(*t, "inference_seconds"));
    }
    return r;
}

std::string dump_json(const Json& j, int indent) {
    return j.dump(indent, ' ', false, Json::error_handler_t::replace);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    thread_local std::mt19937_64 rng{std::random_device{}()};
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(rng());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

Json read_json_file(const std::filesystem::path& path) {
    std::string content = read_file(path);
    try {
        return Json::parse(content);
    } catch (const Json::parse_error& e) {
        throw FormatError(path.string() + ": invalid JSON at byte " + std::to_string(e.byte));
    }
}

void for_each_jsonl(std::istream& in, const std::function<void(const Json&, std::size_t)>& fn) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim_view(line).empty()) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error&) {
            throw FormatError("line " + std::to_string(line_no) + ": invalid JSON");
        }
        try {
            fn(j, line_no);
        } catch (const FormatError& e) {
            throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const InvalidArgument& e) {
            throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const Json::exception& e) {
            throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

std::vector<ClaimRecord> read_claims_jsonl(std::istream& in) {
    std::vector<ClaimRecord> out;
    for_each_jsonl(in, [&](const Json& j, std::size_t) { out.push_back(claim_record_from_json(j)); });
    return out;
}

std::vector<ClaimRecord> read_claims_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("cannot open file: " + path.string());
    try {
        return read_claims_jsonl(in);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_claims_jsonl(std::ostream& out, const std::vector<ClaimRecord>& records) {
    for (const auto& r : records) out << dump_json(to_json(r)) << '\n';
}

}  // namespace manicheck
