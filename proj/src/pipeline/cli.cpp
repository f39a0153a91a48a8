#include "manicheck/pipeline/cli.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/core/log.hpp"
#include "manicheck/dataset/assembly.hpp"
#include "manicheck/dataset/feed.hpp"
#include "manicheck/dataset/generation.hpp"
#include "manicheck/eval/benchmark.hpp"
#include "manicheck/eval/protocols.hpp"
#include "manicheck/eval/scoring.hpp"
#include "manicheck/pipeline/detector.hpp"
#include "manicheck/retrieval/fetch.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace manicheck::cli {
namespace {

using pipeline::Settings;

struct GlobalOptions {
    std::string config_file;
    bool json = false;
    std::vector<std::string> overrides;  // key=value
    std::string search_fixture, pages_fixture, llm_script, cache_dir, prompt_template, prompts_dir;
};

struct DetectOptions {
    std::string claim;
    std::size_t k = 0, chunks = 0, runs = 0;
    double temperature = -1.0;
    bool no_retrieval = false;
    std::string region, date;
};

struct EvalCliOptions {
    std::string dataset, out;
    bool no_retrieval = false;
    std::size_t parallel = 0;
    bool majority_runs_only = false;
};

struct BenchmarkCliOptions {
    std::string data, scheme = "binary", out;
    bool evidence_mode = false;
    std::size_t parallel = 0;
};

struct DatasetCliOptions {
    std::string feeds, out, originals, derivations, directives, review, summary, ingest_date;
    bool filter = false;
    bool no_proposals = false;
};

struct MetricsCliOptions {
    std::string report;
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

std::string fixed(double v, int digits = 4) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(digits) << v;
    return ss.str();
}

std::string fixed(const std::optional<double>& v) { return v ? fixed(*v) : "undefined"; }

Settings build_settings(const GlobalOptions& g, const Settings::EnvLookup& env) {
    Settings s;
    if (!g.config_file.empty()) s.load_file(g.config_file);
    if (env) {
        s.apply_environment(env);
    } else {
        s.apply_environment();
    }
    auto put = [&](const std::string& key, const std::string& v) {
        if (!v.empty()) s.set(key, v);
    };
    put("search.fixture", g.search_fixture);
    put("fetch.fixture", g.pages_fixture);
    put("llm.script", g.llm_script);
    put("cache.dir", g.cache_dir);
    put("prompt.template", g.prompt_template);
    put("prompts.dir", g.prompts_dir);
    for (const auto& kv : g.overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw InvalidArgument("--set expects key=value, got \"" + kv + "\"");
        s.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return s;
}

void print_metrics(std::ostream& out, const ConfusionMatrix& cm, const Metrics& m) {
    out << "confusion  tp=" << cm.tp << " fp=" << cm.fp << " fn=" << cm.fn << " tn=" << cm.tn << "\n"
        << "precision  " << fixed(m.precision) << "\n"
        << "recall     " << fixed(m.recall) << "\n"
        << "f1         " << fixed(m.f1) << "\n"
        << "accuracy   " << fixed(m.accuracy) << "\n";
}

Json summary_json(const EvalReport& r, const std::string& path) {
    Json per_kind = Json::object();
    for (const auto& [k, v] : r.per_kind_accuracy) per_kind[std::string(to_string(k))] = v;
    return Json{{"report", path},
                {"mode", r.mode},
                {"claims", r.per_claim.size()},
                {"confusion", to_json(r.confusion)},
                {"metrics", to_json(r.metrics)},
                {"per_kind_accuracy", per_kind},
                {"non_conclusive_rate_runs", r.non_conclusive_rate_runs},
                {"non_conclusive_rate_majority", r.non_conclusive_rate_majority}};
}

void emit_report(const EvalReport& r, const std::string& path, bool json, std::ostream& out) {
    write_file_atomic(path, dump_json(to_json(r), 2) + "\n");
    if (json) {
        out << dump_json(summary_json(r, path)) << "\n";
        return;
    }
    std::size_t errors = static_cast<std::size_t>(
        std::count_if(r.per_claim.begin(), r.per_claim.end(), [](const ClaimOutcome& c) { return c.error.has_value(); }));
    out << "mode       " << r.mode << "\n"
        << "claims     " << r.per_claim.size() << (errors ? " (" + std::to_string(errors) + " failed)" : "") << "\n";
    print_metrics(out, r.confusion, r.metrics);
    for (const auto& [k, v] : r.per_kind_accuracy) {
        out << "accuracy[" << to_string(k) << "] " << fixed(v) << "\n";
    }
    out << "non-conclusive  runs " << fixed(r.non_conclusive_rate_runs) << "  majority "
        << fixed(r.non_conclusive_rate_majority) << "\n"
        << "context build s  p25 " << fixed(r.timing.context_build.p25, 3) << "  median "
        << fixed(r.timing.context_build.median, 3) << "  p75 " << fixed(r.timing.context_build.p75, 3) << "\n"
        << "inference s      p25 " << fixed(r.timing.inference.p25, 3) << "  median "
        << fixed(r.timing.inference.median, 3) << "  p75 " << fixed(r.timing.inference.p75, 3) << "\n"
        << "report written to " << path << "\n";
}

void print_prediction(const Prediction& p, bool json, std::ostream& out) {
    if (json) {
        out << dump_json(to_json(p)) << "\n";
        return;
    }
    out << "claim    " << p.claim << "\n"
        << "verdict  " << to_string(p.majority) << "\n"
        << "runs    ";
    for (const auto& v : p.runs) out << " " << to_string(v.label);
    out << "\n";
    if (!p.context_digest.empty()) {
        out << "sources\n";
        for (const auto& s : p.context_digest) out << "  [" << s.rank << "] " << s.url << "\n";
    }
    for (const auto& w : p.warnings) out << "warning  " << w << "\n";
    for (std::size_t i = 0; i < p.runs.size(); ++i) {
        out << "\n--- run " << i + 1 << " ---\n" << p.runs[i].raw << "\n";
    }
    out << "\nelapsed  retrieval " << fixed(p.elapsed.retrieval_seconds, 3) << "s  context "
        << fixed(p.elapsed.context_build_seconds, 3) << "s  inference " << fixed(p.elapsed.inference_seconds, 3)
        << "s\n";
}

std::shared_ptr<inference::LlmProvider> dataset_llm(const pipeline::PipelineConfig& config) {
    auto providers = pipeline::resolve_providers(config);
    if (!providers.llm) throw ConfigError("llm: no provider configured (set llm.script or LLM_API_URL)");
    return providers.llm;
}

dataset::GenerationPrompts dataset_prompts(const pipeline::PipelineConfig& config) {
    dataset::GenerationPrompts prompts;
    if (config.prompts_dir) prompts = dataset::GenerationPrompts::from_directory(*config.prompts_dir);
    prompts.temperature = config.temperature;
    return prompts;
}

template <class T>
void write_jsonl(const std::string& path, const std::vector<T>& rows) {
    std::string content;
    for (const auto& r : rows) content += dump_json(to_json(r)) + "\n";
    write_file_atomic(path, content);
}

std::vector<dataset::Derivation> read_derivations(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open file: " + path);
    std::vector<dataset::Derivation> out;
    try {
        for_each_jsonl(in, [&](const Json& j, std::size_t) { out.push_back(dataset::derivation_from_json(j)); });
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
    return out;
}

void validate_date(const std::string& s) {
    if (!s.empty() && !CalendarDate::try_parse(s)) throw CLI::ValidationError("--date", "expected YYYY-MM-DD");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const Settings::EnvLookup& env) {
    log::ScopedSink sink([&err](std::string_view msg) { err << "warning: " << msg << "\n"; });

    CLI::App app{"Manipulated content detection with retrieval-augmented LLM inference.", "manicheck"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--config", g.config_file, "Settings file (key = value lines)");
    app.add_flag("--json", g.json, "Machine-readable JSON on standard output");
    app.add_option("--set", g.overrides, "Override one setting, key=value (repeatable)");
    app.add_option("--search-fixture", g.search_fixture, "Mock search results (JSON)");
    app.add_option("--pages-fixture", g.pages_fixture, "Offline page manifest (JSON)");
    app.add_option("--llm-script", g.llm_script, "Scripted LLM transcript (JSON)");
    app.add_option("--cache-dir", g.cache_dir, "Page cache directory");
    app.add_option("--prompt-template", g.prompt_template, "Detector prompt template file");
    app.add_option("--prompts-dir", g.prompts_dir, "Directory of dataset generation prompts");

    DetectOptions d;
    auto* detect = app.add_subcommand("detect", "Classify one claim");
    detect->add_option("claim", d.claim, "Claim text")->required();
    detect->add_option("--k", d.k, "Documents to collect (default 3)")->check(CLI::PositiveNumber);
    detect->add_option("--chunks", d.chunks, "Chunks in the context (default 5)")->check(CLI::PositiveNumber);
    detect->add_option("--runs", d.runs, "Inference runs, odd (default 3)")
        ->check(CLI::Validator([](std::string& v) { return std::stoul(v) % 2 == 1 ? "" : "runs must be odd"; },
                               "ODD"));
    detect->add_option("--temperature", d.temperature, "Sampling temperature (default 0.1)")->check(CLI::Range(0.0, 2.0));
    detect->add_flag("--no-retrieval", d.no_retrieval, "Answer without retrieved context");
    detect->add_option("--region", d.region, "News region, passed to search as locale");
    detect->add_option("--date", d.date, "Publication date YYYY-MM-DD (recorded only)");

    EvalCliOptions e;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a labeled dataset");
    eval_cmd->add_option("--dataset", e.dataset, "Dataset JSONL")->required();
    eval_cmd->add_option("--out", e.out, "Report path")->required();
    eval_cmd->add_flag("--no-retrieval", e.no_retrieval, "Ablation: no retrieved context");
    eval_cmd->add_option("--parallel", e.parallel, "Claims in flight (default 4)")->check(CLI::PositiveNumber);
    eval_cmd->add_flag("--majority-runs-only", e.majority_runs_only,
                       "Validate explanations on majority runs only");

    EvalCliOptions a;
    auto* ablation = app.add_subcommand("ablation", "Evaluate a dataset without retrieval");
    ablation->add_option("--dataset", a.dataset, "Dataset JSONL")->required();
    ablation->add_option("--out", a.out, "Report path")->required();
    ablation->add_option("--parallel", a.parallel, "Claims in flight (default 4)")->check(CLI::PositiveNumber);

    BenchmarkCliOptions b;
    auto* bench = app.add_subcommand("benchmark", "Evaluate an external fact-checking benchmark");
    bench->add_option("--data", b.data, "Benchmark JSONL {claim, label, evidence?}")->required();
    bench->add_option("--scheme", b.scheme, "Label scheme")->check(CLI::IsMember({"binary", "sixway", "threeway"}));
    bench->add_flag("--evidence-mode", b.evidence_mode, "Use the rows' evidence instead of web retrieval");
    bench->add_option("--out", b.out, "Report path")->required();
    bench->add_option("--parallel", b.parallel, "Claims in flight (default 4)")->check(CLI::PositiveNumber);

    DatasetCliOptions ds;
    auto* dataset_cmd = app.add_subcommand("dataset", "Build a manipulated-content dataset");
    dataset_cmd->require_subcommand(1);
    dataset_cmd->fallthrough();
    auto* ingest = dataset_cmd->add_subcommand("ingest", "Feeds -> original claims JSONL");
    ingest->add_option("--feeds", ds.feeds, "Feeds manifest (JSON)")->required();
    ingest->add_option("--out", ds.out, "Originals JSONL")->required();
    ingest->add_flag("--filter", ds.filter, "Keep only claim-worthy headlines (LLM)");
    ingest->add_option("--ingest-date", ds.ingest_date, "Date for undated entries (default today)");
    auto* derive = dataset_cmd->add_subcommand("derive", "Generate negations and key contexts (LLM)");
    derive->add_option("--originals", ds.originals, "Originals JSONL")->required();
    derive->add_option("--out", ds.out, "Derivations JSONL")->required();
    auto* review = dataset_cmd->add_subcommand("review-export", "Write the human review file");
    review->add_option("--originals", ds.originals, "Originals JSONL")->required();
    review->add_option("--derivations", ds.derivations, "Derivations JSONL")->required();
    review->add_option("--directives", ds.directives, "Alteration directives JSONL");
    review->add_flag("--no-proposals", ds.no_proposals, "Skip templated magnitude proposals");
    review->add_option("--out", ds.out, "Review JSONL")->required();
    auto* assemble = dataset_cmd->add_subcommand("assemble", "Approved review rows -> dataset JSONL");
    assemble->add_option("--originals", ds.originals, "Originals JSONL")->required();
    assemble->add_option("--review", ds.review, "Reviewed JSONL")->required();
    assemble->add_option("--out", ds.out, "Dataset JSONL")->required();
    assemble->add_option("--summary", ds.summary, "Summary JSON path");

    MetricsCliOptions m;
    auto* metrics = app.add_subcommand("metrics", "Recompute metrics from a report or counts");
    auto* report_opt = metrics->add_option("--report", m.report, "Report JSON");
    auto* tp = metrics->add_option("--tp", m.tp);
    auto* fp = metrics->add_option("--fp", m.fp);
    auto* fn = metrics->add_option("--fn", m.fn);
    auto* tn = metrics->add_option("--tn", m.tn);
    for (auto* o : {tp, fp, fn, tn}) o->excludes(report_opt);

    auto* cache = app.add_subcommand("cache", "Page cache maintenance");
    cache->require_subcommand(1);
    cache->fallthrough();
    auto* purge = cache->add_subcommand("purge", "Delete every cached page");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        validate_date(d.date);
        validate_date(ds.ingest_date);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* target = &app;
        while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
        out << target->help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& pe) {
        err << "error: " << pe.what() << "\n\n";
        const CLI::App* target = &app;
        while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
        err << target->help();
        return kExitUsage;
    }

    try {
        Settings settings = build_settings(g, env);

        if (detect->parsed()) {
            if (d.k) settings.set("k_documents", std::to_string(d.k));
            if (d.chunks) settings.set("retrieved_chunks", std::to_string(d.chunks));
            if (d.runs) settings.set("runs", std::to_string(d.runs));
            if (d.temperature >= 0.0) settings.set("temperature", fixed(d.temperature, 6));
            if (d.no_retrieval) settings.set("mode", "ablation");
            auto config = pipeline::PipelineConfig::from_settings(settings);
            auto detector = pipeline::Detector::from_config(config);
            pipeline::DetectRequest req;
            req.claim = d.claim;
            if (!d.region.empty()) req.region = d.region;
            if (!d.date.empty()) req.date = CalendarDate::parse(d.date);
            print_prediction(detector.detect(req), g.json, out);
            return kExitOk;
        }

        if (eval_cmd->parsed() || ablation->parsed()) {
            const EvalCliOptions& o = eval_cmd->parsed() ? e : a;
            if (o.parallel) settings.set("parallel", std::to_string(o.parallel));
            if (o.no_retrieval) settings.set("mode", "ablation");
            auto dataset = read_claims_jsonl(std::filesystem::path(o.dataset));
            auto config = pipeline::PipelineConfig::from_settings(settings);
            auto detector = pipeline::Detector::from_config(config);
            eval::EvalOptions opts;
            opts.parallel = config.parallel;
            opts.scoring.majority_runs_only = o.majority_runs_only;
            EvalReport report = ablation->parsed() ? eval::run_ablation(dataset, detector, opts)
                                                   : eval::evaluate_dataset(dataset, detector, opts);
            emit_report(report, o.out, g.json, out);
            return kExitOk;
        }

        if (bench->parsed()) {
            if (b.parallel) settings.set("parallel", std::to_string(b.parallel));
            eval::BenchmarkAdapterConfig adapter{eval::parse_benchmark_scheme(b.scheme), b.evidence_mode};
            auto items = eval::load_benchmark(std::filesystem::path(b.data), adapter);
            auto config = pipeline::PipelineConfig::from_settings(settings);
            auto detector = pipeline::Detector::from_config(config);
            eval::EvalOptions opts;
            opts.parallel = config.parallel;
            EvalReport report = eval::run_benchmark(items, detector, b.evidence_mode, opts);
            emit_report(report, b.out, g.json, out);
            return kExitOk;
        }

        if (dataset_cmd->parsed()) {
            auto config = pipeline::PipelineConfig::from_settings(settings);
            if (ingest->parsed()) {
                std::filesystem::path manifest(ds.feeds);
                auto sources = dataset::read_feeds_manifest(manifest);
                std::shared_ptr<net::HttpClient> http;
                if (config.providers.pages_fixture) {
                    http = net::FixtureHttpClient::from_manifest(*config.providers.pages_fixture);
                } else {
                    http = std::make_shared<net::LiveHttpClient>();
                }
                CalendarDate today = ds.ingest_date.empty() ? CalendarDate::today_utc() : CalendarDate::parse(ds.ingest_date);
                auto entries = dataset::ingest_feeds(sources, manifest.parent_path(), http.get(), today);
                auto originals = dataset::originals_from_entries(entries);
                std::size_t before = originals.size();
                if (ds.filter) {
                    auto llm = dataset_llm(config);
                    auto prompts = dataset_prompts(config);
                    std::erase_if(originals, [&](const ClaimRecord& r) {
                        return !dataset::filter_claimworthy(r.headline, *llm, prompts);
                    });
                }
                std::ostringstream content;
                write_claims_jsonl(content, originals);
                write_file_atomic(ds.out, content.str());
                if (g.json) {
                    out << dump_json(Json{{"entries", entries.size()},
                                          {"originals", before},
                                          {"kept", originals.size()},
                                          {"out", ds.out}})
                        << "\n";
                } else {
                    out << entries.size() << " feed entries, " << before << " originals, " << originals.size()
                        << " kept -> " << ds.out << "\n";
                }
                return kExitOk;
            }
            if (derive->parsed()) {
                auto originals = read_claims_jsonl(std::filesystem::path(ds.originals));
                auto llm = dataset_llm(config);
                auto prompts = dataset_prompts(config);
                std::vector<dataset::Derivation> rows;
                std::size_t failures = 0;
                for (const auto& r : originals) {
                    if (r.kind != ClaimKind::Original) continue;
                    rows.push_back(dataset::derive(r, *llm, prompts));
                    if (!rows.back().negation) ++failures;
                }
                write_jsonl(ds.out, rows);
                if (g.json) {
                    out << dump_json(Json{{"derivations", rows.size()}, {"negation_failures", failures}, {"out", ds.out}})
                        << "\n";
                } else {
                    out << rows.size() << " derivations (" << failures << " negation failures) -> " << ds.out << "\n";
                }
                return kExitOk;
            }
            if (review->parsed()) {
                auto originals = read_claims_jsonl(std::filesystem::path(ds.originals));
                auto derivations = read_derivations(ds.derivations);
                std::vector<dataset::AlterationDirective> directives;
                if (!ds.directives.empty()) directives = dataset::read_directives_jsonl(ds.directives);
                auto rows = dataset::review_rows(derivations, directives, originals, !ds.no_proposals);
                dataset::write_review_jsonl(ds.out, rows);
                if (g.json) {
                    out << dump_json(Json{{"rows", rows.size()}, {"out", ds.out}}) << "\n";
                } else {
                    out << rows.size() << " rows to review -> " << ds.out << "\n";
                }
                return kExitOk;
            }
            if (assemble->parsed()) {
                auto originals = read_claims_jsonl(std::filesystem::path(ds.originals));
                auto rows = dataset::read_review_jsonl(ds.review);
                auto assembled = dataset::assemble_from_review(originals, rows);
                std::ostringstream content;
                write_claims_jsonl(content, assembled.records);
                write_file_atomic(ds.out, content.str());
                Json summary = dataset::to_json(assembled.summary);
                if (!ds.summary.empty()) write_file_atomic(ds.summary, dump_json(summary, 2) + "\n");
                if (g.json) {
                    out << dump_json(summary) << "\n";
                } else {
                    out << assembled.summary.total << " records -> " << ds.out << "\n";
                    for (const auto& [k, n] : assembled.summary.by_kind) out << "  " << k << ": " << n << "\n";
                }
                return kExitOk;
            }
        }

        if (metrics->parsed()) {
            ConfusionMatrix cm;
            if (!m.report.empty()) {
                cm = eval_report_from_json(read_json_file(m.report)).confusion;
            } else {
                if (!(*tp && *fp && *fn && *tn)) {
                    throw InvalidArgument("metrics needs --report or all of --tp --fp --fn --tn");
                }
                cm = ConfusionMatrix{m.tp, m.fp, m.fn, m.tn};
            }
            Metrics met = eval::compute_metrics(cm);
            if (g.json) {
                out << dump_json(Json{{"confusion", to_json(cm)}, {"metrics", to_json(met)}}) << "\n";
            } else {
                print_metrics(out, cm, met);
            }
            return kExitOk;
        }

        if (purge->parsed()) {
            auto config = pipeline::PipelineConfig::from_settings(settings);
            if (!config.fetch.cache_dir) throw ConfigError("no cache directory configured (--cache-dir or MANICHECK_CACHE_DIR)");
            std::size_t removed = retrieval::PageCache(*config.fetch.cache_dir).purge();
            if (g.json) {
                out << dump_json(Json{{"removed", removed}}) << "\n";
            } else {
                out << "removed " << removed << " cached pages\n";
            }
            return kExitOk;
        }
    } catch (const InvalidArgument& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitFailure;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace manicheck::cli
