#include "manicheck/context/embedding.hpp"
#include "manicheck/context/splitter.hpp"
#include "manicheck/context/vector_index.hpp"
#include "manicheck/core/errors.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/core/validate.hpp"
#include "manicheck/eval/scoring.hpp"
#include "manicheck/inference/verdict.hpp"
#include "manicheck/pipeline/cli.hpp"
#include "manicheck/retrieval/fetch.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace manicheck;

namespace {

py::object optional_float(const std::optional<double>& v) {
    return v ? py::object(py::float_(*v)) : py::object(py::none());
}

VerdictLabel label_from_string(const std::string& s) { return parse_verdict_label(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Claim verification pipeline core";

    py::register_exception<Error>(m, "ManicheckError", PyExc_RuntimeError);

    m.def(
        "compute_metrics",
        [](std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
            Metrics met = eval::compute_metrics(ConfusionMatrix{tp, fp, fn, tn});
            py::dict d;
            d["precision"] = optional_float(met.precision);
            d["recall"] = optional_float(met.recall);
            d["f1"] = optional_float(met.f1);
            d["accuracy"] = optional_float(met.accuracy);
            return d;
        },
        py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"));

    m.def(
        "parse_verdict",
        [](const std::string& raw) {
            Verdict v = inference::parse_verdict(raw);
            return py::make_tuple(std::string(to_string(v.label)), v.explanation);
        },
        py::arg("raw"), "Returns (label, explanation); label is true, false or non_conclusive.");

    m.def(
        "majority",
        [](const std::vector<std::string>& labels) {
            std::vector<VerdictLabel> parsed;
            for (const auto& l : labels) parsed.push_back(label_from_string(l));
            return std::string(to_string(majority_label(parsed)));
        },
        py::arg("labels"));

    m.def(
        "split",
        [](const std::string& text, std::size_t chunk_size, std::size_t overlap) {
            context::SplitterConfig cfg;
            cfg.chunk_size = chunk_size;
            cfg.overlap = overlap;
            cfg.validate();
            std::vector<std::pair<std::string, std::size_t>> out;
            for (const auto& c : context::split_recursive(text, cfg)) out.emplace_back(c.text, c.char_start);
            return out;
        },
        py::arg("text"), py::arg("chunk_size") = 100, py::arg("overlap") = 20,
        "Returns [(chunk_text, char_start)] with offsets in code points.");

    m.def("embed_mock", [](const std::string& text) { return context::MockHashEmbedding::embed_one(text); },
          py::arg("text"));

    m.def(
        "cosine_similarity",
        [](const std::vector<double>& a, const std::vector<double>& b) { return context::cosine_similarity(a, b); },
        py::arg("a"), py::arg("b"));

    m.def(
        "top_n",
        [](const std::vector<std::vector<double>>& rows, const std::vector<double>& query, std::size_t n) {
            context::VectorIndex index;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                EmbeddedChunk e;
                e.chunk.seq = i;
                e.vector = rows[i];
                index.add(std::move(e));
            }
            std::vector<std::size_t> out;
            for (const auto& s : context::rank_top_n(index, query, n)) out.push_back(s.index);
            return out;
        },
        py::arg("rows"), py::arg("query"), py::arg("n") = 5);

    m.def("cache_key", [](const std::string& url) { return retrieval::cache_key(url); }, py::arg("url"));

    m.def(
        "validate_claim_record",
        [](const std::string& json_line) { return validate_claim_record(claim_record_from_json(Json::parse(json_line))); },
        py::arg("json_line"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = cli::run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
