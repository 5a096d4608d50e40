#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leakscope/analytics.hpp"
#include "leakscope/corpus_io.hpp"
#include "leakscope/dork.hpp"
#include "leakscope/error.hpp"
#include "leakscope/persona.hpp"
#include "leakscope/report.hpp"
#include "leakscope/rulesets.hpp"
#include "leakscope/synth.hpp"

namespace py = pybind11;
using namespace leakscope;

namespace {

dork::QueryStyle style_from_name(const std::string& name) {
    if (name == "verbatim") return dork::QueryStyle::Verbatim;
    if (name == "normalized") return dork::QueryStyle::Normalized;
    throw Error(ErrorCode::InvalidArgument, "style must be \"verbatim\" or \"normalized\"");
}

} // namespace

PYBIND11_MODULE(_leakscope, m) {
    m.doc() = "offline disclosure-risk analysis over exported profile corpora";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::IoError)
                PyErr_SetString(PyExc_OSError, e.what());
            else
                PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<dork::QuerySpec>(m, "QuerySpec")
        .def(py::init<>())
        .def_readwrite("site", &dork::QuerySpec::site)
        .def_readwrite("region", &dork::QuerySpec::region)
        .def_readwrite("country", &dork::QuerySpec::country)
        .def_readwrite("company", &dork::QuerySpec::company)
        .def_readwrite("employment_types", &dork::QuerySpec::employment_types)
        .def_readwrite("extra_groups", &dork::QuerySpec::extra_groups)
        .def("__eq__",
             [](const dork::QuerySpec& a, const dork::QuerySpec& b) { return a == b; })
        .def("__repr__", [](const dork::QuerySpec& spec) {
            return "QuerySpec(site='" + spec.site + "', company='" + spec.company + "')";
        });

    m.def(
        "build_dork_query",
        [](const dork::QuerySpec& spec, const std::string& style) {
            return dork::build_dork_query(spec, style_from_name(style));
        },
        py::arg("spec"), py::arg("style") = "verbatim");

    m.def("parse_dork_query",
          [](const std::string& query) { return dork::parse_dork_query(query); });

    py::class_<persona::DiscScores>(m, "DiscScores")
        .def_readonly("d", &persona::DiscScores::d)
        .def_readonly("i", &persona::DiscScores::i)
        .def_readonly("s", &persona::DiscScores::s)
        .def_readonly("c", &persona::DiscScores::c)
        .def_readonly("evidence_tokens", &persona::DiscScores::evidence_tokens)
        .def_property_readonly(
            "dominant",
            [](const persona::DiscScores& scores) {
                return std::string(persona::trait_name(scores.dominant));
            })
        .def_property_readonly(
            "tier",
            [](const persona::DiscScores& scores) {
                return std::string(persona::risk_tier_name(scores.tier));
            })
        .def("__repr__", [](const persona::DiscScores& scores) {
            return "DiscScores(dominant='" + std::string(persona::trait_name(scores.dominant)) +
                   "')";
        });

    m.def(
        "estimate_disc",
        [](const std::vector<std::string>& texts, const std::string& lexicon_path,
           std::size_t min_tokens) {
            auto lexicon = persona::parse_lexicon(io::read_file(lexicon_path));
            return persona::estimate_disc(texts, lexicon, min_tokens);
        },
        py::arg("texts"), py::arg("lexicon_path"),
        py::arg("min_tokens") = persona::kDefaultMinTokens);

    m.def(
        "map_bigfive_to_disc",
        [](double openness, double conscientiousness, double extraversion, double agreeableness,
           double neuroticism) {
            persona::BigFiveScores scores;
            scores.openness = openness;
            scores.conscientiousness = conscientiousness;
            scores.extraversion = extraversion;
            scores.agreeableness = agreeableness;
            scores.neuroticism = neuroticism;
            return persona::map_bigfive_to_disc(scores);
        },
        py::arg("openness"), py::arg("conscientiousness"), py::arg("extraversion"),
        py::arg("agreeableness"), py::arg("neuroticism"));

    py::class_<analytics::ParetoReport>(m, "ParetoReport")
        .def_readonly("ordering", &analytics::ParetoReport::ordering)
        .def_readonly("cumulative_share", &analytics::ParetoReport::cumulative_share)
        .def_readonly("vital_few", &analytics::ParetoReport::vital_few)
        .def_readonly("threshold", &analytics::ParetoReport::threshold)
        .def_readonly("total_incidents", &analytics::ParetoReport::total_incidents)
        .def("__repr__", [](const analytics::ParetoReport& report) {
            std::string labels;
            for (const auto& label : report.vital_few) {
                if (!labels.empty()) labels += ",";
                labels += label;
            }
            return "ParetoReport(vital_few=[" + labels + "])";
        });

    m.def(
        "pareto_analysis",
        [](const std::vector<std::pair<std::string, std::size_t>>& items, double threshold) {
            std::vector<analytics::ParetoItem> converted;
            converted.reserve(items.size());
            for (const auto& [label, incidents] : items) converted.push_back({label, incidents});
            return analytics::pareto_analysis(converted, threshold);
        },
        py::arg("items"), py::arg("threshold") = 0.8);

    m.def(
        "synth_corpus",
        [](const std::string& params_path, const std::string& out_dir) {
            auto params = io::synth_params_from_json(io::read_file(params_path));
            auto rules = scan::parse_ruleset(io::read_file(params.rules_file));
            auto lexicon = persona::parse_lexicon(io::read_file(params.lexicon_file));
            auto corpus = synth::generate_corpus(params, rules, lexicon);
            io::write_file(out_dir + "/records.csv", synth::records_to_csv(corpus.records));
            io::write_file(out_dir + "/manifest.json", io::manifest_to_json(corpus.manifest));
            io::write_file(out_dir + "/params.json", io::synth_params_to_json(params));
            return py::make_tuple(corpus.records.size(), corpus.manifest.unique_count);
        },
        py::arg("params_path"), py::arg("out_dir"));

    m.def(
        "run_pipeline",
        [](const std::string& config_path) {
            auto bundle = report::run_pipeline(report::load_config(config_path));
            return report::bundle_to_json(bundle);
        },
        py::arg("config_path"),
        "Runs ingest->wrangle->scan->persona->analytics; returns the bundle as JSON.");

    m.def(
        "render_analysis",
        [](const std::string& bundle_json, const std::string& format) {
            auto bundle = report::bundle_from_json(bundle_json);
            report::RenderFormat render_format;
            if (format == "text") render_format = report::RenderFormat::Text;
            else if (format == "csv") render_format = report::RenderFormat::Csv;
            else if (format == "json") render_format = report::RenderFormat::Json;
            else
                throw Error(ErrorCode::ConfigError,
                            "format must be text, csv or json, got \"" + format + "\"");
            return report::render(bundle, render_format);
        },
        py::arg("bundle_json"), py::arg("format") = "text");

    m.def(
        "validate_data_file",
        [](const std::string& path, const std::string& kind_name) {
            rules::DataFileKind kind;
            if (kind_name == "rules") kind = rules::DataFileKind::LeakRules;
            else if (kind_name == "lexicon") kind = rules::DataFileKind::DiscLexicon;
            else if (kind_name == "fixture") kind = rules::DataFileKind::Fixture;
            else
                throw Error(ErrorCode::ConfigError,
                            "kind must be rules, lexicon or fixture, got \"" + kind_name + "\"");
            auto manifest = rules::validate_ruleset(path, kind);
            py::dict result;
            result["path"] = manifest.path;
            result["kind"] = std::string(rules::data_file_kind_name(manifest.kind));
            result["version"] = manifest.version;
            result["entry_count"] = manifest.entry_count;
            result["checksum"] = manifest.checksum;
            return result;
        },
        py::arg("path"), py::arg("kind"));

    m.attr("__version__") = "1.0.0";
}
