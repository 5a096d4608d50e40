#include "leakscope/report.hpp"

#include "leakscope/corpus_io.hpp"
#include "leakscope/error.hpp"
#include "leakscope/ingest.hpp"
#include "leakscope/textutil.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>

using nlohmann::json;

namespace leakscope::report {

namespace {

std::string fixed1(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", value);
    return buf;
}

std::string fixed3(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", value);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    while (s.size() < width) s.push_back(' ');
    return s;
}

std::string lead(std::string s, std::size_t width) {
    while (s.size() < width) s.insert(s.begin(), ' ');
    return s;
}

std::string join_labels(const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        if (k > 0) out += ", ";
        out += labels[k];
    }
    return out;
}

std::string render_text(const AnalysisBundle& bundle) {
    std::string out;
    out += "Group  Events  Incidents  % Data Disclosed\n";

    std::size_t total_events = 0;
    std::size_t total_incidents = 0;
    // groups whose exact share is >= 0.25pp away from the integer-rounded one
    std::vector<std::string> rounding_notes;
    for (const auto& row : bundle.groups) {
        total_events += row.events;
        total_incidents += row.incidents;
    }
    for (const auto& row : bundle.groups) {
        out += pad(std::string(persona::trait_name(row.group)), 5) + "  ";
        out += lead(std::to_string(row.events), 6) + "  ";
        out += lead(std::to_string(row.incidents), 9) + "  ";
        out += lead(std::to_string(row.incident_share_pct) + "%", 16) + "\n";
        if (total_incidents > 0) {
            double exact = 100.0 * static_cast<double>(row.incidents) /
                           static_cast<double>(total_incidents);
            if (std::abs(exact - row.incident_share_pct) >= 0.25)
                rounding_notes.push_back(std::string(persona::trait_name(row.group)) + " " +
                                         fixed1(exact) + "%");
        }
    }
    if (!bundle.groups.empty()) {
        out += pad("Total", 5) + "  ";
        out += lead(std::to_string(total_events), 6) + "  ";
        out += lead(std::to_string(total_incidents), 9) + "  ";
        out += lead(total_incidents > 0 ? "100%" : "0%", 16) + "\n";
    }

    out += "\nPareto (threshold " + fixed1(bundle.pareto.threshold * 100.0) + "%)\n";
    for (std::size_t k = 0; k < bundle.pareto.ordering.size(); ++k) {
        out += "  " + std::to_string(k + 1) + ". " + pad(bundle.pareto.ordering[k], 3) +
               " cumulative " + fixed1(bundle.pareto.cumulative_share[k] * 100.0) + "%\n";
    }
    if (!bundle.pareto.vital_few.empty()) {
        double vital_share =
            bundle.pareto.cumulative_share[bundle.pareto.vital_few.size() - 1] * 100.0;
        out += "Vital few: " + join_labels(bundle.pareto.vital_few) + " (" + fixed1(vital_share) +
               "%)\n";
    }

    if (!bundle.hypotheses.empty()) {
        out += "\nHypotheses\n";
        for (const auto& h : bundle.hypotheses) {
            out += "  " + std::string(analytics::hypothesis_id_name(h.id)) + "  " +
                   std::string(persona::trait_name(h.group)) + " expected " +
                   std::string(analytics::expected_risk_name(h.expected)) + "  observed " +
                   fixed3(h.observed_rate) + "  mean " + fixed3(h.corpus_mean_rate) + "  " +
                   std::string(analytics::verdict_name(h.verdict)) + "\n";
        }
    }

    out += "\nCorpus: raw " + std::to_string(bundle.corpus.raw) + ", unique " +
           std::to_string(bundle.corpus.unique) + ", events " +
           std::to_string(bundle.corpus.events) + ", incidents " +
           std::to_string(bundle.corpus.incidents) + ", low-risk " +
           std::to_string(bundle.corpus.low_share_pct) + "%, high-risk " +
           std::to_string(bundle.corpus.high_share_pct) + "%\n";

    if (!rounding_notes.empty())
        out += "\n* integer percents rounded half away from zero; exact shares: " +
               join_labels(rounding_notes) + "\n";
    for (const auto& caveat : bundle.caveats) out += "\nCaveat: " + caveat + "\n";
    return out;
}

std::string render_csv(const AnalysisBundle& bundle) {
    std::string out = "group,events,incidents,incident_share_pct,incidence_rate\n";
    for (const auto& row : bundle.groups) {
        out += std::string(persona::trait_name(row.group)) + "," + std::to_string(row.events) +
               "," + std::to_string(row.incidents) + "," + std::to_string(row.incident_share_pct) +
               "," + fixed3(row.incidence_rate) + "\n";
    }
    return out;
}

json bundle_json(const AnalysisBundle& bundle) {
    json j;
    j["corpus"] = {
        {"raw", bundle.corpus.raw},
        {"unique", bundle.corpus.unique},
        {"events", bundle.corpus.events},
        {"incidents", bundle.corpus.incidents},
        {"low_share_pct", bundle.corpus.low_share_pct},
        {"high_share_pct", bundle.corpus.high_share_pct},
    };
    json groups = json::array();
    for (const auto& row : bundle.groups) {
        groups.push_back({
            {"group", std::string(persona::trait_name(row.group))},
            {"events", row.events},
            {"incidents", row.incidents},
            {"incident_share_pct", row.incident_share_pct},
            {"incidence_rate", row.incidence_rate},
        });
    }
    j["groups"] = groups;
    j["pareto"] = {
        {"ordering", bundle.pareto.ordering},
        {"cumulative_share", bundle.pareto.cumulative_share},
        {"vital_few", bundle.pareto.vital_few},
        {"threshold", bundle.pareto.threshold},
        {"total_incidents", bundle.pareto.total_incidents},
    };
    json hypotheses = json::array();
    for (const auto& h : bundle.hypotheses) {
        hypotheses.push_back({
            {"id", std::string(analytics::hypothesis_id_name(h.id))},
            {"group", std::string(persona::trait_name(h.group))},
            {"expected", std::string(analytics::expected_risk_name(h.expected))},
            {"observed_rate", h.observed_rate},
            {"corpus_mean_rate", h.corpus_mean_rate},
            {"verdict", std::string(analytics::verdict_name(h.verdict))},
        });
    }
    j["hypotheses"] = hypotheses;
    j["caveats"] = bundle.caveats;
    return j;
}

} // namespace

std::string render(const AnalysisBundle& bundle, RenderFormat format) {
    switch (format) {
    case RenderFormat::Text: return render_text(bundle);
    case RenderFormat::Csv: return render_csv(bundle);
    case RenderFormat::Json: return bundle_to_json(bundle);
    }
    return "";
}

std::string bundle_to_json(const AnalysisBundle& bundle) {
    return bundle_json(bundle).dump(2) + "\n";
}

AnalysisBundle bundle_from_json(const std::string& json_text) {
    try {
        json j = json::parse(json_text);
        AnalysisBundle bundle;
        const json& corpus = j.at("corpus");
        bundle.corpus.raw = corpus.at("raw").get<std::size_t>();
        bundle.corpus.unique = corpus.at("unique").get<std::size_t>();
        bundle.corpus.events = corpus.at("events").get<std::size_t>();
        bundle.corpus.incidents = corpus.at("incidents").get<std::size_t>();
        bundle.corpus.low_share_pct = corpus.at("low_share_pct").get<int>();
        bundle.corpus.high_share_pct = corpus.at("high_share_pct").get<int>();
        for (const auto& g : j.value("groups", json::array())) {
            analytics::GroupStats row;
            row.group = persona::trait_from_name(g.at("group").get<std::string>());
            row.events = g.at("events").get<std::size_t>();
            row.incidents = g.at("incidents").get<std::size_t>();
            row.incident_share_pct = g.at("incident_share_pct").get<int>();
            row.incidence_rate = g.at("incidence_rate").get<double>();
            bundle.groups.push_back(row);
        }
        const json& pareto = j.at("pareto");
        bundle.pareto.ordering = pareto.at("ordering").get<std::vector<std::string>>();
        bundle.pareto.cumulative_share =
            pareto.at("cumulative_share").get<std::vector<double>>();
        bundle.pareto.vital_few = pareto.at("vital_few").get<std::vector<std::string>>();
        bundle.pareto.threshold = pareto.at("threshold").get<double>();
        bundle.pareto.total_incidents = pareto.at("total_incidents").get<std::size_t>();
        for (const auto& h : j.value("hypotheses", json::array())) {
            analytics::HypothesisOutcome outcome;
            std::string id = h.at("id").get<std::string>();
            if (id == "H1") outcome.id = analytics::HypothesisId::H1;
            else if (id == "H2") outcome.id = analytics::HypothesisId::H2;
            else if (id == "H3") outcome.id = analytics::HypothesisId::H3;
            else if (id == "H4") outcome.id = analytics::HypothesisId::H4;
            else throw Error(ErrorCode::SchemaError, "unknown hypothesis id \"" + id + "\"");
            outcome.group = persona::trait_from_name(h.at("group").get<std::string>());
            std::string expected = h.at("expected").get<std::string>();
            if (expected == "high_risk") outcome.expected = analytics::ExpectedRisk::HighRisk;
            else if (expected == "low_risk") outcome.expected = analytics::ExpectedRisk::LowRisk;
            else throw Error(ErrorCode::SchemaError, "unknown expected risk \"" + expected + "\"");
            outcome.observed_rate = h.at("observed_rate").get<double>();
            outcome.corpus_mean_rate = h.at("corpus_mean_rate").get<double>();
            std::string verdict = h.at("verdict").get<std::string>();
            if (verdict == "Supported") outcome.verdict = analytics::Verdict::Supported;
            else if (verdict == "Refuted") outcome.verdict = analytics::Verdict::Refuted;
            else if (verdict == "Inconclusive") outcome.verdict = analytics::Verdict::Inconclusive;
            else throw Error(ErrorCode::SchemaError, "unknown verdict \"" + verdict + "\"");
            bundle.hypotheses.push_back(outcome);
        }
        bundle.caveats = j.value("caveats", std::vector<std::string>{});
        return bundle;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::SchemaError, e.what());
    }
}

ChartSeries chart_series(const AnalysisBundle& bundle) {
    std::map<std::string, std::size_t> incidents_by_label;
    for (const auto& row : bundle.groups)
        incidents_by_label[std::string(persona::trait_name(row.group))] = row.incidents;

    ChartSeries series;
    series.labels = bundle.pareto.ordering;
    for (std::size_t k = 0; k < bundle.pareto.ordering.size(); ++k) {
        auto it = incidents_by_label.find(bundle.pareto.ordering[k]);
        series.incidents.push_back(it == incidents_by_label.end()
                                       ? 0.0
                                       : static_cast<double>(it->second));
        series.cumulative_share.push_back(bundle.pareto.cumulative_share[k]);
    }
    return series;
}

PipelineConfig load_config(const std::string& path) {
    std::string data = io::read_file(path);
    try {
        json j = json::parse(data);
        PipelineConfig config;
        config.inputs = j.at("inputs").get<std::vector<std::string>>();
        config.input_format = j.value("input_format", std::string("csv"));
        config.salt_file = j.at("salt_file").get<std::string>();
        config.rules_file = j.at("rules_file").get<std::string>();
        config.lexicon_file = j.at("lexicon_file").get<std::string>();
        config.min_tokens = j.value("min_tokens", std::size_t{30});
        config.pareto_threshold = j.value("pareto_threshold", 0.8);
        config.out_dir = j.at("out_dir").get<std::string>();
        if (config.input_format != "html" && config.input_format != "csv" &&
            config.input_format != "tsv")
            throw Error(ErrorCode::ConfigError,
                        "input_format must be html, csv or tsv, got \"" + config.input_format +
                            "\"");
        if (config.inputs.empty())
            throw Error(ErrorCode::ConfigError, "inputs list is empty");
        return config;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::ConfigError,
                    "bad config \"" + path + "\": " + std::string(e.what()));
    }
}

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.code(), std::string(name) + ": " + e.message(), e.position());
    }
}

} // namespace

AnalysisBundle run_pipeline(const PipelineConfig& config) {
    namespace fs = std::filesystem;
    auto out_path = [&](const char* file) {
        return (fs::path(config.out_dir) / file).string();
    };

    // ingest
    auto profiles = stage("ingest", [&] {
        std::string salt = text::canonicalize(io::read_file(config.salt_file));
        std::vector<RawRecord> records;
        for (const auto& input : config.inputs) {
            std::string data = io::read_file(input);
            if (config.input_format == "html") {
                auto result = ingest::ingest_html_export(data, input);
                records.insert(records.end(), result.records.begin(), result.records.end());
            } else {
                auto format = config.input_format == "csv" ? ingest::TableFormat::CommaSeparated
                                                           : ingest::TableFormat::TabSeparated;
                auto rows = ingest::ingest_table_file(data, format, input);
                records.insert(records.end(), rows.begin(), rows.end());
            }
        }
        auto normalized = ingest::normalize_all(records, salt);
        io::write_file(out_path("profiles_raw.jsonl"), io::profiles_to_jsonl(normalized));
        return normalized;
    });

    // wrangle
    auto [unique_profiles, wrangling_report] = stage("wrangle", [&] {
        auto anomalies = wrangle::inspect(profiles);
        auto cleaned = wrangle::clean(profiles, anomalies);
        auto deduped = wrangle::dedupe(cleaned.profiles);
        auto verification = wrangle::verify(profiles, deduped, cleaned.report);
        if (!verification.passed) {
            std::string detail;
            for (const auto& failure : verification.failures) {
                if (!detail.empty()) detail += "; ";
                detail += failure;
            }
            throw Error(ErrorCode::InvalidArgument, "verification failed: " + detail);
        }
        io::write_file(out_path("wrangling_report.json"),
                       io::wrangling_report_to_json(cleaned.report));
        io::write_file(out_path("corpus_unique.jsonl"), io::profiles_to_jsonl(deduped));
        return std::pair(std::move(deduped), std::move(cleaned.report));
    });

    // scan
    auto [findings, risk_summary] = stage("scan", [&] {
        auto rules = scan::parse_ruleset(io::read_file(config.rules_file));
        std::vector<scan::DisclosureFinding> all;
        for (const auto& profile : unique_profiles) {
            auto found = scan::classify_profile(profile, rules);
            all.insert(all.end(), found.begin(), found.end());
        }
        io::write_file(out_path("findings.jsonl"), io::findings_to_jsonl(all));
        auto summary = scan::corpus_risk_summary(unique_profiles, all);
        return std::pair(std::move(all), summary);
    });

    // persona
    auto personas = stage("persona", [&] {
        auto lexicon = persona::parse_lexicon(io::read_file(config.lexicon_file));
        std::map<std::string, persona::DiscScores> scores;
        for (const auto& profile : unique_profiles) {
            try {
                scores.emplace(profile.id,
                               persona::estimate_disc(profile_texts(profile), lexicon,
                                                      config.min_tokens));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::InsufficientText) throw;
                // below the minimum sample: no persona entry for this profile
            }
        }
        io::write_file(out_path("personas.jsonl"), io::personas_to_jsonl(scores));
        return scores;
    });

    // analytics
    AnalysisBundle bundle = stage("analytics", [&] {
        AnalysisBundle result;
        result.groups = analytics::build_incident_table(unique_profiles, findings, personas);
        result.pareto = analytics::pareto_analysis(result.groups, config.pareto_threshold);
        result.hypotheses = analytics::evaluate_hypotheses(result.groups);
        return result;
    });

    bundle.corpus.raw = wrangling_report.input_count;
    bundle.corpus.unique = unique_profiles.size();
    bundle.corpus.events = risk_summary.events;
    bundle.corpus.incidents = risk_summary.incidents;
    bundle.corpus.low_share_pct = risk_summary.low_share_pct;
    bundle.corpus.high_share_pct = risk_summary.high_share_pct;
    bundle.caveats = {
        "Personality estimates assume cooperative text; adversarial or curated writing can "
        "poison the scorer.",
        "Risk tiers encode the a-priori hypotheses; the hypothesis verdicts are the empirical "
        "check.",
    };

    stage("report", [&] {
        io::write_file(out_path("analysis.json"), bundle_to_json(bundle));
        io::write_file(out_path("report.txt"), render(bundle, RenderFormat::Text));
        return 0;
    });
    return bundle;
}

} // namespace leakscope::report
