#include "leakscope/analytics.hpp"
#include "leakscope/corpus_io.hpp"
#include "leakscope/dork.hpp"
#include "leakscope/error.hpp"
#include "leakscope/ingest.hpp"
#include "leakscope/leakscan.hpp"
#include "leakscope/persona.hpp"
#include "leakscope/report.hpp"
#include "leakscope/rulesets.hpp"
#include "leakscope/synth.hpp"
#include "leakscope/textutil.hpp"
#include "leakscope/wrangle.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace {

using namespace leakscope;

struct DorkArgs {
    std::string site, region, country, company, style = "verbatim", parse_query;
    std::vector<std::string> types;
    std::vector<std::string> groups; // '|'-separated keyword groups
};

int run_dork(const DorkArgs& args) {
    if (!args.parse_query.empty()) {
        dork::QuerySpec spec = dork::parse_dork_query(args.parse_query);
        nlohmann::json j;
        j["site"] = spec.site;
        j["region"] = spec.region;
        j["country"] = spec.country;
        j["company"] = spec.company;
        j["employment_types"] = spec.employment_types;
        j["extra_groups"] = spec.extra_groups;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    dork::QuerySpec spec;
    spec.site = args.site;
    spec.region = args.region;
    spec.country = args.country;
    spec.company = args.company;
    spec.employment_types = args.types;
    for (const auto& group : args.groups) {
        std::vector<std::string> keywords;
        std::size_t start = 0;
        while (start <= group.size()) {
            std::size_t bar = group.find('|', start);
            if (bar == std::string::npos) {
                keywords.push_back(group.substr(start));
                break;
            }
            keywords.push_back(group.substr(start, bar - start));
            start = bar + 1;
        }
        spec.extra_groups.push_back(std::move(keywords));
    }
    auto style = args.style == "normalized" ? dork::QueryStyle::Normalized
                                            : dork::QueryStyle::Verbatim;
    std::cout << dork::build_dork_query(spec, style) << "\n";
    return 0;
}

std::vector<Profile> load_corpus(const std::string& path) {
    return io::profiles_from_jsonl(io::read_file(path));
}

struct IngestArgs {
    std::vector<std::string> inputs;
    std::string format = "csv", salt_file, out;
};

int run_ingest(const IngestArgs& args) {
    if (args.format != "html" && args.format != "csv" && args.format != "tsv")
        throw Error(ErrorCode::ConfigError,
                    "--format must be html, csv or tsv, got \"" + args.format + "\"");
    std::string salt = text::canonicalize(io::read_file(args.salt_file));
    std::vector<RawRecord> records;
    std::size_t skipped = 0;
    for (const auto& input : args.inputs) {
        std::string data = io::read_file(input);
        if (args.format == "html") {
            auto result = ingest::ingest_html_export(data, input);
            records.insert(records.end(), result.records.begin(), result.records.end());
            skipped += result.skipped;
        } else {
            auto format = args.format == "csv" ? ingest::TableFormat::CommaSeparated
                                               : ingest::TableFormat::TabSeparated;
            auto rows = ingest::ingest_table_file(data, format, input);
            records.insert(records.end(), rows.begin(), rows.end());
        }
    }
    ingest::NormalizeStats stats;
    auto profiles = ingest::normalize_all(records, salt, &stats);
    io::write_file(args.out, io::profiles_to_jsonl(profiles));
    std::cout << "profiles: " << profiles.size() << "\nskipped cards: " << skipped
              << "\ndate parse failures: " << stats.date_parse_failures << "\n";
    return 0;
}

struct WrangleArgs {
    std::string in, out, report_path;
};

int run_wrangle(const WrangleArgs& args) {
    auto profiles = load_corpus(args.in);
    auto anomalies = wrangle::inspect(profiles);
    auto cleaned = wrangle::clean(profiles, anomalies);
    auto deduped = wrangle::dedupe(cleaned.profiles);
    auto verification = wrangle::verify(profiles, deduped, cleaned.report);
    io::write_file(args.out, io::profiles_to_jsonl(deduped));
    if (!args.report_path.empty())
        io::write_file(args.report_path, io::wrangling_report_to_json(cleaned.report));
    std::cout << "input: " << cleaned.report.input_count
              << "\nanomalies: " << cleaned.report.anomalies.size()
              << "\nfixed: " << cleaned.report.fixed << "\nremoved: " << cleaned.report.removed
              << "\nunique: " << deduped.size() << "\n";
    if (!verification.passed) {
        for (const auto& failure : verification.failures)
            std::cerr << "verification: " << failure << "\n";
        return 1;
    }
    return 0;
}

struct ScanArgs {
    std::string in, rules, out;
};

int run_scan(const ScanArgs& args) {
    auto profiles = load_corpus(args.in);
    auto rules = scan::parse_ruleset(io::read_file(args.rules));
    std::vector<scan::DisclosureFinding> findings;
    for (const auto& profile : profiles) {
        auto found = scan::classify_profile(profile, rules);
        findings.insert(findings.end(), found.begin(), found.end());
    }
    io::write_file(args.out, io::findings_to_jsonl(findings));
    auto summary = scan::corpus_risk_summary(profiles, findings);
    std::cout << "findings: " << findings.size() << "\nevents: " << summary.events
              << "\nincidents: " << summary.incidents << "\nlow-risk share: " << summary.low_share_pct
              << "%\nhigh-risk share: " << summary.high_share_pct << "%\n";
    return 0;
}

struct PersonaArgs {
    std::string in, lexicon, out;
    std::size_t min_tokens = persona::kDefaultMinTokens;
};

int run_persona(const PersonaArgs& args) {
    auto profiles = load_corpus(args.in);
    auto lexicon = persona::parse_lexicon(io::read_file(args.lexicon));
    std::map<std::string, persona::DiscScores> personas;
    std::size_t insufficient = 0;
    for (const auto& profile : profiles) {
        try {
            personas.emplace(profile.id,
                             persona::estimate_disc(profile_texts(profile), lexicon,
                                                    args.min_tokens));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::InsufficientText) throw;
            ++insufficient;
        }
    }
    io::write_file(args.out, io::personas_to_jsonl(personas));
    std::cout << "personas: " << personas.size() << "\ninsufficient text: " << insufficient
              << "\n";
    return 0;
}

struct AnalyzeArgs {
    std::string corpus, findings, personas, wrangle_report, out;
    double threshold = 0.8;
};

int run_analyze(const AnalyzeArgs& args) {
    auto profiles = load_corpus(args.corpus);
    auto findings = io::findings_from_jsonl(io::read_file(args.findings));
    auto personas = io::personas_from_jsonl(io::read_file(args.personas));

    report::AnalysisBundle bundle;
    bundle.groups = analytics::build_incident_table(profiles, findings, personas);
    bundle.pareto = analytics::pareto_analysis(bundle.groups, args.threshold);
    bundle.hypotheses = analytics::evaluate_hypotheses(bundle.groups);
    auto summary = scan::corpus_risk_summary(profiles, findings);
    bundle.corpus.raw = profiles.size();
    if (!args.wrangle_report.empty()) {
        auto wrangling = nlohmann::json::parse(io::read_file(args.wrangle_report));
        bundle.corpus.raw = wrangling.at("input_count").get<std::size_t>();
    }
    bundle.corpus.unique = profiles.size();
    bundle.corpus.events = summary.events;
    bundle.corpus.incidents = summary.incidents;
    bundle.corpus.low_share_pct = summary.low_share_pct;
    bundle.corpus.high_share_pct = summary.high_share_pct;
    bundle.caveats = {
        "Personality estimates assume cooperative text; adversarial or curated writing can "
        "poison the scorer.",
        "Risk tiers encode the a-priori hypotheses; the hypothesis verdicts are the empirical "
        "check.",
    };
    io::write_file(args.out, report::bundle_to_json(bundle));
    std::cout << report::render(bundle, report::RenderFormat::Text);
    return 0;
}

struct SynthArgs {
    std::string params_file, out_dir;
};

int run_synth(const SynthArgs& args) {
    auto params = io::synth_params_from_json(io::read_file(args.params_file));
    if (params.rules_file.empty() || params.lexicon_file.empty())
        throw Error(ErrorCode::ConfigError, "params must set rules_file and lexicon_file");
    auto rules = scan::parse_ruleset(io::read_file(params.rules_file));
    auto lexicon = persona::parse_lexicon(io::read_file(params.lexicon_file));
    auto corpus = synth::generate_corpus(params, rules, lexicon);

    namespace fs = std::filesystem;
    auto out_path = [&](const char* file) { return (fs::path(args.out_dir) / file).string(); };
    io::write_file(out_path("records.csv"), synth::records_to_csv(corpus.records));
    io::write_file(out_path("manifest.json"), io::manifest_to_json(corpus.manifest));
    io::write_file(out_path("params.json"), io::synth_params_to_json(params));
    std::cout << "records: " << corpus.records.size()
              << "\nunique subjects: " << corpus.manifest.unique_count << "\n";
    return 0;
}

struct ReportArgs {
    std::string analysis, format = "text", out, chart;
};

int run_report(const ReportArgs& args) {
    auto bundle = report::bundle_from_json(io::read_file(args.analysis));
    report::RenderFormat format;
    if (args.format == "text") format = report::RenderFormat::Text;
    else if (args.format == "csv") format = report::RenderFormat::Csv;
    else if (args.format == "json") format = report::RenderFormat::Json;
    else
        throw Error(ErrorCode::ConfigError,
                    "--format must be text, csv or json, got \"" + args.format + "\"");
    std::string rendered = report::render(bundle, format);
    if (args.out.empty())
        std::cout << rendered;
    else
        io::write_file(args.out, rendered);
    if (!args.chart.empty()) {
        auto series = report::chart_series(bundle);
        std::string csv = "label,incidents,cumulative_share\n";
        for (std::size_t k = 0; k < series.labels.size(); ++k) {
            char line[128];
            std::snprintf(line, sizeof line, "%s,%.0f,%.6f\n", series.labels[k].c_str(),
                          series.incidents[k], series.cumulative_share[k]);
            csv += line;
        }
        io::write_file(args.chart, csv);
    }
    return 0;
}

struct RunArgs {
    std::string config;
};

int run_run(const RunArgs& args) {
    std::string config_path = args.config;
    if (config_path.empty()) {
        const char* env = std::getenv("LEAKSCOPE_CONFIG");
        if (env != nullptr) config_path = env;
    }
    if (config_path.empty())
        throw Error(ErrorCode::ConfigError,
                    "no config: pass --config or set LEAKSCOPE_CONFIG");
    auto config = report::load_config(config_path);
    auto bundle = report::run_pipeline(config);
    std::cout << report::render(bundle, report::RenderFormat::Text);
    return 0;
}

struct ValidateArgs {
    std::string file, kind;
};

int run_validate(const ValidateArgs& args) {
    rules::DataFileKind kind;
    if (args.kind == "rules") kind = rules::DataFileKind::LeakRules;
    else if (args.kind == "lexicon") kind = rules::DataFileKind::DiscLexicon;
    else if (args.kind == "fixture") kind = rules::DataFileKind::Fixture;
    else
        throw Error(ErrorCode::ConfigError,
                    "--kind must be rules, lexicon or fixture, got \"" + args.kind + "\"");
    auto manifest = rules::validate_ruleset(args.file, kind);
    std::cout << "path: " << manifest.path << "\nkind: " << rules::data_file_kind_name(manifest.kind)
              << "\nversion: " << (manifest.version.empty() ? "-" : manifest.version)
              << "\nentries: " << manifest.entry_count << "\nsha256: " << manifest.checksum
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"leakscope: offline disclosure-risk analysis over exported profile corpora"};
    app.require_subcommand(1);

    DorkArgs dork_args;
    auto* dork_cmd = app.add_subcommand("dork", "Build or parse a profile-search query");
    dork_cmd->add_option("--site", dork_args.site, "Target domain");
    dork_cmd->add_option("--region", dork_args.region, "Region phrase");
    dork_cmd->add_option("--country", dork_args.country, "Country phrase");
    dork_cmd->add_option("--company", dork_args.company, "Company phrase");
    dork_cmd->add_option("--type", dork_args.types, "Employment type (repeatable)");
    dork_cmd->add_option("--group", dork_args.groups,
                         "Extra keyword group, '|'-separated (repeatable)");
    dork_cmd->add_option("--style", dork_args.style, "verbatim|normalized")
        ->check(CLI::IsMember({"verbatim", "normalized"}));
    dork_cmd->add_option("--parse", dork_args.parse_query,
                         "Parse a query instead of building one");

    IngestArgs ingest_args;
    auto* ingest_cmd = app.add_subcommand("ingest", "Parse exports into a pseudonymized corpus");
    ingest_cmd->add_option("--in", ingest_args.inputs, "Input file (repeatable)")->required();
    ingest_cmd->add_option("--format", ingest_args.format, "html|csv|tsv");
    ingest_cmd->add_option("--salt-file", ingest_args.salt_file, "Pseudonymization salt file")
        ->required();
    ingest_cmd->add_option("--out", ingest_args.out, "Corpus file to write")->required();

    WrangleArgs wrangle_args;
    auto* wrangle_cmd = app.add_subcommand("wrangle", "Inspect, clean, dedupe and verify a corpus");
    wrangle_cmd->add_option("--in", wrangle_args.in, "Corpus file")->required();
    wrangle_cmd->add_option("--out", wrangle_args.out, "Deduplicated corpus file")->required();
    wrangle_cmd->add_option("--report", wrangle_args.report_path, "Wrangling report (json)");

    ScanArgs scan_args;
    auto* scan_cmd = app.add_subcommand("scan", "Detect employer-information disclosure");
    scan_cmd->add_option("--in", scan_args.in, "Corpus file")->required();
    scan_cmd->add_option("--rules", scan_args.rules, "Leak ruleset file")->required();
    scan_cmd->add_option("--out", scan_args.out, "Findings file to write")->required();

    PersonaArgs persona_args;
    auto* persona_cmd = app.add_subcommand("persona", "Estimate DISC scores per profile");
    persona_cmd->add_option("--in", persona_args.in, "Corpus file")->required();
    persona_cmd->add_option("--lexicon", persona_args.lexicon, "Trait lexicon file")->required();
    persona_cmd->add_option("--out", persona_args.out, "Persona file to write")->required();
    persona_cmd->add_option("--min-tokens", persona_args.min_tokens, "Minimum sample size");

    AnalyzeArgs analyze_args;
    auto* analyze_cmd = app.add_subcommand("analyze", "Join findings with DISC groups");
    analyze_cmd->add_option("--corpus", analyze_args.corpus, "Corpus file")->required();
    analyze_cmd->add_option("--findings", analyze_args.findings, "Findings file")->required();
    analyze_cmd->add_option("--persona", analyze_args.personas, "Persona file")->required();
    analyze_cmd->add_option("--wrangle-report", analyze_args.wrangle_report,
                            "Wrangling report; supplies the pre-dedupe raw count");
    analyze_cmd->add_option("--threshold", analyze_args.threshold, "Pareto threshold");
    analyze_cmd->add_option("--out", analyze_args.out, "Analysis bundle (json)")->required();

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a planted synthetic corpus");
    synth_cmd->add_option("--params", synth_args.params_file, "Params file (json)")->required();
    synth_cmd->add_option("--out", synth_args.out_dir, "Output directory")->required();

    ReportArgs report_args;
    auto* report_cmd = app.add_subcommand("report", "Render an analysis bundle");
    report_cmd->add_option("--analysis", report_args.analysis, "Analysis bundle (json)")
        ->required();
    report_cmd->add_option("--format", report_args.format, "text|csv|json");
    report_cmd->add_option("--out", report_args.out, "Write here instead of stdout");
    report_cmd->add_option("--chart", report_args.chart, "Write Pareto chart series (csv)");

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run the full pipeline from a config file");
    run_cmd->add_option("--config", run_args.config,
                        "Config file (default: $LEAKSCOPE_CONFIG)");

    ValidateArgs validate_args;
    auto* validate_cmd = app.add_subcommand("validate", "Validate a shipped data file");
    validate_cmd->add_option("--file", validate_args.file, "Data file")->required();
    validate_cmd->add_option("--kind", validate_args.kind, "rules|lexicon|fixture")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (dork_cmd->parsed()) return run_dork(dork_args);
        if (ingest_cmd->parsed()) return run_ingest(ingest_args);
        if (wrangle_cmd->parsed()) return run_wrangle(wrangle_args);
        if (scan_cmd->parsed()) return run_scan(scan_args);
        if (persona_cmd->parsed()) return run_persona(persona_args);
        if (analyze_cmd->parsed()) return run_analyze(analyze_args);
        if (synth_cmd->parsed()) return run_synth(synth_args);
        if (report_cmd->parsed()) return run_report(report_args);
        if (run_cmd->parsed()) return run_run(run_args);
        if (validate_cmd->parsed()) return run_validate(validate_args);
    } catch (const Error& e) {
        std::cerr << "leakscope: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "leakscope: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
