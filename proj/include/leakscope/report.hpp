#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "leakscope/analytics.hpp"

namespace leakscope::report {

struct CorpusCounts {
    std::size_t raw = 0;
    std::size_t unique = 0;
    std::size_t events = 0;
    std::size_t incidents = 0;
    int low_share_pct = 0;
    int high_share_pct = 0;

    bool operator==(const CorpusCounts&) const = default;
};

struct AnalysisBundle {
    CorpusCounts corpus;
    std::vector<analytics::GroupStats> groups;
    analytics::ParetoReport pareto;
    std::vector<analytics::HypothesisOutcome> hypotheses;
    std::vector<std::string> caveats;

    bool operator==(const AnalysisBundle&) const = default;
};

enum class RenderFormat { Text, Csv, Json };

std::string render(const AnalysisBundle& bundle, RenderFormat format);

std::string bundle_to_json(const AnalysisBundle& bundle);
AnalysisBundle bundle_from_json(const std::string& json_text);

struct ChartSeries {
    std::vector<std::string> labels;
    std::vector<double> incidents;        // descending
    std::vector<double> cumulative_share; // aligned with incidents
};

ChartSeries chart_series(const AnalysisBundle& bundle);

struct PipelineConfig {
    std::vector<std::string> inputs;
    std::string input_format = "csv"; // html | csv | tsv
    std::string salt_file;
    std::string rules_file;
    std::string lexicon_file;
    std::size_t min_tokens = 30;
    double pareto_threshold = 0.8;
    std::string out_dir;
};

PipelineConfig load_config(const std::string& path);

// ingest -> wrangle -> scan -> persona -> analytics, persisting every
// intermediate artifact under out_dir. Stage failures are rethrown with the
// stage name prefixed.
AnalysisBundle run_pipeline(const PipelineConfig& config);

} // namespace leakscope::report
