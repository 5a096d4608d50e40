#pragma once

#include <map>
#include <string>
#include <vector>

#include "leakscope/leakscan.hpp"
#include "leakscope/persona.hpp"
#include "leakscope/profile.hpp"
#include "leakscope/synth.hpp"
#include "leakscope/wrangle.hpp"

namespace leakscope::io {

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

// Corpus files are newline-delimited JSON, one record per line.
std::string profile_to_json_line(const Profile& profile);
Profile profile_from_json_line(const std::string& line);
std::string profiles_to_jsonl(const std::vector<Profile>& profiles);
std::vector<Profile> profiles_from_jsonl(std::string_view data);

std::string findings_to_jsonl(const std::vector<scan::DisclosureFinding>& findings);
std::vector<scan::DisclosureFinding> findings_from_jsonl(std::string_view data);

std::string personas_to_jsonl(const std::map<std::string, persona::DiscScores>& personas);
std::map<std::string, persona::DiscScores> personas_from_jsonl(std::string_view data);

std::string wrangling_report_to_json(const wrangle::WranglingReport& report);

std::string manifest_to_json(const synth::Manifest& manifest);
synth::Manifest manifest_from_json(const std::string& data);

std::string synth_params_to_json(const synth::SynthParams& params);
synth::SynthParams synth_params_from_json(const std::string& data);

} // namespace leakscope::io
