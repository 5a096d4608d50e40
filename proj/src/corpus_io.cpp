#include "leakscope/corpus_io.hpp"

#include "leakscope/error.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace leakscope::io {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open \"" + path + "\" for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw Error(ErrorCode::IoError, "failed reading \"" + path + "\"");
    return buffer.str();
}

void write_file(const std::string& path, std::string_view data) {
    std::filesystem::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot open \"" + path + "\" for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out)
        throw Error(ErrorCode::IoError, "failed writing \"" + path + "\"");
}

namespace {

json experience_to_json(const Experience& exp) {
    json j;
    j["title"] = exp.title;
    j["company"] = exp.company;
    j["location"] = exp.location;
    if (exp.date_from) j["date_from"] = exp.date_from->to_string();
    if (exp.date_to) j["date_to"] = exp.date_to->to_string();
    j["description"] = exp.description;
    return j;
}

std::optional<MonthDate> json_to_date(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    auto parsed = MonthDate::parse(j.at(key).get<std::string>());
    if (!parsed)
        throw Error(ErrorCode::SchemaError,
                    std::string("bad month date in field \"") + key + "\"");
    return parsed;
}

json profile_to_json(const Profile& profile) {
    json j;
    j["id"] = profile.id;
    j["subject_hash"] = profile.subject_hash;
    j["headline"] = profile.headline;
    j["summary"] = profile.summary;
    j["region"] = profile.region;
    j["employment_category"] = std::string(employment_category_name(profile.employment_category));
    json exps = json::array();
    for (const auto& exp : profile.experiences) exps.push_back(experience_to_json(exp));
    j["experiences"] = exps;
    return j;
}

Profile json_to_profile(const json& j) {
    Profile profile;
    profile.id = j.at("id").get<std::string>();
    profile.subject_hash = j.at("subject_hash").get<std::string>();
    profile.headline = j.value("headline", std::string());
    profile.summary = j.value("summary", std::string());
    profile.region = j.value("region", std::string());
    profile.employment_category =
        employment_category_from_name(j.value("employment_category", std::string("unknown")));
    for (const auto& entry : j.value("experiences", json::array())) {
        Experience exp;
        exp.title = entry.value("title", std::string());
        exp.company = entry.value("company", std::string());
        exp.location = entry.value("location", std::string());
        exp.date_from = json_to_date(entry, "date_from");
        exp.date_to = json_to_date(entry, "date_to");
        exp.description = entry.value("description", std::string());
        profile.experiences.push_back(std::move(exp));
    }
    return profile;
}

// Iterates JSONL payload lines with 1-based line numbers.
template <typename Fn>
void for_each_jsonl(std::string_view data, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= data.size()) {
        std::size_t nl = data.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? data.substr(pos) : data.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? data.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        json parsed;
        try {
            parsed = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::SchemaError, e.what(), static_cast<long long>(line_no));
        }
        try {
            fn(parsed);
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw Error(ErrorCode::SchemaError, e.what(), static_cast<long long>(line_no));
        }
    }
}

} // namespace

std::string profile_to_json_line(const Profile& profile) {
    return profile_to_json(profile).dump();
}

Profile profile_from_json_line(const std::string& line) {
    try {
        return json_to_profile(json::parse(line));
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::SchemaError, e.what());
    }
}

std::string profiles_to_jsonl(const std::vector<Profile>& profiles) {
    std::string out;
    for (const auto& profile : profiles) {
        out += profile_to_json_line(profile);
        out += '\n';
    }
    return out;
}

std::vector<Profile> profiles_from_jsonl(std::string_view data) {
    std::vector<Profile> profiles;
    for_each_jsonl(data, [&](const json& j) { profiles.push_back(json_to_profile(j)); });
    return profiles;
}

std::string findings_to_jsonl(const std::vector<scan::DisclosureFinding>& findings) {
    std::string out;
    for (const auto& finding : findings) {
        json j;
        j["profile_id"] = finding.profile_id;
        j["rule_id"] = finding.rule_id;
        j["category"] = std::string(scan::category_name(finding.category));
        j["impact"] = std::string(scan::impact_name(finding.impact));
        j["evidence"] = {
            {"field", finding.evidence.field},
            {"begin", finding.evidence.begin},
            {"end", finding.evidence.end},
            {"quote", finding.evidence.quote},
        };
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<scan::DisclosureFinding> findings_from_jsonl(std::string_view data) {
    std::vector<scan::DisclosureFinding> findings;
    for_each_jsonl(data, [&](const json& j) {
        scan::DisclosureFinding finding;
        finding.profile_id = j.at("profile_id").get<std::string>();
        finding.rule_id = j.at("rule_id").get<std::string>();
        finding.category = scan::category_from_name(j.at("category").get<std::string>());
        finding.impact = scan::impact_from_name(j.at("impact").get<std::string>());
        const json& ev = j.at("evidence");
        finding.evidence.field = ev.at("field").get<std::string>();
        finding.evidence.begin = ev.at("begin").get<std::size_t>();
        finding.evidence.end = ev.at("end").get<std::size_t>();
        finding.evidence.quote = ev.at("quote").get<std::string>();
        findings.push_back(std::move(finding));
    });
    return findings;
}

std::string personas_to_jsonl(const std::map<std::string, persona::DiscScores>& personas) {
    std::string out;
    for (const auto& [id, scores] : personas) {
        json j;
        j["id"] = id;
        j["d"] = scores.d;
        j["i"] = scores.i;
        j["s"] = scores.s;
        j["c"] = scores.c;
        j["dominant"] = std::string(persona::trait_name(scores.dominant));
        j["tier"] = std::string(persona::risk_tier_name(scores.tier));
        j["evidence_tokens"] = scores.evidence_tokens;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::map<std::string, persona::DiscScores> personas_from_jsonl(std::string_view data) {
    std::map<std::string, persona::DiscScores> personas;
    for_each_jsonl(data, [&](const json& j) {
        persona::DiscScores scores;
        scores.d = j.at("d").get<double>();
        scores.i = j.at("i").get<double>();
        scores.s = j.at("s").get<double>();
        scores.c = j.at("c").get<double>();
        scores.dominant = persona::trait_from_name(j.at("dominant").get<std::string>());
        scores.tier = scores.dominant == persona::Trait::D || scores.dominant == persona::Trait::I
                          ? persona::RiskTier::HighRiskTaking
                          : persona::RiskTier::LowRiskTaking;
        scores.evidence_tokens = j.at("evidence_tokens").get<std::size_t>();
        personas.emplace(j.at("id").get<std::string>(), scores);
    });
    return personas;
}

std::string wrangling_report_to_json(const wrangle::WranglingReport& report) {
    json j;
    j["input_count"] = report.input_count;
    j["fixed"] = report.fixed;
    j["removed"] = report.removed;
    j["output_count"] = report.output_count;
    json anomalies = json::array();
    for (const auto& anomaly : report.anomalies) {
        anomalies.push_back({
            {"profile_id", anomaly.profile_id},
            {"kind", std::string(wrangle::anomaly_kind_name(anomaly.kind))},
            {"field", anomaly.field},
            {"detail", anomaly.detail},
            {"proposed_action", std::string(wrangle::proposed_action_name(anomaly.proposed_action))},
        });
    }
    j["anomalies"] = anomalies;
    return j.dump(2) + "\n";
}

namespace {

json params_to_json(const synth::SynthParams& params) {
    json j;
    j["seed"] = params.seed;
    j["raw_count"] = params.raw_count;
    j["duplicate_count"] = params.duplicate_count;
    json events = json::object();
    json incidents = json::object();
    for (persona::Trait trait : persona::kAllTraits) {
        std::string key(persona::trait_name(trait));
        if (auto it = params.events_per_group.find(trait); it != params.events_per_group.end())
            events[key] = it->second;
        if (auto it = params.incidents_per_group.find(trait);
            it != params.incidents_per_group.end())
            incidents[key] = it->second;
    }
    j["events_per_group"] = events;
    j["incidents_per_group"] = incidents;
    j["rules_file"] = params.rules_file;
    j["lexicon_file"] = params.lexicon_file;
    return j;
}

synth::SynthParams params_from_json(const json& j) {
    synth::SynthParams params;
    params.seed = j.at("seed").get<std::uint64_t>();
    params.raw_count = j.at("raw_count").get<std::size_t>();
    params.duplicate_count = j.value("duplicate_count", std::size_t{0});
    const json events = j.value("events_per_group", json::object());
    for (const auto& [key, value] : events.items())
        params.events_per_group[persona::trait_from_name(key)] = value.get<std::size_t>();
    const json incidents = j.value("incidents_per_group", json::object());
    for (const auto& [key, value] : incidents.items())
        params.incidents_per_group[persona::trait_from_name(key)] = value.get<std::size_t>();
    params.rules_file = j.value("rules_file", std::string());
    params.lexicon_file = j.value("lexicon_file", std::string());
    return params;
}

} // namespace

std::string manifest_to_json(const synth::Manifest& manifest) {
    json j;
    j["params"] = params_to_json(manifest.params);
    j["unique_count"] = manifest.unique_count;
    json subjects = json::array();
    for (const auto& subject : manifest.subjects) {
        json s;
        s["index"] = subject.index;
        s["name"] = subject.name;
        s["source_uri"] = subject.source_uri;
        s["trait"] = std::string(persona::trait_name(subject.trait));
        s["event"] = subject.event;
        s["incident"] = subject.incident;
        s["duplicate_copies"] = subject.duplicate_copies;
        json planted = json::array();
        for (const auto& phrase : subject.planted) {
            planted.push_back({
                {"field", phrase.field},
                {"phrase", phrase.phrase},
                {"rule_id", phrase.rule_id},
                {"impact", std::string(scan::impact_name(phrase.impact))},
            });
        }
        s["planted"] = planted;
        subjects.push_back(std::move(s));
    }
    j["subjects"] = subjects;
    return j.dump(2) + "\n";
}

synth::Manifest manifest_from_json(const std::string& data) {
    try {
        json j = json::parse(data);
        synth::Manifest manifest;
        manifest.params = params_from_json(j.at("params"));
        manifest.unique_count = j.at("unique_count").get<std::size_t>();
        for (const auto& s : j.value("subjects", json::array())) {
            synth::SubjectTruth subject;
            subject.index = s.at("index").get<std::size_t>();
            subject.name = s.at("name").get<std::string>();
            subject.source_uri = s.at("source_uri").get<std::string>();
            subject.trait = persona::trait_from_name(s.at("trait").get<std::string>());
            subject.event = s.at("event").get<bool>();
            subject.incident = s.at("incident").get<bool>();
            subject.duplicate_copies = s.value("duplicate_copies", std::size_t{0});
            for (const auto& p : s.value("planted", json::array())) {
                synth::PlantedPhrase phrase;
                phrase.field = p.at("field").get<std::string>();
                phrase.phrase = p.at("phrase").get<std::string>();
                phrase.rule_id = p.at("rule_id").get<std::string>();
                phrase.impact = scan::impact_from_name(p.at("impact").get<std::string>());
                subject.planted.push_back(std::move(phrase));
            }
            manifest.subjects.push_back(std::move(subject));
        }
        return manifest;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::SchemaError, e.what());
    }
}

std::string synth_params_to_json(const synth::SynthParams& params) {
    return params_to_json(params).dump(2) + "\n";
}

synth::SynthParams synth_params_from_json(const std::string& data) {
    try {
        return params_from_json(json::parse(data));
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::SchemaError, e.what());
    }
}

} // namespace leakscope::io
