#pragma once

#include <filesystem>
#include <string>

#include "leakscope/profile.hpp"

namespace testutil {

inline std::string data_path(const std::string& rel) {
    return std::string(LEAKSCOPE_SOURCE_DIR) + "/" + rel;
}

// Fresh per-test scratch directory under the system temp root.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() / ("leakscope_" + tag);
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    std::string str() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

inline leakscope::Profile make_profile(std::string id, std::string hash,
                                       std::string summary = "a short summary") {
    leakscope::Profile p;
    p.id = std::move(id);
    p.subject_hash = std::move(hash);
    p.summary = std::move(summary);
    return p;
}

} // namespace testutil
