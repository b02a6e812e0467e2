#pragma once

// Content-addressed certificate cache: one JSON file per certificate,
// keyed by presentation hash + operation + budget class. Cached
// certificates are trusted only after replay verification.

#include <filesystem>
#include <fstream>
#include <optional>

#include "knotcert/certify.hpp"

namespace knotcert {

inline constexpr const char* kCacheEnvVar = "KNOTCERT_CACHE_DIR";

inline std::string cache_directory(const std::string& override_dir = "") {
    if (!override_dir.empty()) return override_dir;
    if (const char* env = std::getenv(kCacheEnvVar)) return env;
    return "";
}

inline std::string budget_class(const Budget& b) {
    return "mc" + std::to_string(b.max_cosets) + "-L" + std::to_string(b.max_word_length);
}

inline std::string cache_key(const std::string& operation, const std::string& presentation_hash,
                             const Budget& budget) {
    return presentation_hash + "-" + operation + "-" + budget_class(budget);
}

inline std::filesystem::path cache_path(const std::string& dir, const std::string& key) {
    return std::filesystem::path(dir) / (key + ".json");
}

inline void cache_store(const std::string& dir, const std::string& key, const Certificate& cert) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::ofstream out(cache_path(dir, key));
    out << cert.to_json().dump(2) << "\n";
}

inline std::optional<Certificate> cache_load(const std::string& dir, const std::string& key) {
    if (dir.empty()) return std::nullopt;
    auto path = cache_path(dir, key);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        Json j = Json::parse(in);
        Certificate cert = Certificate::from_json(j);
        if (!replay_certificate(cert)) return std::nullopt;
        return cert;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

struct CacheEntry {
    std::string file;
    std::string kind;
    std::string presentation_hash;
};

inline std::vector<CacheEntry> cache_list(const std::string& dir) {
    std::vector<CacheEntry> out;
    if (dir.empty() || !std::filesystem::exists(dir)) return out;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        CacheEntry entry;
        entry.file = p.filename().string();
        try {
            std::ifstream in(p);
            Json j = Json::parse(in);
            entry.kind = j.at("kind").get<std::string>();
            entry.presentation_hash = j.at("presentation_hash").get<std::string>();
        } catch (const std::exception&) {
            entry.kind = "corrupt";
        }
        out.push_back(std::move(entry));
    }
    return out;
}

inline int cache_gc(const std::string& dir, double max_age_seconds) {
    if (dir.empty() || !std::filesystem::exists(dir)) return 0;
    int removed = 0;
    auto now = std::filesystem::file_time_type::clock::now();
    std::vector<std::filesystem::path> doomed;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (!e.is_regular_file() || e.path().extension() != ".json") continue;
        auto age = std::chrono::duration<double>(now - e.last_write_time()).count();
        if (age >= max_age_seconds) doomed.push_back(e.path());
    }
    for (const auto& p : doomed) {
        std::filesystem::remove(p);
        ++removed;
    }
    return removed;
}

struct CacheVerifyResult {
    int checked = 0;
    std::vector<std::string> failures;
};

inline CacheVerifyResult cache_verify(const std::string& dir) {
    CacheVerifyResult out;
    if (dir.empty() || !std::filesystem::exists(dir)) return out;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        ++out.checked;
        bool ok = false;
        try {
            std::ifstream in(p);
            Json j = Json::parse(in);
            ok = replay_certificate(Certificate::from_json(j));
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok) out.failures.push_back(p.filename().string());
    }
    return out;
}

}  // namespace knotcert
