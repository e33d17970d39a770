#pragma once

// Content-addressed on-disk cache for analysis and lookup artifacts.
// Single-writer multi-reader: writes go through a temp file + rename under a
// mutex; corrupt or truncated entries degrade to misses with a warning.

#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sealmark/hash.hpp"

namespace sealmark {

class DiskCache {
public:
    DiskCache() = default;

    DiskCache(std::string dir, bool enabled)
        : dir_(std::move(dir)), enabled_(enabled && !dir_.empty()) {}

    bool enabled() const { return enabled_; }

    std::optional<nlohmann::json> get(const std::string& stage,
                                      const std::string& key_hex,
                                      std::vector<std::string>* warnings) const {
        if (!enabled_) return std::nullopt;
        std::filesystem::path p = path_for(stage, key_hex);
        std::ifstream in(p, std::ios::binary);
        if (!in) return std::nullopt;
        std::ostringstream buf;
        buf << in.rdbuf();
        try {
            return nlohmann::json::parse(buf.str());
        } catch (const nlohmann::json::exception& e) {
            if (warnings)
                warnings->push_back("cache: corrupt entry " + p.string() +
                                    " treated as miss: " + e.what());
            return std::nullopt;
        }
    }

    void put(const std::string& stage, const std::string& key_hex,
             const nlohmann::ordered_json& doc) const {
        if (!enabled_) return;
        std::lock_guard<std::mutex> lock(write_mutex_);
        std::filesystem::path p = path_for(stage, key_hex);
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        std::filesystem::path tmp = p;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) return;  // cache failures never fail the pipeline
            out << doc.dump();
        }
        std::filesystem::rename(tmp, p, ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }

private:
    std::filesystem::path path_for(const std::string& stage,
                                   const std::string& key_hex) const {
        std::filesystem::path p(dir_);
        p /= stage;
        p /= key_hex.substr(0, 2);
        p /= key_hex + ".json";
        return p;
    }

    std::string dir_;
    bool enabled_ = false;
    mutable std::mutex write_mutex_;
};

}  // namespace sealmark
