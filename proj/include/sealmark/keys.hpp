#pragma once

// Watermark key material and the keystore file format. Secrets stay inside
// WatermarkKey and are never written by any serializer in this library; only
// key_id strings appear in logs, reports, and service responses.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sealmark/errors.hpp"

namespace sealmark {

inline std::string base64_encode(std::string_view in) {
    static const char* alphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((in.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 3 <= in.size()) {
        std::uint32_t v = (std::uint32_t(static_cast<unsigned char>(in[i])) << 16) |
                          (std::uint32_t(static_cast<unsigned char>(in[i + 1])) << 8) |
                          std::uint32_t(static_cast<unsigned char>(in[i + 2]));
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out.push_back(alphabet[v & 63]);
        i += 3;
    }
    std::size_t rem = in.size() - i;
    if (rem == 1) {
        std::uint32_t v = std::uint32_t(static_cast<unsigned char>(in[i])) << 16;
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.append("==");
    } else if (rem == 2) {
        std::uint32_t v = (std::uint32_t(static_cast<unsigned char>(in[i])) << 16) |
                          (std::uint32_t(static_cast<unsigned char>(in[i + 1])) << 8);
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

inline std::string base64_decode(std::string_view in) {
    auto val = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };
    std::string out;
    int bits = 0, acc = 0;
    for (char c : in) {
        if (c == '=' || c == '\n' || c == '\r' || c == ' ') continue;
        int v = val(c);
        if (v < 0) throw std::invalid_argument("base64: invalid character");
        acc = (acc << 6) | v;
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<char>((acc >> bits) & 0xff));
        }
    }
    return out;
}

class WatermarkKey {
public:
    static constexpr std::size_t kMinSecretBytes = 16;

    WatermarkKey(std::string key_id, std::string secret)
        : key_id_(std::move(key_id)), secret_(std::move(secret)) {
        if (key_id_.empty()) throw std::invalid_argument("key_id must be non-empty");
        if (secret_.size() < kMinSecretBytes)
            throw std::invalid_argument("key secret must be at least 16 bytes");
    }

    const std::string& key_id() const noexcept { return key_id_; }

    // Deliberately the only accessor for the raw secret; callers inside this
    // library use it solely to key the PRF. Nothing serializes it.
    std::string_view secret() const noexcept { return secret_; }

private:
    std::string key_id_;
    std::string secret_;
};

// Keystore file: {"keys": [{"key_id": "...", "secret": "<base64>"}]}
class KeyRegistry {
public:
    KeyRegistry() = default;

    void add(WatermarkKey key) {
        auto id = key.key_id();
        if (keys_.count(id)) throw std::invalid_argument("duplicate key_id: " + id);
        keys_.emplace(std::move(id), std::move(key));
    }

    const WatermarkKey* find(const std::string& key_id) const {
        auto it = keys_.find(key_id);
        return it == keys_.end() ? nullptr : &it->second;
    }

    const WatermarkKey& require(const std::string& key_id) const {
        const WatermarkKey* k = find(key_id);
        if (!k) throw std::invalid_argument("unknown key_id: " + key_id);
        return *k;
    }

    std::vector<std::string> key_ids() const {
        std::vector<std::string> out;
        out.reserve(keys_.size());
        for (const auto& [id, _] : keys_) out.push_back(id);
        return out;
    }

    std::size_t size() const noexcept { return keys_.size(); }
    bool empty() const noexcept { return keys_.empty(); }

    static KeyRegistry parse(const std::string& json_text) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(json_text);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("keystore: invalid JSON: ") + e.what());
        }
        if (!doc.is_object() || !doc.contains("keys") || !doc["keys"].is_array())
            throw ConfigError("keystore: expected {\"keys\": [...]}");
        KeyRegistry reg;
        for (const auto& rec : doc["keys"]) {
            if (!rec.is_object() || !rec.contains("key_id") || !rec.contains("secret"))
                throw ConfigError("keystore: each record needs key_id and secret");
            std::string id = rec["key_id"].get<std::string>();
            std::string secret;
            try {
                secret = base64_decode(rec["secret"].get<std::string>());
            } catch (const std::exception& e) {
                throw ConfigError("keystore: key " + id + ": " + e.what());
            }
            try {
                reg.add(WatermarkKey(id, std::move(secret)));
            } catch (const std::exception& e) {
                throw ConfigError(std::string("keystore: ") + e.what());
            }
        }
        return reg;
    }

    static KeyRegistry load_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("keystore: cannot open " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

private:
    std::map<std::string, WatermarkKey> keys_;
};

inline std::string write_keystore_json(const std::vector<WatermarkKey>& keys) {
    nlohmann::ordered_json doc;
    doc["keys"] = nlohmann::ordered_json::array();
    for (const auto& k : keys) {
        nlohmann::ordered_json rec;
        rec["key_id"] = k.key_id();
        rec["secret"] = base64_encode(k.secret());
        doc["keys"].push_back(rec);
    }
    return doc.dump(2);
}

}  // namespace sealmark
