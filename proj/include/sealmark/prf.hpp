#pragma once

// Keyed pseudorandom function driving tournament scoring and detector key
// embeddings. All constructions are HMAC-SHA256 over canonical byte encodings
// (NFC-normalized strings, length prefixes, little-endian integers), so every
// value here is a pure function of its arguments on every platform.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sealmark/hash.hpp"
#include "sealmark/keys.hpp"
#include "sealmark/unicode.hpp"

namespace sealmark {

// Digest of the h surface tokens preceding a position in the original
// (pre-substitution) text. Windows shorter than h are left-padded with a
// sentinel so position 0 hashes identically in every document.
struct ContextId {
    Digest256 digest{};

    bool operator==(const ContextId& other) const { return digest == other.digest; }
    std::string hex() const { return to_hex(digest); }

    // First 8 bytes as an integer, for seeding the candidate-sampling RNG.
    std::uint64_t seed64() const { return load_u64_le(digest.data()); }
};

inline constexpr std::string_view kContextPadSentinel = "\x01<pad>";

inline ContextId derive_context_id(const std::vector<std::string>& tokens,
                                   std::size_t position, std::size_t h) {
    if (position >= tokens.size())
        throw std::out_of_range("derive_context_id: position out of range");
    std::string buf;
    buf.append("smk.ctx.v1");
    append_u32_le(buf, static_cast<std::uint32_t>(h));
    // Exactly h window slots, sentinel-padded on the left.
    for (std::size_t slot = 0; slot < h; ++slot) {
        std::size_t back = h - slot;  // distance before `position`
        if (position >= back) {
            append_lp_string(buf, nfc_normalize(tokens[position - back]));
        } else {
            append_lp_string(buf, kContextPadSentinel);
        }
    }
    ContextId ctx;
    ctx.digest = Sha256::digest(buf);
    return ctx;
}

struct PrfBit {
    int value = 0;  // in {0, 1}
};

inline PrfBit prf_bit(const WatermarkKey& key, const ContextId& ctx,
                      std::string_view candidate, std::uint32_t round) {
    std::string msg;
    msg.append("smk.bit.v1");
    msg.append(reinterpret_cast<const char*>(ctx.digest.data()), ctx.digest.size());
    append_lp_string(msg, nfc_normalize(candidate));
    append_u32_le(msg, round);
    Digest256 d = hmac_sha256(key.secret(), msg);
    return PrfBit{d[31] & 1};
}

// Maps a key to a deterministic vector in [0,1)^dim; four components per
// HMAC block.
inline std::vector<double> prf_vector(const WatermarkKey& key, int dim) {
    if (dim < 1) throw std::invalid_argument("prf_vector: dim must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(dim));
    std::uint32_t block = 0;
    while (out.size() < static_cast<std::size_t>(dim)) {
        std::string msg;
        msg.append("smk.vec.v1");
        append_u32_le(msg, block++);
        Digest256 d = hmac_sha256(key.secret(), msg);
        for (int j = 0; j < 4 && out.size() < static_cast<std::size_t>(dim); ++j)
            out.push_back(u64_to_unit_double(load_u64_le(d.data() + 8 * j)));
    }
    return out;
}

}  // namespace sealmark
