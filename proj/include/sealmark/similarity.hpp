#pragma once

// Sentence-pair similarity providers. The default fixture provider embeds a
// sentence as a sum of deterministic word vectors in which synonym-group
// members share a dominant direction, so substituting a word by a group mate
// yields a high but word-dependent similarity while unrelated edits score
// low. The character-trigram provider backs entity-level cosine scores.

#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sealmark/hash.hpp"
#include "sealmark/lexicon.hpp"
#include "sealmark/unicode.hpp"

namespace sealmark {

class SimilarityProvider {
public:
    virtual ~SimilarityProvider() = default;
    virtual std::string name() const = 0;
    virtual std::string fingerprint() const = 0;
    // Symmetric, in [0,1], similarity(s, s) == 1.
    virtual double similarity(const std::string& a, const std::string& b) const = 0;
};

namespace detail {

// Deterministic unit vector for a label: components are ±1/sqrt(dim) chosen
// by a counter hash of the label.
inline void add_label_vector(std::vector<double>& acc, std::string_view label,
                             double scale) {
    const std::uint64_t h = fnv1a64(label);
    const double unit = scale / std::sqrt(static_cast<double>(acc.size()));
    for (std::size_t j = 0; j < acc.size(); ++j) {
        std::uint64_t bit = mix64(h, j) & 1u;
        acc[j] += bit ? unit : -unit;
    }
}

inline std::vector<std::string> simple_words(std::string_view text) {
    std::vector<std::string> words;
    std::size_t i = 0;
    std::string cur;
    while (i < text.size()) {
        char32_t c = utf8_decode_at(text, i);
        bool letterish = is_ascii_alpha(c) || is_ascii_digit(c) || c >= 0xC0;
        if (letterish) {
            utf8_append(cur, c);
        } else if ((c == '\'' || c == '-' || c == '.') && !cur.empty()) {
            // keep intra-token punctuation only when surrounded by letters
            std::size_t peek = i;
            if (peek < text.size()) {
                char32_t nxt = utf8_decode_at(text, peek);
                if (is_ascii_alpha(nxt) || is_ascii_digit(nxt) || nxt >= 0xC0) {
                    utf8_append(cur, c);
                    continue;
                }
            }
            words.push_back(to_lower_ascii(cur));
            cur.clear();
        } else if (!cur.empty()) {
            words.push_back(to_lower_ascii(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) words.push_back(to_lower_ascii(cur));
    return words;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0 && nb == 0) return 1.0;
    if (na == 0 || nb == 0) return 0.0;
    return dot / std::sqrt(na * nb);
}

}  // namespace detail

class GroupEmbeddingSimilarity final : public SimilarityProvider {
public:
    explicit GroupEmbeddingSimilarity(int dim = 256) : dim_(dim) {}

    std::string name() const override { return "group-embed.v1"; }

    std::string fingerprint() const override {
        return "group-embed.v1/d" + std::to_string(dim_) + "+lex:" +
               Lexicon::instance().fingerprint();
    }

    std::vector<double> embed(const std::string& text) const {
        const auto& lex = Lexicon::instance();
        std::vector<double> acc(static_cast<std::size_t>(dim_), 0.0);
        for (const auto& w : detail::simple_words(text)) {
            const std::string gid = lex.group_id(w);
            if (gid.rfind("g:", 0) == 0) {
                // group member: dominant shared direction plus a word-specific
                // remainder; the mix is a fixed function of the word, which
                // spreads candidate similarities across the delta range
                const double u = u64_to_unit_double(mix64(fnv1a64(w), 0x5eed));
                const double shared = 0.35 + 0.45 * u;
                const double unique = std::sqrt(1.0 - shared * shared);
                detail::add_label_vector(acc, gid, shared);
                detail::add_label_vector(acc, "u:" + w, unique);
            } else {
                detail::add_label_vector(acc, gid, 1.0);
            }
        }
        return acc;
    }

    double similarity(const std::string& a, const std::string& b) const override {
        double c = detail::cosine(embed(a), embed(b));
        return c < 0 ? 0.0 : (c > 1 ? 1.0 : c);
    }

private:
    int dim_;
};

// Character-trigram multiset cosine; strings shorter than three characters
// fall back to a single whole-string gram.
class CharTrigramSimilarity final : public SimilarityProvider {
public:
    std::string name() const override { return "char-trigram.v1"; }
    std::string fingerprint() const override { return "char-trigram.v1"; }

    static std::map<std::string, int> grams(const std::string& s) {
        std::map<std::string, int> out;
        std::string lower = to_lower_ascii(s);
        if (lower.size() < 3) {
            if (!lower.empty()) out[lower] = 1;
            return out;
        }
        for (std::size_t i = 0; i + 3 <= lower.size(); ++i)
            out[lower.substr(i, 3)] += 1;
        return out;
    }

    double similarity(const std::string& a, const std::string& b) const override {
        auto ga = grams(a);
        auto gb = grams(b);
        if (ga.empty() && gb.empty()) return 1.0;
        if (ga.empty() || gb.empty()) return 0.0;
        double dot = 0, na = 0, nb = 0;
        for (const auto& [g, c] : ga) {
            na += double(c) * c;
            auto it = gb.find(g);
            if (it != gb.end()) dot += double(c) * it->second;
        }
        for (const auto& [g, c] : gb) nb += double(c) * c;
        return dot / std::sqrt(na * nb);
    }
};

}  // namespace sealmark
