#pragma once

// Context-aware synonym lookup table: masked-context candidate generation,
// filtering, sentence-level similarity scoring, and delta-threshold
// selection. Per-token work is independent; build_lookup_table fans out over
// a small thread pool and merges results by token index.

#include <algorithm>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sealmark/errors.hpp"
#include "sealmark/lexicon.hpp"
#include "sealmark/similarity.hpp"
#include "sealmark/text_analysis.hpp"
#include "sealmark/unicode.hpp"

namespace sealmark {

inline constexpr std::string_view kMaskSentinel = "[MASK]";
inline constexpr std::string_view kSepSentinel = "[SEP]";

struct MaskedQuery {
    std::string context;         // C: token window around the target
    std::string masked_context;  // C_M: window with the target masked
    std::size_t target_index = 0;  // index into AnalyzedText.tokens
    std::string composed;          // C ⊕ [SEP] ⊕ C_M
    std::string original_surface;
    std::string original_pos;
};

struct Candidate {
    std::string token;        // cased, ready to splice
    double similarity = 0.0;  // S_ij against the original sentence
    double probability = 0.0; // filled by the sampler
};

struct LookupEntry {
    std::size_t token_index = 0;
    std::string original;
    std::vector<Candidate> candidates;  // sorted by descending similarity
};

struct LookupTable {
    std::map<std::size_t, LookupEntry> entries;
    double delta = 0.0;
    std::map<std::string, std::string> provider_fingerprints;

    std::size_t total_candidates() const {
        std::size_t n = 0;
        for (const auto& [_, e] : entries) n += e.candidates.size();
        return n;
    }
};

class CandidateProvider {
public:
    virtual ~CandidateProvider() = default;
    virtual std::string name() const = 0;
    virtual std::string fingerprint() const = 0;
    virtual std::vector<std::string> generate(const MaskedQuery& query,
                                              int top_k) const = 0;
};

// Fixture fill-mask stand-in: proposes the target's synonym-group mates in
// the group's fixed order. Deterministic by construction.
class LexiconCandidateProvider final : public CandidateProvider {
public:
    std::string name() const override { return "lexicon-candidates.v1"; }

    std::string fingerprint() const override {
        return "lexicon-candidates.v1+lex:" + Lexicon::instance().fingerprint();
    }

    std::vector<std::string> generate(const MaskedQuery& query,
                                      int top_k) const override {
        const auto& members = Lexicon::instance().group_members(query.original_surface);
        std::vector<std::string> out;
        std::string lower = to_lower_ascii(query.original_surface);
        for (const auto& m : members) {
            if (m == lower) continue;
            out.push_back(m);
            if (static_cast<int>(out.size()) >= top_k) break;
        }
        return out;
    }
};

inline MaskedQuery build_masked_query(const AnalyzedText& analyzed,
                                      std::size_t token_index, int window_tokens) {
    if (window_tokens < 1)
        throw std::invalid_argument("build_masked_query: window_tokens must be >= 1");
    if (std::find(analyzed.watermarkable.begin(), analyzed.watermarkable.end(),
                  token_index) == analyzed.watermarkable.end())
        throw std::invalid_argument("build_masked_query: token is not watermarkable");

    const std::size_t n = analyzed.tokens.size();
    const std::size_t w = static_cast<std::size_t>(window_tokens);
    std::size_t begin = token_index > w / 2 ? token_index - w / 2 : 0;
    std::size_t end = std::min(n, begin + w);
    begin = end > w ? end - w : 0;

    MaskedQuery q;
    q.target_index = token_index;
    q.original_surface = analyzed.tokens[token_index].surface;
    q.original_pos = analyzed.tokens[token_index].pos;
    for (std::size_t i = begin; i < end; ++i) {
        if (!q.context.empty()) {
            q.context.push_back(' ');
            q.masked_context.push_back(' ');
        }
        q.context += analyzed.tokens[i].surface;
        q.masked_context +=
            i == token_index ? std::string(kMaskSentinel) : analyzed.tokens[i].surface;
    }
    q.composed = q.context + " " + std::string(kSepSentinel) + " " + q.masked_context;
    return q;
}

inline std::vector<std::string> generate_candidates(const CandidateProvider& provider,
                                                    const MaskedQuery& query,
                                                    int top_k) {
    if (top_k < 2)
        throw std::invalid_argument("generate_candidates: top_k must be >= 2");
    std::vector<std::string> raw = provider.generate(query, top_k);
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (auto& s : raw) {
        if (static_cast<int>(out.size()) >= top_k) break;
        if (seen.insert(s).second) out.push_back(std::move(s));
    }
    return out;
}

namespace detail {

inline bool is_clean_word(const std::string& s) {
    if (s.empty()) return false;
    if (s.rfind("##", 0) == 0) return false;
    std::vector<char32_t> cps = utf8_decode(s);
    for (std::size_t i = 0; i < cps.size(); ++i) {
        char32_t c = cps[i];
        if (is_letter(c)) continue;
        bool interior = i > 0 && i + 1 < cps.size();
        if ((c == '\'' || c == '-') && interior) continue;
        return false;
    }
    return is_letter(cps.front());
}

}  // namespace detail

// Drops duplicates, antonyms, subword fragments, out-of-lexicon strings, and
// POS-inconsistent candidates. Indefinite-article agreement is handled at
// splice time, not here, so article-mismatched candidates survive.
inline std::vector<std::string> filter_candidates(
    const std::vector<std::string>& raw, const Token& original,
    const Lexicon& lex = Lexicon::instance()) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    const std::string orig_lower = to_lower_ascii(original.surface);
    for (const auto& cand : raw) {
        const std::string lower = to_lower_ascii(cand);
        if (lower == orig_lower) continue;
        if (!seen.insert(lower).second) continue;
        if (!detail::is_clean_word(cand)) continue;
        if (lex.are_antonyms(lower, orig_lower)) continue;
        if (!lex.contains(lower)) continue;
        if (lex.content_tag(lower) != original.pos) continue;
        out.push_back(lower);
    }
    return out;
}

// Replaces the token span inside its sentence and scores sentence-level
// similarity per candidate. Returns nothing when fewer than two candidates
// clear the threshold.
inline std::optional<LookupEntry> score_and_select(const AnalyzedText& analyzed,
                                                   std::size_t token_index,
                                                   const std::vector<std::string>& filtered,
                                                   const SimilarityProvider& sim,
                                                   double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("score_and_select: delta must be in (0,1)");
    if (filtered.size() < 2) return std::nullopt;

    const Token& tok = analyzed.tokens[token_index];
    const SentenceSpan& sent = analyzed.sentence_of(token_index);
    const std::string sentence = analyzed.sentence_text(token_index);
    const std::size_t rel_start = tok.start - sent.start;
    const std::size_t rel_end = tok.end - sent.start;
    const std::size_t b0 = utf8_byte_offset(sentence, rel_start);
    const std::size_t b1 = utf8_byte_offset(sentence, rel_end);
    const CasePattern pattern = detect_case_pattern(tok.surface);

    LookupEntry entry;
    entry.token_index = token_index;
    entry.original = tok.surface;
    for (const auto& cand : filtered) {
        std::string cased = apply_case_pattern(cand, pattern);
        std::string substituted =
            sentence.substr(0, b0) + cased + sentence.substr(b1);
        double s = sim.similarity(sentence, substituted);
        if (s >= delta) entry.candidates.push_back(Candidate{cased, s, 0.0});
    }
    if (entry.candidates.size() < 2) return std::nullopt;
    std::sort(entry.candidates.begin(), entry.candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                  if (a.similarity != b.similarity) return a.similarity > b.similarity;
                  return a.token < b.token;
              });
    return entry;
}

struct LookupBuildOptions {
    double delta = 0.92;
    int window_tokens = 200;
    int top_k = 16;
    unsigned max_threads = 0;  // 0: hardware concurrency
};

struct LookupBuildResult {
    LookupTable table;
    std::vector<std::pair<std::size_t, std::string>> skipped;  // (token, reason)
    std::vector<std::string> warnings;
};

inline LookupBuildResult build_lookup_table(const AnalyzedText& analyzed,
                                            const CandidateProvider& candidates,
                                            const SimilarityProvider& sim,
                                            const LookupBuildOptions& opt) {
    LookupBuildResult result;
    result.table.delta = opt.delta;
    result.table.provider_fingerprints["candidates"] = candidates.fingerprint();
    result.table.provider_fingerprints["similarity"] = sim.fingerprint();

    const auto& twm = analyzed.watermarkable;
    struct Slot {
        std::optional<LookupEntry> entry;
        std::string skip_reason;
        std::string warning;
    };
    std::vector<Slot> slots(twm.size());

    auto work = [&](std::size_t slot_index) {
        const std::size_t ti = twm[slot_index];
        Slot& slot = slots[slot_index];
        try {
            MaskedQuery q = build_masked_query(analyzed, ti, opt.window_tokens);
            std::vector<std::string> raw = generate_candidates(candidates, q, opt.top_k);
            if (raw.empty()) {
                slot.skip_reason = "no_candidates";
                return;
            }
            std::vector<std::string> filtered =
                filter_candidates(raw, analyzed.tokens[ti]);
            auto entry = score_and_select(analyzed, ti, filtered, sim, opt.delta);
            if (!entry) {
                slot.skip_reason = "insufficient_candidates";
                return;
            }
            slot.entry = std::move(entry);
        } catch (const ProviderError& e) {
            slot.skip_reason = "provider_error";
            slot.warning = std::string("token ") + std::to_string(ti) +
                           " skipped: " + e.what();
        }
    };

    unsigned hw = opt.max_threads ? opt.max_threads
                                  : std::max(1u, std::thread::hardware_concurrency());
    if (twm.size() >= 16 && hw > 1) {
        std::vector<std::future<void>> futs;
        std::size_t chunk = (twm.size() + hw - 1) / hw;
        for (unsigned t = 0; t < hw; ++t) {
            std::size_t lo = t * chunk, hi = std::min(twm.size(), lo + chunk);
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, [&, lo, hi] {
                for (std::size_t s = lo; s < hi; ++s) work(s);
            }));
        }
        for (auto& f : futs) f.get();
    } else {
        for (std::size_t s = 0; s < twm.size(); ++s) work(s);
    }

    for (std::size_t s = 0; s < twm.size(); ++s) {
        Slot& slot = slots[s];
        if (!slot.warning.empty()) result.warnings.push_back(slot.warning);
        if (slot.entry) {
            result.table.entries.emplace(twm[s], std::move(*slot.entry));
        } else {
            result.skipped.emplace_back(twm[s], slot.skip_reason);
        }
    }
    return result;
}

inline nlohmann::ordered_json table_to_json(const LookupTable& table) {
    nlohmann::ordered_json doc;
    doc["delta"] = table.delta;
    doc["provider_fingerprints"] = table.provider_fingerprints;
    doc["entries"] = nlohmann::ordered_json::array();
    for (const auto& [ti, entry] : table.entries) {
        nlohmann::ordered_json e;
        e["token_index"] = ti;
        e["original"] = entry.original;
        e["candidates"] = nlohmann::ordered_json::array();
        for (const auto& c : entry.candidates) {
            nlohmann::ordered_json cj;
            cj["token"] = c.token;
            cj["similarity"] = c.similarity;
            e["candidates"].push_back(cj);
        }
        doc["entries"].push_back(e);
    }
    return doc;
}

inline LookupTable table_from_json(const nlohmann::json& doc) {
    LookupTable table;
    table.delta = doc.at("delta").get<double>();
    for (const auto& [k, v] :
         doc.at("provider_fingerprints").get<std::map<std::string, std::string>>())
        table.provider_fingerprints[k] = v;
    for (const auto& e : doc.at("entries")) {
        LookupEntry entry;
        entry.token_index = e.at("token_index").get<std::size_t>();
        entry.original = e.at("original").get<std::string>();
        for (const auto& cj : e.at("candidates"))
            entry.candidates.push_back(Candidate{cj.at("token").get<std::string>(),
                                                 cj.at("similarity").get<double>(), 0.0});
        table.entries.emplace(entry.token_index, std::move(entry));
    }
    return table;
}

}  // namespace sealmark
