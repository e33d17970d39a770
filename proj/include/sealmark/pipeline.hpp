#pragma once

// End-to-end embedding: analyze -> select watermarkable -> lookup table ->
// per-token tournament -> splice. Substitutions are applied to the original
// string by descending character offset, so earlier offsets never shift.
// Every original entity span is re-verified byte-identically at its mapped
// offset before an output is returned.

#include <chrono>
#include <future>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sealmark/cache.hpp"
#include "sealmark/errors.hpp"
#include "sealmark/keys.hpp"
#include "sealmark/lookup_table.hpp"
#include "sealmark/prf.hpp"
#include "sealmark/sampler.hpp"
#include "sealmark/similarity.hpp"
#include "sealmark/text_analysis.hpp"
#include "sealmark/unicode.hpp"

namespace sealmark {

struct WatermarkConfig {
    double delta = 0.92;
    int window_tokens = 200;
    int top_k = 16;
    int context_window_h = 6;  // h: preceding original tokens per PRF context
    SamplingConfig sampling;
    std::set<std::string> allowed_pos = default_allowed_pos();
    bool cache_enabled = false;
    std::string cache_dir;
    bool include_trace = false;

    void validate() const {
        if (!(delta > 0.0 && delta < 1.0))
            throw std::invalid_argument("config: delta must be in (0,1)");
        if (window_tokens < 1)
            throw std::invalid_argument("config: window_tokens must be >= 1");
        if (top_k < 2) throw std::invalid_argument("config: top_k must be >= 2");
        if (context_window_h < 0)
            throw std::invalid_argument("config: context_window_h must be >= 0");
        sampling.total_samples();
    }
};

struct ArticleRepair {
    std::size_t token_index = 0;  // index of the repaired article token
    std::string original;
    std::string replacement;
};

struct SubstitutionRecord {
    std::size_t token_index = 0;
    std::string original;
    std::string chosen;
    double similarity = 0.0;  // S_ij of the chosen pair
    std::string context_id;   // hex digest of the PRF context
    std::optional<ArticleRepair> article_repair;
    std::optional<TournamentTrace> trace;  // only when config.include_trace
};

struct SkippedToken {
    std::size_t token_index = 0;
    std::string reason;
};

struct StageTiming {
    double analysis_ms = 0;
    double lookup_ms = 0;
    double sampling_ms = 0;
    double splice_ms = 0;
    double total_ms = 0;
    bool analysis_cache_hit = false;
    bool lookup_cache_hit = false;
};

struct WatermarkedOutput {
    std::string original_text;
    std::string watermarked_text;
    std::string key_id;
    std::vector<SubstitutionRecord> records;
    std::vector<SkippedToken> skipped;
    StageTiming timing;
    std::size_t twm_size = 0;  // |T^wm|, the Eq. 5 denominator
    std::vector<std::string> warnings;
};

struct ProviderSet {
    std::shared_ptr<AnalyzerProvider> analyzer;
    std::shared_ptr<CandidateProvider> candidates;
    std::shared_ptr<SimilarityProvider> similarity;

    static ProviderSet fixtures() {
        ProviderSet p;
        p.analyzer = std::make_shared<RuleAnalyzer>();
        p.candidates = std::make_shared<LexiconCandidateProvider>();
        p.similarity = std::make_shared<GroupEmbeddingSimilarity>();
        return p;
    }
};

namespace detail {

inline const std::set<std::string>& an_exception_words() {
    // vowel letter, consonant sound
    static const std::set<std::string> words = {
        "university", "unique", "used", "user", "uniform", "unit", "union",
        "one", "once", "european"};
    return words;
}

inline const std::set<std::string>& a_exception_words() {
    // consonant letter, vowel sound
    static const std::set<std::string> words = {"hour", "honest", "honor", "heir",
                                                "herb"};
    return words;
}

inline std::string article_for(const std::string& word) {
    std::string lower = to_lower_ascii(word);
    if (an_exception_words().count(lower)) return "a";
    if (a_exception_words().count(lower)) return "an";
    if (lower.empty()) return "a";
    char c = lower[0];
    return (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') ? "an" : "a";
}

inline double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

}  // namespace detail

class Pipeline {
public:
    Pipeline(ProviderSet providers, WatermarkConfig config)
        : providers_(std::move(providers)), config_(std::move(config)),
          cache_(config_.cache_dir, config_.cache_enabled) {
        config_.validate();
        if (!providers_.analyzer || !providers_.candidates || !providers_.similarity)
            throw std::invalid_argument("pipeline: all providers must be set");
    }

    const WatermarkConfig& config() const { return config_; }
    const ProviderSet& providers() const { return providers_; }

    WatermarkedOutput embed(const std::string& text, const WatermarkKey& key) const {
        auto t_total = std::chrono::steady_clock::now();
        WatermarkedOutput out;
        out.original_text = text;
        out.key_id = key.key_id();

        // analysis
        auto t0 = std::chrono::steady_clock::now();
        AnalyzedText analyzed;
        const std::string analysis_key = analysis_cache_key(text);
        bool analysis_hit = false;
        if (auto cached = cache_.get("analysis", analysis_key, &out.warnings)) {
            try {
                analyzed = analyzed_from_json(*cached);
                analysis_hit = true;
            } catch (const nlohmann::json::exception& e) {
                out.warnings.push_back(std::string("cache: bad analysis entry: ") +
                                       e.what());
            }
        }
        if (!analysis_hit) {
            try {
                analyzed = providers_.analyzer->analyze(text);
            } catch (const std::invalid_argument&) {
                throw;
            } catch (const ProviderError&) {
                throw;
            } catch (const std::exception& e) {
                throw ProviderError("analysis", e.what());
            }
            analyzed = select_watermarkable(std::move(analyzed), config_.allowed_pos);
            cache_.put("analysis", analysis_key, analyzed_to_json(analyzed));
        }
        out.timing.analysis_cache_hit = analysis_hit;
        out.timing.analysis_ms = detail::ms_since(t0);
        out.twm_size = analyzed.watermarkable.size();

        // lookup table
        t0 = std::chrono::steady_clock::now();
        LookupTable table;
        std::vector<std::pair<std::size_t, std::string>> lookup_skips;
        const std::string lookup_key = lookup_cache_key(analysis_key);
        bool lookup_hit = false;
        if (auto cached = cache_.get("lookup", lookup_key, &out.warnings)) {
            try {
                table = table_from_json(cached->at("table"));
                for (const auto& s : cached->at("skipped"))
                    lookup_skips.emplace_back(s.at(0).get<std::size_t>(),
                                              s.at(1).get<std::string>());
                lookup_hit = true;
            } catch (const nlohmann::json::exception& e) {
                out.warnings.push_back(std::string("cache: bad lookup entry: ") +
                                       e.what());
            }
        }
        if (!lookup_hit) {
            LookupBuildOptions opt;
            opt.delta = config_.delta;
            opt.window_tokens = config_.window_tokens;
            opt.top_k = config_.top_k;
            LookupBuildResult built =
                build_lookup_table(analyzed, *providers_.candidates,
                                   *providers_.similarity, opt);
            table = std::move(built.table);
            lookup_skips = std::move(built.skipped);
            for (auto& w : built.warnings) out.warnings.push_back(std::move(w));
            nlohmann::ordered_json cached;
            cached["table"] = table_to_json(table);
            cached["skipped"] = nlohmann::ordered_json::array();
            for (const auto& [ti, reason] : lookup_skips)
                cached["skipped"].push_back({ti, reason});
            cache_.put("lookup", lookup_key, cached);
        }
        out.timing.lookup_cache_hit = lookup_hit;
        out.timing.lookup_ms = detail::ms_since(t0);
        for (const auto& [ti, reason] : lookup_skips)
            out.skipped.push_back(SkippedToken{ti, reason});

        // key-conditioned tournaments
        t0 = std::chrono::steady_clock::now();
        std::vector<std::string> original_surfaces;
        original_surfaces.reserve(analyzed.tokens.size());
        for (const auto& t : analyzed.tokens) original_surfaces.push_back(t.surface);

        for (const auto& [ti, entry] : table.entries) {
            ContextId ctx =
                derive_context_id(original_surfaces, ti,
                                  static_cast<std::size_t>(config_.context_window_h));
            std::vector<double> probs =
                candidate_probabilities(entry, config_.sampling.alpha);
            TournamentResult res = run_tournament(key, ctx, entry, probs,
                                                  config_.sampling);
            SubstitutionRecord rec;
            rec.token_index = ti;
            rec.original = entry.original;
            rec.chosen = res.winner.token;
            rec.similarity = res.winner.similarity;
            rec.context_id = ctx.hex();
            if (config_.include_trace) rec.trace = res.trace;
            // indefinite-article agreement with the substituted onset
            if (ti > 0) {
                const Token& prev = analyzed.tokens[ti - 1];
                std::string prev_lower = to_lower_ascii(prev.surface);
                if (prev_lower == "a" || prev_lower == "an") {
                    std::string want = detail::article_for(rec.chosen);
                    if (want != prev_lower) {
                        ArticleRepair repair;
                        repair.token_index = ti - 1;
                        repair.original = prev.surface;
                        repair.replacement =
                            apply_case_pattern(want, detect_case_pattern(prev.surface));
                        rec.article_repair = repair;
                    }
                }
            }
            out.records.push_back(std::move(rec));
        }
        out.timing.sampling_ms = detail::ms_since(t0);

        // splice by descending offset
        t0 = std::chrono::steady_clock::now();
        out.watermarked_text = splice(analyzed, out.records);
        verify_entities(analyzed, out);
        out.timing.splice_ms = detail::ms_since(t0);
        out.timing.total_ms = detail::ms_since(t_total);
        return out;
    }

    struct BatchItem {
        bool ok = false;
        WatermarkedOutput output;
        std::string error;
    };

    // Order-aligned with inputs; one failing element never aborts the batch.
    std::vector<BatchItem> embed_batch(const std::vector<std::string>& texts,
                                       const WatermarkKey& key) const {
        std::vector<BatchItem> items(texts.size());
        auto work = [&](std::size_t i) {
            try {
                items[i].output = embed(texts[i], key);
                items[i].ok = true;
            } catch (const std::exception& e) {
                items[i].error = e.what();
            }
        };
        unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        if (texts.size() >= 4 && hw > 1) {
            std::vector<std::future<void>> futs;
            std::size_t chunk = (texts.size() + hw - 1) / hw;
            for (unsigned t = 0; t < hw; ++t) {
                std::size_t lo = t * chunk, hi = std::min(texts.size(), lo + chunk);
                if (lo >= hi) break;
                futs.push_back(std::async(std::launch::async, [&, lo, hi] {
                    for (std::size_t i = lo; i < hi; ++i) work(i);
                }));
            }
            for (auto& f : futs) f.get();
        } else {
            for (std::size_t i = 0; i < texts.size(); ++i) work(i);
        }
        return items;
    }

private:
    std::string analysis_cache_key(const std::string& text) const {
        std::string material = "analysis.v1|";
        material += providers_.analyzer->fingerprint();
        material += '|';
        for (const auto& p : config_.allowed_pos) {
            material += p;
            material += ',';
        }
        material += '|';
        material += text;
        return sha256_hex(material);
    }

    std::string lookup_cache_key(const std::string& analysis_key) const {
        nlohmann::ordered_json cfg;
        cfg["delta"] = config_.delta;
        cfg["window_tokens"] = config_.window_tokens;
        cfg["top_k"] = config_.top_k;
        std::string material = "lookup.v1|";
        material += analysis_key;
        material += '|';
        material += providers_.candidates->fingerprint();
        material += '|';
        material += providers_.similarity->fingerprint();
        material += '|';
        material += cfg.dump();
        return sha256_hex(material);
    }

    std::string splice(const AnalyzedText& analyzed,
                       const std::vector<SubstitutionRecord>& records) const {
        struct Edit {
            std::size_t start, end;  // character offsets
            std::string replacement;
        };
        std::vector<Edit> edits;
        for (const auto& rec : records) {
            const Token& t = analyzed.tokens[rec.token_index];
            edits.push_back(Edit{t.start, t.end, rec.chosen});
            if (rec.article_repair) {
                const Token& a = analyzed.tokens[rec.article_repair->token_index];
                edits.push_back(Edit{a.start, a.end, rec.article_repair->replacement});
            }
        }
        std::sort(edits.begin(), edits.end(),
                  [](const Edit& a, const Edit& b) { return a.start > b.start; });
        std::string text = analyzed.source;
        for (const auto& e : edits) {
            std::size_t b0 = utf8_byte_offset(text, e.start);
            std::size_t b1 = utf8_byte_offset(text, e.end);
            text = text.substr(0, b0) + e.replacement + text.substr(b1);
        }
        return text;
    }

    void verify_entities(const AnalyzedText& analyzed,
                         const WatermarkedOutput& out) const {
        // cumulative character-length deltas of substitutions before a span
        struct Delta {
            std::size_t end;
            long diff;
        };
        std::vector<Delta> deltas;
        for (const auto& rec : out.records) {
            const Token& t = analyzed.tokens[rec.token_index];
            deltas.push_back(Delta{t.end, static_cast<long>(utf8_length(rec.chosen)) -
                                              static_cast<long>(t.end - t.start)});
            if (rec.article_repair) {
                const Token& a = analyzed.tokens[rec.article_repair->token_index];
                deltas.push_back(
                    Delta{a.end,
                          static_cast<long>(utf8_length(rec.article_repair->replacement)) -
                              static_cast<long>(a.end - a.start)});
            }
        }
        for (const auto& span : analyzed.entity_spans) {
            long shift = 0;
            for (const auto& d : deltas)
                if (d.end <= span.start) shift += d.diff;
            std::size_t new_start = static_cast<std::size_t>(
                static_cast<long>(span.start) + shift);
            std::size_t len = span.end - span.start;
            std::size_t ob0 = utf8_byte_offset(analyzed.source, span.start);
            std::size_t ob1 = utf8_byte_offset(analyzed.source, span.end);
            std::string original = analyzed.source.substr(ob0, ob1 - ob0);
            std::size_t nb0 = utf8_byte_offset(out.watermarked_text, new_start);
            std::size_t nb1 = utf8_byte_offset(out.watermarked_text, new_start + len);
            std::string mapped = out.watermarked_text.substr(nb0, nb1 - nb0);
            if (mapped != original)
                throw std::logic_error("pipeline: entity span altered: '" + original +
                                       "' became '" + mapped + "'");
        }
    }

    ProviderSet providers_;
    WatermarkConfig config_;
    DiskCache cache_;
};

inline nlohmann::ordered_json output_to_json(const WatermarkedOutput& out,
                                             bool include_timing = true) {
    nlohmann::ordered_json doc;
    doc["original_text"] = out.original_text;
    doc["watermarked_text"] = out.watermarked_text;
    doc["key_id"] = out.key_id;
    doc["twm_size"] = out.twm_size;
    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& r : out.records) {
        nlohmann::ordered_json rec;
        rec["token_index"] = r.token_index;
        rec["original"] = r.original;
        rec["chosen"] = r.chosen;
        rec["similarity"] = r.similarity;
        rec["context_id"] = r.context_id;
        if (r.article_repair) {
            rec["article_repair"] = {
                {"token_index", r.article_repair->token_index},
                {"original", r.article_repair->original},
                {"replacement", r.article_repair->replacement}};
        }
        if (r.trace) {
            rec["trace"] = {{"sampled", r.trace->sampled},
                            {"final_winner", r.trace->final_winner}};
        }
        doc["records"].push_back(rec);
    }
    doc["skipped"] = nlohmann::ordered_json::array();
    for (const auto& s : out.skipped)
        doc["skipped"].push_back({{"token_index", s.token_index}, {"reason", s.reason}});
    if (include_timing) {
        doc["timing"] = {{"analysis_ms", out.timing.analysis_ms},
                         {"lookup_ms", out.timing.lookup_ms},
                         {"sampling_ms", out.timing.sampling_ms},
                         {"splice_ms", out.timing.splice_ms},
                         {"total_ms", out.timing.total_ms},
                         {"analysis_cache_hit", out.timing.analysis_cache_hit},
                         {"lookup_cache_hit", out.timing.lookup_cache_hit}};
    }
    if (!out.warnings.empty()) doc["warnings"] = out.warnings;
    return doc;
}

}  // namespace sealmark
