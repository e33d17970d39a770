#pragma once

// Key-conditioned tournament sampling: candidate similarities become softmax
// sampling probabilities, M = c^m draws are taken with replacement from a
// counter-based RNG seeded by (seed, context), and m elimination rounds keep
// the participant with the winning keyed bit, earliest position on ties.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sealmark/keys.hpp"
#include "sealmark/lookup_table.hpp"
#include "sealmark/prf.hpp"

namespace sealmark {

struct SamplingConfig {
    double alpha = 1.0;        // softmax sharpness over similarities
    int match_size = 2;        // c
    int rounds = 10;           // m
    std::uint64_t seed = 1;    // candidate-sampling RNG seed

    // Total samples M = c^m; configs beyond 2^20 samples are rejected.
    std::uint64_t total_samples() const {
        if (alpha < 0) throw std::invalid_argument("sampling: alpha must be >= 0");
        if (match_size < 2) throw std::invalid_argument("sampling: match_size must be >= 2");
        if (rounds < 1) throw std::invalid_argument("sampling: rounds must be >= 1");
        std::uint64_t m = 1;
        for (int r = 0; r < rounds; ++r) {
            m *= static_cast<std::uint64_t>(match_size);
            if (m > (1ull << 20))
                throw std::invalid_argument("sampling: c^m exceeds 2^20 samples");
        }
        return m;
    }
};

struct TournamentTrace {
    std::vector<int> sampled;                    // candidate index per draw, |M|
    std::vector<std::vector<int>> round_winners; // surviving candidate indices per round
    int final_winner = -1;                       // index into entry.candidates
};

inline std::vector<double> candidate_probabilities(const LookupEntry& entry,
                                                   double alpha) {
    if (entry.candidates.size() < 2)
        throw std::invalid_argument("candidate_probabilities: entry needs >= 2 candidates");
    std::vector<double> logits;
    logits.reserve(entry.candidates.size());
    double max_logit = -1e300;
    for (const auto& c : entry.candidates) {
        logits.push_back(alpha * c.similarity);
        max_logit = std::max(max_logit, logits.back());
    }
    double sum = 0;
    for (double& l : logits) {
        l = std::exp(l - max_logit);
        sum += l;
    }
    for (double& l : logits) l /= sum;
    return logits;
}

// Core elimination given a bit oracle; exposed so tests can enumerate every
// keyed-bit assignment and compare against an independent simulator.
template <typename BitFn>
inline int run_tournament_core(const std::vector<int>& sampled, int match_size,
                               int rounds, BitFn&& bit_of,
                               std::vector<std::vector<int>>* round_winners = nullptr) {
    std::vector<int> survivors = sampled;
    for (int r = 1; r <= rounds; ++r) {
        std::vector<int> next;
        next.reserve(survivors.size() / static_cast<std::size_t>(match_size));
        for (std::size_t g = 0; g < survivors.size();
             g += static_cast<std::size_t>(match_size)) {
            int best = survivors[g];
            int best_bit = bit_of(best, r);
            for (int j = 1; j < match_size; ++j) {
                int cand = survivors[g + static_cast<std::size_t>(j)];
                int bit = bit_of(cand, r);
                if (bit > best_bit) {
                    best = cand;
                    best_bit = bit;
                }
            }
            next.push_back(best);
        }
        survivors = std::move(next);
        if (round_winners) round_winners->push_back(survivors);
    }
    return survivors.front();
}

// Draws with replacement via inverse CDF; u_i is a pure function of
// (seed, ctx, i), so embedding is replayable without stored RNG state.
inline std::vector<int> sample_candidates(const std::vector<double>& probs,
                                          std::uint64_t count, std::uint64_t seed,
                                          const ContextId& ctx) {
    std::vector<double> cdf(probs.size());
    double acc = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    const std::uint64_t stream = mix64(seed, ctx.seed64());
    std::vector<int> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        double u = u64_to_unit_double(mix64(stream, i));
        int idx = 0;
        while (u >= cdf[static_cast<std::size_t>(idx)] &&
               idx + 1 < static_cast<int>(cdf.size()))
            ++idx;
        out.push_back(idx);
    }
    return out;
}

struct TournamentResult {
    Candidate winner;
    int winner_index = -1;
    TournamentTrace trace;
};

inline TournamentResult run_tournament(const WatermarkKey& key, const ContextId& ctx,
                                       const LookupEntry& entry,
                                       const std::vector<double>& probs,
                                       const SamplingConfig& config) {
    if (probs.size() != entry.candidates.size())
        throw std::invalid_argument("run_tournament: probs/candidates size mismatch");
    const std::uint64_t total = config.total_samples();

    TournamentResult result;
    result.trace.sampled = sample_candidates(probs, total, config.seed, ctx);

    // Bits depend only on (candidate string, round); memoized per entry.
    const std::size_t k = entry.candidates.size();
    std::vector<int> bits(k * static_cast<std::size_t>(config.rounds + 1), -1);
    auto bit_of = [&](int cand, int round) {
        auto& slot = bits[static_cast<std::size_t>(cand) *
                              static_cast<std::size_t>(config.rounds + 1) +
                          static_cast<std::size_t>(round - 1)];
        if (slot < 0)
            slot = prf_bit(key, ctx, entry.candidates[static_cast<std::size_t>(cand)].token,
                           static_cast<std::uint32_t>(round))
                       .value;
        return slot;
    };

    result.winner_index = run_tournament_core(result.trace.sampled, config.match_size,
                                              config.rounds, bit_of,
                                              &result.trace.round_winners);
    result.trace.final_winner = result.winner_index;
    result.winner = entry.candidates[static_cast<std::size_t>(result.winner_index)];
    result.winner.probability = probs[static_cast<std::size_t>(result.winner_index)];
    return result;
}

}  // namespace sealmark
