#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "sealmark/lookup_table.hpp"
#include "sealmark/similarity.hpp"
#include "sealmark/text_analysis.hpp"

using namespace sealmark;

namespace {

AnalyzedText analyzed_of(const std::string& text) {
    static RuleAnalyzer analyzer;
    return select_watermarkable(analyzer.analyze(text));
}

std::size_t index_of(const AnalyzedText& at, const std::string& surface) {
    for (std::size_t i = 0; i < at.tokens.size(); ++i)
        if (at.tokens[i].surface == surface) return i;
    FAIL("token not found: " << surface);
    return 0;
}

// Scripted similarity scores keyed by candidate token; everything else 1.0.
class ScriptedSimilarity final : public SimilarityProvider {
public:
    explicit ScriptedSimilarity(std::map<std::string, double> by_candidate)
        : by_candidate_(std::move(by_candidate)) {}
    std::string name() const override { return "scripted"; }
    std::string fingerprint() const override { return "scripted"; }
    double similarity(const std::string& a, const std::string& b) const override {
        if (a == b) return 1.0;
        for (const auto& [needle, score] : by_candidate_)
            if (b.find(needle) != std::string::npos ||
                a.find(needle) != std::string::npos)
                return score;
        return 1.0;
    }

private:
    std::map<std::string, double> by_candidate_;
};

class FailingCandidates final : public CandidateProvider {
public:
    std::string name() const override { return "failing"; }
    std::string fingerprint() const override { return "failing"; }
    std::vector<std::string> generate(const MaskedQuery&, int) const override {
        throw ProviderError("candidates", "backend unavailable");
    }
};

}  // namespace

TEST_CASE("masked query composes C [SEP] C_M with a single mask") {
    AnalyzedText at = analyzed_of("a deal c");
    std::size_t ti = index_of(at, "deal");
    MaskedQuery q = build_masked_query(at, ti, 200);
    CHECK(q.context == "a deal c");
    CHECK(q.masked_context == "a [MASK] c");
    CHECK(q.composed == "a deal c [SEP] a [MASK] c");
    CHECK(q.original_surface == "deal");
    // exactly one separator and one mask
    CHECK(q.composed.find("[SEP]") == q.composed.rfind("[SEP]"));
    CHECK(q.composed.find("[MASK]") == q.composed.rfind("[MASK]"));
}

TEST_CASE("masked query clips at text boundaries without padding") {
    AnalyzedText at = analyzed_of("deal was struck here");
    std::size_t ti = index_of(at, "deal");
    MaskedQuery q = build_masked_query(at, ti, 200);
    CHECK(q.context.rfind("deal", 0) == 0);  // window starts at text start
}

TEST_CASE("masked query window arithmetic on long text") {
    std::string text;
    for (int i = 0; i < 500; ++i) text += "pad ";
    text += "deal";
    for (int i = 0; i < 10; ++i) text += " tail";
    AnalyzedText at = analyzed_of(text);
    std::size_t ti = index_of(at, "deal");
    MaskedQuery q = build_masked_query(at, ti, 200);
    // |C| = 200 tokens, containing the target
    std::size_t words = 1;
    for (char c : q.context)
        if (c == ' ') ++words;
    CHECK(words == 200);
    CHECK(q.masked_context.find("[MASK]") != std::string::npos);
}

TEST_CASE("masked query rejects non-watermarkable tokens") {
    AnalyzedText at = analyzed_of("the deal closed");
    std::size_t the_idx = index_of(at, "the");
    CHECK_THROWS_AS(build_masked_query(at, the_idx, 200), std::invalid_argument);
}

TEST_CASE("lexicon candidate provider returns group mates in fixed order") {
    AnalyzedText at = analyzed_of("QVC decided to act.");
    MaskedQuery q = build_masked_query(at, index_of(at, "decided"), 200);
    LexiconCandidateProvider provider;
    auto cands = generate_candidates(provider, q, 16);
    CHECK(cands == std::vector<std::string>{"agreed", "resolved", "settled"});
    CHECK_THROWS_AS(generate_candidates(provider, q, 1), std::invalid_argument);
}

TEST_CASE("unknown words yield an empty candidate list") {
    AnalyzedText at = analyzed_of("they frobnicated wildly");
    // "frobnicated" suffix-tags as VBD and is watermarkable but not in lexicon
    MaskedQuery q = build_masked_query(at, index_of(at, "frobnicated"), 200);
    LexiconCandidateProvider provider;
    CHECK(generate_candidates(provider, q, 8).empty());
}

TEST_CASE("filter removes duplicates, fragments, antonyms, and POS mismatches") {
    Token sales;
    sales.surface = "sales";
    sales.pos = "NNS";
    // "sales" equals the original; "sale" is NN, not NNS
    CHECK(filter_candidates({"sale", "sale", "sales"}, sales).empty());

    Token rose;
    rose.surface = "rose";
    rose.pos = "VBD";
    auto out = filter_candidates({"##ing", "fell", "climbed", "jumped", "Climbed"}, rose);
    // "fell" is an antonym of "rose"; "##ing" is a fragment; "Climbed" is a
    // case-insensitive duplicate
    CHECK(out == std::vector<std::string>{"climbed", "jumped"});

    Token quick;
    quick.surface = "quick";
    quick.pos = "JJ";
    auto out2 = filter_candidates({"qwzx", "fast", "rapid", "run4"}, quick);
    // "qwzx" absent from the lexicon, "run4" non-alphabetic
    CHECK(out2 == std::vector<std::string>{"fast", "rapid"});
}

TEST_CASE("score_and_select keeps candidates above delta, sorted descending") {
    AnalyzedText at = analyzed_of("the market decided to move ahead");
    std::size_t ti = index_of(at, "decided");
    ScriptedSimilarity sim({{"agreed", 0.95}, {"resolved", 0.93}, {"settled", 0.90}});
    auto entry = score_and_select(at, ti, {"agreed", "resolved", "settled"}, sim, 0.92);
    REQUIRE(entry.has_value());
    REQUIRE(entry->candidates.size() == 2);
    CHECK(entry->candidates[0].token == "agreed");
    CHECK(entry->candidates[0].similarity == 0.95);
    CHECK(entry->candidates[1].token == "resolved");

    // single survivor -> skip
    ScriptedSimilarity sim_one({{"agreed", 0.95}, {"resolved", 0.80}, {"settled", 0.80}});
    CHECK_FALSE(
        score_and_select(at, ti, {"agreed", "resolved", "settled"}, sim_one, 0.92)
            .has_value());

    // nothing above threshold -> skip
    ScriptedSimilarity sim_none({{"agreed", 0.5}, {"resolved", 0.5}, {"settled", 0.5}});
    CHECK_FALSE(
        score_and_select(at, ti, {"agreed", "resolved", "settled"}, sim_none, 0.92)
            .has_value());

    CHECK_THROWS_AS(score_and_select(at, ti, {"agreed", "resolved"}, sim, 1.5),
                    std::invalid_argument);
}

TEST_CASE("candidates adopt the original token's capitalization") {
    AnalyzedText at = analyzed_of("Decided actions follow quickly.");
    std::size_t ti = index_of(at, "Decided");
    GroupEmbeddingSimilarity sim;
    auto entry = score_and_select(at, ti, {"agreed", "resolved", "settled"}, sim, 0.5);
    REQUIRE(entry.has_value());
    for (const auto& c : entry->candidates) {
        CHECK(is_ascii_upper(static_cast<char32_t>(c.token[0])));
    }
}

TEST_CASE("empty T^wm builds an empty table") {
    AnalyzedText at = analyzed_of("Barack Obama, 2008.");
    CHECK(at.watermarkable.empty());
    LexiconCandidateProvider cands;
    GroupEmbeddingSimilarity sim;
    LookupBuildOptions opt;
    auto built = build_lookup_table(at, cands, sim, opt);
    CHECK(built.table.entries.empty());
}

TEST_CASE("provider failure skips tokens with a warning") {
    AnalyzedText at = analyzed_of("the market decided to move");
    FailingCandidates cands;
    GroupEmbeddingSimilarity sim;
    LookupBuildOptions opt;
    auto built = build_lookup_table(at, cands, sim, opt);
    CHECK(built.table.entries.empty());
    CHECK(!built.skipped.empty());
    CHECK(!built.warnings.empty());
    for (const auto& [ti, reason] : built.skipped) CHECK(reason == "provider_error");
}

TEST_CASE("table invariants: >=2 candidates, min similarity >= delta, no self") {
    AnalyzedText at = analyzed_of(
        "James said the new plan would improve the business greatly after the "
        "meeting, and customers bought products quickly during the big sale.");
    LexiconCandidateProvider cands;
    GroupEmbeddingSimilarity sim;
    LookupBuildOptions opt;
    opt.delta = 0.90;
    auto built = build_lookup_table(at, cands, sim, opt);
    REQUIRE(!built.table.entries.empty());
    for (const auto& [ti, entry] : built.table.entries) {
        CHECK(entry.candidates.size() >= 2);
        for (const auto& c : entry.candidates) {
            CHECK(c.similarity >= opt.delta);
            CHECK(to_lower_ascii(c.token) != to_lower_ascii(entry.original));
        }
        for (std::size_t i = 1; i < entry.candidates.size(); ++i)
            CHECK(entry.candidates[i - 1].similarity >= entry.candidates[i].similarity);
        CHECK(std::find(at.watermarkable.begin(), at.watermarkable.end(), ti) !=
              at.watermarkable.end());
    }
}

TEST_CASE("raising delta never adds entries or candidates") {
    std::vector<std::string> corpus = {
        "James said the new plan would improve the business greatly.",
        "The committee decided to launch the project quickly after the meeting.",
        "Customers bought products during the big sale and saved money.",
        "The market rose sharply while prices fell at stores downtown.",
        "Workers finished the important project and celebrated the result.",
    };
    LexiconCandidateProvider cands;
    GroupEmbeddingSimilarity sim;
    for (const auto& text : corpus) {
        AnalyzedText at = analyzed_of(text);
        std::map<double, LookupTable> tables;
        for (double delta : {0.90, 0.92, 0.95}) {
            LookupBuildOptions opt;
            opt.delta = delta;
            tables[delta] = build_lookup_table(at, cands, sim, opt).table;
        }
        CHECK(tables[0.90].entries.size() >= tables[0.92].entries.size());
        CHECK(tables[0.92].entries.size() >= tables[0.95].entries.size());
        CHECK(tables[0.90].total_candidates() >= tables[0.92].total_candidates());
        CHECK(tables[0.92].total_candidates() >= tables[0.95].total_candidates());
        // entries at higher delta are subsets of lower-delta entries
        for (const auto& [ti, hi] : tables[0.95].entries) {
            REQUIRE(tables[0.92].entries.count(ti) == 1);
            CHECK(tables[0.92].entries.at(ti).candidates.size() >= hi.candidates.size());
        }
    }
}

TEST_CASE("rebuilding the table is byte-identical after serialization") {
    AnalyzedText at = analyzed_of(
        "The committee decided to launch the big project quickly after the meeting.");
    LexiconCandidateProvider cands;
    GroupEmbeddingSimilarity sim;
    LookupBuildOptions opt;
    auto a = build_lookup_table(at, cands, sim, opt);
    auto b = build_lookup_table(at, cands, sim, opt);
    CHECK(table_to_json(a.table).dump() == table_to_json(b.table).dump());

    LookupTable round = table_from_json(table_to_json(a.table));
    CHECK(table_to_json(round).dump() == table_to_json(a.table).dump());
}
