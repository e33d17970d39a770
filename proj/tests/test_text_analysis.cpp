#include <catch2/catch_amalgamated.hpp>

#include <future>
#include <string>

#include "sealmark/text_analysis.hpp"

using namespace sealmark;

namespace {
const RuleAnalyzer& analyzer() {
    static RuleAnalyzer a;
    return a;
}

const Token* find_token(const AnalyzedText& at, const std::string& surface) {
    for (const auto& t : at.tokens)
        if (t.surface == surface) return &t;
    return nullptr;
}
}  // namespace

TEST_CASE("analyze rejects empty and whitespace-only input") {
    CHECK_THROWS_AS(analyzer().analyze(""), std::invalid_argument);
    CHECK_THROWS_AS(analyzer().analyze("   \n\t "), std::invalid_argument);
}

TEST_CASE("single word, no entities") {
    AnalyzedText at = analyzer().analyze("hello");
    REQUIRE(at.tokens.size() == 1);
    CHECK(at.tokens[0].surface == "hello");
    CHECK(at.entity_spans.empty());
    CHECK(at.watermarkable.empty());  // analyze leaves T^wm empty
}

TEST_CASE("tokens carry exact character offsets") {
    std::string text = "QVC decided to act.";
    AnalyzedText at = analyzer().analyze(text);
    for (const auto& t : at.tokens) {
        CHECK(t.start < t.end);
        CHECK(text.substr(t.start, t.end - t.start) == t.surface);
    }
}

TEST_CASE("golden analysis: QVC decided to act.") {
    AnalyzedText at = analyzer().analyze("QVC decided to act.");
    const Token* qvc = find_token(at, "QVC");
    REQUIRE(qvc != nullptr);
    CHECK(qvc->entity);
    CHECK(qvc->pos == "NNP");
    REQUIRE(!at.entity_spans.empty());
    CHECK(at.entity_spans[0].label == "ORG");

    const Token* decided = find_token(at, "decided");
    REQUIRE(decided != nullptr);
    CHECK(decided->pos == "VBD");
    CHECK_FALSE(decided->entity);
}

TEST_CASE("select_watermarkable applies POS set and entity exclusion") {
    AnalyzedText at =
        select_watermarkable(analyzer().analyze("She runs quickly"));
    REQUIRE(at.watermarkable.size() == 2);
    CHECK(at.tokens[at.watermarkable[0]].surface == "runs");
    CHECK(at.tokens[at.watermarkable[0]].pos == "VBZ");
    CHECK(at.tokens[at.watermarkable[1]].surface == "quickly");
    CHECK(at.tokens[at.watermarkable[1]].pos == "RB");
}

TEST_CASE("proper nouns are excluded regardless of entity flag") {
    AnalyzedText at = select_watermarkable(
        analyzer().analyze("James visited the store in Chicago."));
    for (std::size_t i : at.watermarkable) {
        CHECK(at.tokens[i].pos != "NNP");
        CHECK_FALSE(at.tokens[i].entity);
    }
    const Token* james = find_token(at, "James");
    REQUIRE(james != nullptr);
    CHECK(james->entity);
}

TEST_CASE("numbers, times, and capitalized sequences become entity spans") {
    std::string text =
        "QVC start its Black Friday sales at 12:01 a.m. Thanksgiving Day, and "
        "James offered a marathon of deals.";
    AnalyzedText at = analyzer().analyze(text);
    auto span_surface = [&](const EntitySpan& s) {
        return text.substr(s.start, s.end - s.start);
    };
    std::vector<std::string> surfaces;
    for (const auto& s : at.entity_spans) surfaces.push_back(span_surface(s));
    CHECK(std::find(surfaces.begin(), surfaces.end(), "QVC") != surfaces.end());
    CHECK(std::find(surfaces.begin(), surfaces.end(), "Black Friday") !=
          surfaces.end());
    CHECK(std::find(surfaces.begin(), surfaces.end(), "12:01 a.m. Thanksgiving Day") !=
          surfaces.end());
    CHECK(std::find(surfaces.begin(), surfaces.end(), "James") != surfaces.end());
    // "deals" and "marathon" stay substitutable
    const Token* deals = find_token(at, "deals");
    REQUIRE(deals != nullptr);
    CHECK_FALSE(deals->entity);
    CHECK(deals->pos == "NNS");
}

TEST_CASE("entity spans are in bounds and non-overlapping") {
    std::string text = "Barack Obama met Dr. Smith in Washington on Friday, 2008.";
    AnalyzedText at = analyzer().analyze(text);
    std::size_t prev_end = 0;
    for (const auto& s : at.entity_spans) {
        CHECK(s.start >= prev_end);
        CHECK(s.start < s.end);
        CHECK(s.end <= text.size());
        prev_end = s.end;
    }
}

TEST_CASE("sentence-initial lexicon words are not entities") {
    AnalyzedText at = analyzer().analyze("Quickly the team decided. Decided fast.");
    const Token* q = find_token(at, "Quickly");
    REQUIRE(q != nullptr);
    CHECK_FALSE(q->entity);
    CHECK(q->pos == "RB");
}

TEST_CASE("select_watermarkable is idempotent and strictly increasing") {
    AnalyzedText at = select_watermarkable(analyzer().analyze(
        "The committee decided to launch the project quickly."));
    AnalyzedText again = select_watermarkable(at);
    CHECK(at.watermarkable == again.watermarkable);
    for (std::size_t i = 1; i < at.watermarkable.size(); ++i)
        CHECK(at.watermarkable[i - 1] < at.watermarkable[i]);
}

TEST_CASE("analysis JSON round trip preserves tokens, spans, and T^wm") {
    AnalyzedText at = select_watermarkable(analyzer().analyze(
        "James said the new plan would improve the business greatly."));
    nlohmann::ordered_json doc = analyzed_to_json(at);
    AnalyzedText back = analyzed_from_json(doc);
    CHECK(back.source == at.source);
    REQUIRE(back.tokens.size() == at.tokens.size());
    for (std::size_t i = 0; i < at.tokens.size(); ++i) {
        CHECK(back.tokens[i].surface == at.tokens[i].surface);
        CHECK(back.tokens[i].pos == at.tokens[i].pos);
        CHECK(back.tokens[i].entity == at.tokens[i].entity);
        CHECK(back.tokens[i].sentence == at.tokens[i].sentence);
    }
    CHECK(back.watermarkable == at.watermarkable);
    CHECK(back.sentences.size() == at.sentences.size());
}

TEST_CASE("sentence splitting survives abbreviations and decimals") {
    AnalyzedText at = analyzer().analyze(
        "The index fell 0.8 percent at 12:01 a.m. on Friday. Trading resumed.");
    CHECK(at.sentences.size() == 2);
    AnalyzedText at2 = analyzer().analyze("Dr. Smith arrived. He left.");
    CHECK(at2.sentences.size() == 2);
}

TEST_CASE("analyze is safe to run concurrently on distinct texts") {
    std::vector<std::string> texts;
    for (int i = 0; i < 32; ++i)
        texts.push_back("James said the plan " + std::to_string(i) +
                        " would improve the business greatly.");
    std::vector<AnalyzedText> serial;
    for (const auto& t : texts) serial.push_back(analyzer().analyze(t));
    std::vector<AnalyzedText> parallel(texts.size());
    std::vector<std::future<void>> futs;
    for (std::size_t i = 0; i < texts.size(); ++i)
        futs.push_back(std::async(std::launch::async, [&, i] {
            parallel[i] = analyzer().analyze(texts[i]);
        }));
    for (auto& f : futs) f.get();
    for (std::size_t i = 0; i < texts.size(); ++i) {
        REQUIRE(parallel[i].tokens.size() == serial[i].tokens.size());
        for (std::size_t k = 0; k < serial[i].tokens.size(); ++k)
            CHECK(parallel[i].tokens[k].pos == serial[i].tokens[k].pos);
    }
}
