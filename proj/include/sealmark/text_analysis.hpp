#pragma once

// Tokenization, entity recognition, POS tagging, and selection of the
// watermarkable token set. Offsets are character (code point) offsets into
// the source string; detokenization later rebuilds text from these offsets,
// so whitespace and punctuation survive verbatim.

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sealmark/errors.hpp"
#include "sealmark/lexicon.hpp"
#include "sealmark/unicode.hpp"

namespace sealmark {

struct Token {
    std::string surface;
    std::size_t start = 0;  // character offset, inclusive
    std::size_t end = 0;    // character offset, exclusive
    std::string pos;
    bool entity = false;
    int sentence = 0;
    bool is_word = false;  // alphabetic token (candidate for substitution)
};

struct EntitySpan {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string label;
};

struct SentenceSpan {
    std::size_t start = 0;      // character offsets into source
    std::size_t end = 0;
    std::size_t first_token = 0;
    std::size_t last_token = 0;  // inclusive
};

struct AnalyzedText {
    std::string source;
    std::vector<Token> tokens;
    std::vector<EntitySpan> entity_spans;
    std::vector<std::size_t> watermarkable;  // T^wm, strictly increasing
    std::vector<SentenceSpan> sentences;

    const SentenceSpan& sentence_of(std::size_t token_index) const {
        return sentences[static_cast<std::size_t>(tokens[token_index].sentence)];
    }

    std::string sentence_text(std::size_t token_index) const {
        const auto& s = sentence_of(token_index);
        std::size_t b0 = utf8_byte_offset(source, s.start);
        std::size_t b1 = utf8_byte_offset(source, s.end);
        return source.substr(b0, b1 - b0);
    }
};

// Penn Treebank categories eligible for substitution: common nouns, verbs,
// adjectives, adverbs. Proper nouns, modals, pronouns, determiners, and
// numerals stay out.
inline const std::set<std::string>& default_allowed_pos() {
    static const std::set<std::string> tags = {
        "NN", "NNS", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ",
        "JJ", "JJR", "JJS", "RB", "RBR", "RBS"};
    return tags;
}

class AnalyzerProvider {
public:
    virtual ~AnalyzerProvider() = default;
    virtual std::string name() const = 0;
    virtual std::string fingerprint() const = 0;
    // Must be safe to call concurrently on distinct texts.
    virtual AnalyzedText analyze(const std::string& text) const = 0;
};

namespace detail {

inline bool is_letter(char32_t c) {
    return is_ascii_alpha(c) || c >= 0xC0;  // ASCII letters plus Latin-1 and above
}

inline bool is_space(char32_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == 0xA0;
}

inline bool token_has_digit(std::string_view s) {
    for (char c : s)
        if (c >= '0' && c <= '9') return true;
    return false;
}

inline std::string punct_pos(char32_t c) {
    switch (c) {
        case '.': case '!': case '?': return ".";
        case ',': return ",";
        case ':': case ';': case '-': return ":";
        case '(': case '[': case '{': return "-LRB-";
        case ')': case ']': case '}': return "-RRB-";
        case '"': case '\'': case 0x2018: case 0x2019: case 0x201C: case 0x201D:
            return "''";
        default: return "SYM";
    }
}

inline const std::vector<std::string>& abbreviations() {
    static const std::vector<std::string> abbr = {
        "a.m.", "p.m.", "U.S.", "U.K.", "Mr.", "Mrs.", "Ms.", "Dr.",
        "St.", "Inc.", "Co.", "Ltd.", "Jr.", "Sr."};
    return abbr;
}

}  // namespace detail

// Deterministic rule-based analyzer over the embedded lexicon: a scanner
// tokenizer, capitalization/gazetteer entity rules, dictionary POS tags with
// suffix fallbacks. Stateless, hence safe for concurrent analyze calls.
class RuleAnalyzer final : public AnalyzerProvider {
public:
    std::string name() const override { return "rule-analyzer.v1"; }

    std::string fingerprint() const override {
        return "rule-analyzer.v1+lex:" + Lexicon::instance().fingerprint();
    }

    AnalyzedText analyze(const std::string& text) const override {
        if (trimmed_empty(text))
            throw std::invalid_argument("analyze: text is empty");
        AnalyzedText out;
        out.source = text;
        tokenize(text, out.tokens);
        split_sentences(out.tokens, out.sentences, text);
        recognize_entities(out);
        assign_pos(out);
        return out;
    }

private:
    static bool trimmed_empty(std::string_view text) {
        for (unsigned char c : text)
            if (!detail::is_space(c)) return false;
        return true;
    }

    static void tokenize(const std::string& text, std::vector<Token>& tokens) {
        std::vector<char32_t> cps;
        std::vector<std::size_t> byte_of;  // byte offset of each code point
        std::size_t bi = 0;
        while (bi < text.size()) {
            byte_of.push_back(bi);
            cps.push_back(utf8_decode_at(text, bi));
        }
        byte_of.push_back(text.size());
        const std::size_t n = cps.size();

        auto slice = [&](std::size_t c0, std::size_t c1) {
            return text.substr(byte_of[c0], byte_of[c1] - byte_of[c0]);
        };

        std::size_t i = 0;
        while (i < n) {
            if (detail::is_space(cps[i])) {
                ++i;
                continue;
            }
            std::size_t start = i;
            // known abbreviations consume their trailing period(s)
            bool abbrev = false;
            if (detail::is_letter(cps[i])) {
                for (const auto& a : detail::abbreviations()) {
                    std::size_t alen = a.size();  // abbreviations are ASCII
                    if (start + alen <= n && slice(start, start + alen) == a) {
                        bool left_ok = start == 0 || !detail::is_letter(cps[start - 1]);
                        bool right_ok = start + alen == n ||
                                        !detail::is_letter(cps[start + alen]);
                        if (left_ok && right_ok) {
                            i = start + alen;
                            abbrev = true;
                            break;
                        }
                    }
                }
            }
            Token t;
            if (abbrev) {
                t.is_word = true;
            } else if (detail::is_letter(cps[i])) {
                ++i;
                while (i < n) {
                    if (detail::is_letter(cps[i])) {
                        ++i;
                    } else if ((cps[i] == '\'' || cps[i] == 0x2019 || cps[i] == '-') &&
                               i + 1 < n && detail::is_letter(cps[i + 1])) {
                        i += 2;
                    } else {
                        break;
                    }
                }
                t.is_word = true;
            } else if (is_ascii_digit(cps[i])) {
                ++i;
                while (i < n) {
                    if (is_ascii_digit(cps[i])) {
                        ++i;
                    } else if ((cps[i] == '.' || cps[i] == ',' || cps[i] == ':') &&
                               i + 1 < n && is_ascii_digit(cps[i + 1])) {
                        i += 2;
                    } else if (cps[i] == '%') {
                        ++i;
                        break;
                    } else {
                        break;
                    }
                }
            } else {
                ++i;  // single punctuation character
            }
            t.start = start;
            t.end = i;
            t.surface = slice(start, i);
            tokens.push_back(std::move(t));
        }
    }

    static void split_sentences(std::vector<Token>& tokens,
                                std::vector<SentenceSpan>& sentences,
                                const std::string& /*text*/) {
        std::size_t first = 0;
        int sent = 0;
        auto close = [&](std::size_t last) {
            SentenceSpan s;
            s.first_token = first;
            s.last_token = last;
            s.start = tokens[first].start;
            s.end = tokens[last].end;
            sentences.push_back(s);
            for (std::size_t k = first; k <= last; ++k) tokens[k].sentence = sent;
            ++sent;
            first = last + 1;
        };
        for (std::size_t k = 0; k < tokens.size(); ++k) {
            const auto& t = tokens[k];
            bool end_punct = !t.is_word &&
                             (t.surface == "." || t.surface == "!" || t.surface == "?");
            if (end_punct) {
                bool boundary = true;
                if (k + 1 < tokens.size()) {
                    char32_t c0 = utf8_decode(tokens[k + 1].surface).front();
                    boundary = is_ascii_upper(c0) || is_ascii_digit(c0) ||
                               c0 == '"' || c0 == 0x201C || c0 == '\'';
                }
                if (boundary) close(k);
            }
        }
        if (first < tokens.size()) close(tokens.size() - 1);
    }

    static void recognize_entities(AnalyzedText& at) {
        const auto& lex = Lexicon::instance();
        const std::size_t n = at.tokens.size();
        std::vector<bool> flagged(n, false);
        std::vector<std::string> label(n);

        for (std::size_t k = 0; k < n; ++k) {
            const Token& t = at.tokens[k];
            if (detail::token_has_digit(t.surface)) {
                flagged[k] = true;
                label[k] = t.surface.find(':') != std::string::npos ? "TIME" : "NUM";
                continue;
            }
            if (!t.is_word) continue;
            std::string lower = to_lower_ascii(t.surface);
            if (lower == "a.m." || lower == "p.m.") {
                // time marker: entity only when it follows a numeric token
                if (k > 0 && flagged[k - 1] && label[k - 1] == "TIME") {
                    flagged[k] = true;
                    label[k] = "TIME";
                }
                continue;
            }
            char32_t c0 = utf8_decode(t.surface).front();
            if (!is_ascii_upper(c0)) continue;
            if (lex.is_function_word(t.surface) &&
                detect_case_pattern(t.surface) == CasePattern::TitleCase)
                continue;  // sentence-initial "The", "A", ...
            bool allcaps =
                detect_case_pattern(t.surface) == CasePattern::AllCaps &&
                t.surface.size() >= 2;
            bool sentence_initial =
                k == at.sentences[static_cast<std::size_t>(t.sentence)].first_token;
            bool known_proper = lex.in_gazetteer(t.surface);
            bool known_common = lex.contains(t.surface);
            if (allcaps) {
                flagged[k] = true;
                label[k] = "ORG";
            } else if (known_proper) {
                flagged[k] = true;
                label[k] = "PROPN";
            } else if (!sentence_initial) {
                flagged[k] = true;
                label[k] = "PROPN";
            } else if (!known_common) {
                // unknown capitalized sentence opener: treated as proper
                flagged[k] = true;
                label[k] = "PROPN";
            }
        }

        // honorifics attach to a following proper noun
        for (std::size_t k = 0; k + 1 < n; ++k) {
            std::string lower = to_lower_ascii(at.tokens[k].surface);
            if ((lower == "mr." || lower == "mrs." || lower == "ms." ||
                 lower == "dr." || lower == "st.") &&
                flagged[k + 1]) {
                flagged[k] = true;
                label[k] = label[k + 1];
            }
        }

        // merge adjacent flagged tokens (same sentence) into spans
        std::size_t k = 0;
        while (k < n) {
            if (!flagged[k]) {
                ++k;
                continue;
            }
            std::size_t j = k;
            while (j + 1 < n && flagged[j + 1] &&
                   at.tokens[j + 1].sentence == at.tokens[k].sentence)
                ++j;
            EntitySpan span;
            span.start = at.tokens[k].start;
            span.end = at.tokens[j].end;
            bool all_num = true, any_org = false, any_time = false;
            for (std::size_t q = k; q <= j; ++q) {
                if (label[q] != "NUM" && label[q] != "TIME") all_num = false;
                if (label[q] == "ORG") any_org = true;
                if (label[q] == "TIME") any_time = true;
                at.tokens[q].entity = true;
            }
            span.label = all_num ? (any_time ? "TIME" : "NUM")
                                 : (any_org ? "ORG" : "PROPN");
            at.entity_spans.push_back(span);
            k = j + 1;
        }
    }

    static void assign_pos(AnalyzedText& at) {
        const auto& lex = Lexicon::instance();
        for (Token& t : at.tokens) {
            if (!t.is_word) {
                if (detail::token_has_digit(t.surface)) {
                    t.pos = "CD";
                } else {
                    t.pos = detail::punct_pos(utf8_decode(t.surface).front());
                }
                continue;
            }
            if (detail::token_has_digit(t.surface)) {
                t.pos = "CD";
                continue;
            }
            if (t.entity) {
                t.pos = "NNP";
                continue;
            }
            std::string tag = lex.function_tag(t.surface);
            if (tag.empty()) tag = lex.content_tag(t.surface);
            if (tag.empty()) {
                char32_t c0 = utf8_decode(t.surface).front();
                if (is_ascii_upper(c0)) {
                    tag = "NNP";
                } else {
                    tag = suffix_tag(to_lower_ascii(t.surface));
                }
            }
            t.pos = tag;
        }
    }

    static std::string suffix_tag(const std::string& w) {
        auto ends = [&](std::string_view suf) {
            return w.size() > suf.size() &&
                   w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
        };
        if (ends("ly")) return "RB";
        if (ends("ing")) return "VBG";
        if (ends("ed")) return "VBD";
        if (ends("est")) return "JJS";
        if (ends("tion") || ends("ment") || ends("ness") || ends("ity") ||
            ends("ance") || ends("ence"))
            return "NN";
        if (ends("s")) return "NNS";
        return "NN";
    }
};

// Fills T^wm: non-entity word tokens whose tag is in allowed_pos. Idempotent.
inline AnalyzedText select_watermarkable(AnalyzedText analyzed,
                                         const std::set<std::string>& allowed_pos =
                                             default_allowed_pos()) {
    analyzed.watermarkable.clear();
    for (std::size_t i = 0; i < analyzed.tokens.size(); ++i) {
        const Token& t = analyzed.tokens[i];
        if (t.is_word && !t.entity && allowed_pos.count(t.pos))
            analyzed.watermarkable.push_back(i);
    }
    return analyzed;
}

inline nlohmann::ordered_json analyzed_to_json(const AnalyzedText& at) {
    nlohmann::ordered_json doc;
    doc["source"] = at.source;
    doc["tokens"] = nlohmann::ordered_json::array();
    for (const auto& t : at.tokens) {
        nlohmann::ordered_json tok;
        tok["surface"] = t.surface;
        tok["start"] = t.start;
        tok["end"] = t.end;
        tok["pos"] = t.pos;
        tok["entity"] = t.entity;
        doc["tokens"].push_back(tok);
    }
    doc["entity_spans"] = nlohmann::ordered_json::array();
    for (const auto& s : at.entity_spans) {
        nlohmann::ordered_json span;
        span["start"] = s.start;
        span["end"] = s.end;
        span["label"] = s.label;
        doc["entity_spans"].push_back(span);
    }
    doc["watermarkable"] = at.watermarkable;
    return doc;
}

// Rebuilds an AnalyzedText from its JSON form. Sentence structure and word
// flags are recomputed from the source, which is deterministic.
inline AnalyzedText analyzed_from_json(const nlohmann::json& doc) {
    AnalyzedText at;
    at.source = doc.at("source").get<std::string>();
    for (const auto& tok : doc.at("tokens")) {
        Token t;
        t.surface = tok.at("surface").get<std::string>();
        t.start = tok.at("start").get<std::size_t>();
        t.end = tok.at("end").get<std::size_t>();
        t.pos = tok.at("pos").get<std::string>();
        t.entity = tok.at("entity").get<bool>();
        char32_t c0 = t.surface.empty() ? U' ' : utf8_decode(t.surface).front();
        t.is_word = detail::is_letter(c0);
        at.tokens.push_back(std::move(t));
    }
    for (const auto& span : doc.at("entity_spans")) {
        EntitySpan s;
        s.start = span.at("start").get<std::size_t>();
        s.end = span.at("end").get<std::size_t>();
        s.label = span.at("label").get<std::string>();
        at.entity_spans.push_back(std::move(s));
    }
    at.watermarkable = doc.at("watermarkable").get<std::vector<std::size_t>>();
    // sentence segmentation is a pure function of the token stream
    std::size_t first = 0;
    int sent = 0;
    for (std::size_t k = 0; k < at.tokens.size(); ++k) {
        const auto& t = at.tokens[k];
        bool end_punct = !t.is_word &&
                         (t.surface == "." || t.surface == "!" || t.surface == "?");
        bool boundary = end_punct;
        if (end_punct && k + 1 < at.tokens.size()) {
            char32_t c0 = utf8_decode(at.tokens[k + 1].surface).front();
            boundary = is_ascii_upper(c0) || is_ascii_digit(c0) || c0 == '"' ||
                       c0 == 0x201C || c0 == '\'';
        }
        if (boundary || k + 1 == at.tokens.size()) {
            SentenceSpan s;
            s.first_token = first;
            s.last_token = k;
            s.start = at.tokens[first].start;
            s.end = at.tokens[k].end;
            at.sentences.push_back(s);
            for (std::size_t q = first; q <= k; ++q) at.tokens[q].sentence = sent;
            ++sent;
            first = k + 1;
        }
    }
    return at;
}

}  // namespace sealmark
