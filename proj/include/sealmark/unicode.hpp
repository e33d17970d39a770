#pragma once

// UTF-8 decoding, character-offset bookkeeping, and a Latin-subset NFC
// composition used to canonicalize strings before they are hashed. Offsets
// throughout the library are Unicode code-point indices, not byte indices.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sealmark {

// Decodes one code point starting at byte i; advances i. Invalid sequences
// decode as U+FFFD one byte at a time, so offsets stay monotone.
inline char32_t utf8_decode_at(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](std::size_t k) {
        return i + k < s.size() &&
               (static_cast<unsigned char>(s[i + k]) & 0xc0) == 0x80;
    };
    if ((b0 & 0xe0) == 0xc0 && cont(1)) {
        char32_t cp = (char32_t(b0 & 0x1f) << 6) |
                      (static_cast<unsigned char>(s[i + 1]) & 0x3f);
        i += 2;
        return cp;
    }
    if ((b0 & 0xf0) == 0xe0 && cont(1) && cont(2)) {
        char32_t cp = (char32_t(b0 & 0x0f) << 12) |
                      (char32_t(static_cast<unsigned char>(s[i + 1]) & 0x3f) << 6) |
                      (static_cast<unsigned char>(s[i + 2]) & 0x3f);
        i += 3;
        return cp;
    }
    if ((b0 & 0xf8) == 0xf0 && cont(1) && cont(2) && cont(3)) {
        char32_t cp = (char32_t(b0 & 0x07) << 18) |
                      (char32_t(static_cast<unsigned char>(s[i + 1]) & 0x3f) << 12) |
                      (char32_t(static_cast<unsigned char>(s[i + 2]) & 0x3f) << 6) |
                      (static_cast<unsigned char>(s[i + 3]) & 0x3f);
        i += 4;
        return cp;
    }
    ++i;
    return 0xFFFD;
}

inline void utf8_append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

inline std::vector<char32_t> utf8_decode(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) out.push_back(utf8_decode_at(s, i));
    return out;
}

inline std::size_t utf8_length(std::string_view s) {
    std::size_t i = 0, n = 0;
    while (i < s.size()) {
        utf8_decode_at(s, i);
        ++n;
    }
    return n;
}

// Byte offset of the code point at char_index. char_index may equal the
// string's length in characters (returns s.size()).
inline std::size_t utf8_byte_offset(std::string_view s, std::size_t char_index) {
    std::size_t i = 0, n = 0;
    while (i < s.size() && n < char_index) {
        utf8_decode_at(s, i);
        ++n;
    }
    return i;
}

namespace detail {

// NFC composition for the Latin repertoire: ASCII base letters combined with
// the common combining diacritics (U+0300..U+0327). Full Unicode composition
// tables are out of scope; this covers the scripts the shipped providers
// handle and keeps digests stable across composed/decomposed inputs.
inline char32_t compose_latin(char32_t base, char32_t mark) {
    struct Entry {
        char32_t base, mark, composed;
    };
    static const Entry table[] = {
        {'A', 0x300, 0xC0}, {'A', 0x301, 0xC1}, {'A', 0x302, 0xC2},
        {'A', 0x303, 0xC3}, {'A', 0x308, 0xC4}, {'A', 0x30A, 0xC5},
        {'C', 0x327, 0xC7}, {'E', 0x300, 0xC8}, {'E', 0x301, 0xC9},
        {'E', 0x302, 0xCA}, {'E', 0x308, 0xCB}, {'I', 0x300, 0xCC},
        {'I', 0x301, 0xCD}, {'I', 0x302, 0xCE}, {'I', 0x308, 0xCF},
        {'N', 0x303, 0xD1}, {'O', 0x300, 0xD2}, {'O', 0x301, 0xD3},
        {'O', 0x302, 0xD4}, {'O', 0x303, 0xD5}, {'O', 0x308, 0xD6},
        {'U', 0x300, 0xD9}, {'U', 0x301, 0xDA}, {'U', 0x302, 0xDB},
        {'U', 0x308, 0xDC}, {'Y', 0x301, 0xDD},
        {'a', 0x300, 0xE0}, {'a', 0x301, 0xE1}, {'a', 0x302, 0xE2},
        {'a', 0x303, 0xE3}, {'a', 0x308, 0xE4}, {'a', 0x30A, 0xE5},
        {'c', 0x327, 0xE7}, {'e', 0x300, 0xE8}, {'e', 0x301, 0xE9},
        {'e', 0x302, 0xEA}, {'e', 0x308, 0xEB}, {'i', 0x300, 0xEC},
        {'i', 0x301, 0xED}, {'i', 0x302, 0xEE}, {'i', 0x308, 0xEF},
        {'n', 0x303, 0xF1}, {'o', 0x300, 0xF2}, {'o', 0x301, 0xF3},
        {'o', 0x302, 0xF4}, {'o', 0x303, 0xF5}, {'o', 0x308, 0xF6},
        {'u', 0x300, 0xF9}, {'u', 0x301, 0xFA}, {'u', 0x302, 0xFB},
        {'u', 0x308, 0xFC}, {'y', 0x301, 0xFD}, {'y', 0x308, 0xFF},
    };
    for (const auto& e : table)
        if (e.base == base && e.mark == mark) return e.composed;
    return 0;
}

}  // namespace detail

// Canonical form used before byte-encoding strings into the PRF. ASCII input
// passes through untouched on a fast path.
inline std::string nfc_normalize(std::string_view s) {
    bool ascii = true;
    for (unsigned char c : s)
        if (c >= 0x80) {
            ascii = false;
            break;
        }
    if (ascii) return std::string(s);

    std::vector<char32_t> cps = utf8_decode(s);
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < cps.size(); ++i) {
        char32_t cp = cps[i];
        while (i + 1 < cps.size()) {
            char32_t composed = detail::compose_latin(cp, cps[i + 1]);
            if (composed == 0) break;
            cp = composed;
            ++i;
        }
        utf8_append(out, cp);
    }
    return out;
}

inline bool is_ascii_alpha(char32_t c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

inline bool is_ascii_digit(char32_t c) { return c >= '0' && c <= '9'; }

inline bool is_ascii_upper(char32_t c) { return c >= 'A' && c <= 'Z'; }

inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline char ascii_upper(char c) {
    return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
}

inline std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = ascii_lower(c);
    return out;
}

enum class CasePattern { Lower, TitleCase, AllCaps, Mixed };

inline CasePattern detect_case_pattern(std::string_view word) {
    bool any_alpha = false, all_upper = true, all_lower = true;
    bool first_upper = false, rest_lower = true, first = true;
    for (char c : word) {
        if (!is_ascii_alpha(static_cast<unsigned char>(c))) continue;
        any_alpha = true;
        bool upper = is_ascii_upper(static_cast<unsigned char>(c));
        all_upper &= upper;
        all_lower &= !upper;
        if (first) {
            first_upper = upper;
            first = false;
        } else {
            rest_lower &= !upper;
        }
    }
    if (!any_alpha) return CasePattern::Lower;
    if (all_lower) return CasePattern::Lower;
    if (all_upper) return CasePattern::AllCaps;
    if (first_upper && rest_lower) return CasePattern::TitleCase;
    return CasePattern::Mixed;
}

// Substituted candidates adopt the original token's capitalization so a
// sentence-initial or all-caps original never yields a lowercase replacement.
inline std::string apply_case_pattern(std::string_view candidate, CasePattern pattern) {
    std::string out(candidate);
    switch (pattern) {
        case CasePattern::Lower:
        case CasePattern::Mixed:
            break;
        case CasePattern::TitleCase:
            for (char& c : out)
                if (is_ascii_alpha(static_cast<unsigned char>(c))) {
                    c = ascii_upper(c);
                    break;
                }
            break;
        case CasePattern::AllCaps:
            for (char& c : out) c = ascii_upper(c);
            break;
    }
    return out;
}

}  // namespace sealmark
