#include "plate.hpp"

#include "error.hpp"

namespace leakaudit {

namespace utf8 {

std::vector<char32_t> decode(std::string_view text) {
    std::vector<char32_t> out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const auto lead = static_cast<unsigned char>(text[i]);
        int extra = 0;
        char32_t cp = 0;
        if (lead < 0x80) {
            cp = lead;
        } else if ((lead & 0xE0) == 0xC0) {
            extra = 1;
            cp = lead & 0x1F;
        } else if ((lead & 0xF0) == 0xE0) {
            extra = 2;
            cp = lead & 0x0F;
        } else if ((lead & 0xF8) == 0xF0) {
            extra = 3;
            cp = lead & 0x07;
        } else {
            throw Error(ErrorCode::Parse, "invalid UTF-8 lead byte at offset " + std::to_string(i));
        }
        if (i + static_cast<std::size_t>(extra) >= text.size() && extra > 0)
            throw Error(ErrorCode::Parse, "truncated UTF-8 sequence at offset " + std::to_string(i));
        for (int k = 1; k <= extra; ++k) {
            const auto cont = static_cast<unsigned char>(text[i + k]);
            if ((cont & 0xC0) != 0x80)
                throw Error(ErrorCode::Parse, "invalid UTF-8 continuation at offset " + std::to_string(i + k));
            cp = (cp << 6) | (cont & 0x3F);
        }
        static constexpr char32_t min_for_len[] = {0, 0x80, 0x800, 0x10000};
        if (cp < min_for_len[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            throw Error(ErrorCode::Parse, "invalid UTF-8 code point at offset " + std::to_string(i));
        out.push_back(cp);
        i += static_cast<std::size_t>(extra) + 1;
    }
    return out;
}

std::string encode(char32_t cp) {
    std::string s;
    if (cp < 0x80) {
        s += static_cast<char>(cp);
    } else if (cp < 0x800) {
        s += static_cast<char>(0xC0 | (cp >> 6));
        s += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        s += static_cast<char>(0xE0 | (cp >> 12));
        s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        s += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        s += static_cast<char>(0xF0 | (cp >> 18));
        s += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        s += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return s;
}

std::string encode(const std::vector<char32_t>& cps) {
    std::string s;
    for (char32_t cp : cps) s += encode(cp);
    return s;
}

}  // namespace utf8

bool is_cjk_ideograph(char32_t cp) noexcept {
    return (cp >= 0x4E00 && cp <= 0x9FFF)      // unified ideographs
           || (cp >= 0x3400 && cp <= 0x4DBF)   // extension A
           || (cp >= 0xF900 && cp <= 0xFAFF)   // compatibility ideographs
           || (cp >= 0x20000 && cp <= 0x2FA1F);  // extensions B..F, compat supplement
}

namespace {

bool is_separator(char32_t cp) {
    switch (cp) {
    case U' ':
    case U'\t':
    case U'-':
    case U'_':
    case U'·':  // middle dot
    case U'・':  // katakana middle dot
    case U'•':  // bullet
    case U'‐':  // hyphen
    case U'‑':  // non-breaking hyphen
    case U'‒':
    case U'–':
    case U'　':  // ideographic space
        return true;
    default:
        return false;
    }
}

}  // namespace

PlateKey normalize_plate(std::string_view raw) {
    std::vector<char32_t> kept;
    for (char32_t cp : utf8::decode(raw)) {
        if (is_separator(cp)) continue;
        if (cp >= U'a' && cp <= U'z') cp = cp - U'a' + U'A';
        if ((cp >= U'A' && cp <= U'Z') || (cp >= U'0' && cp <= U'9') || is_cjk_ideograph(cp)) {
            kept.push_back(cp);
            continue;
        }
        throw Error(ErrorCode::Validation,
                    "plate text '" + std::string(raw) + "' contains disallowed character '" + utf8::encode(cp) + "'");
    }
    if (kept.empty())
        throw Error(ErrorCode::Validation, "plate text '" + std::string(raw) + "' is empty after normalization");
    return PlateKey(utf8::encode(kept));
}

}  // namespace leakaudit
