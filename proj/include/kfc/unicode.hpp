#pragma once
// UTF-8 codec, NFC normalization and simple case folding (ICU-backed).

#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utf8.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "kfc/error.hpp"

namespace kfc::uni {

// Decodes strict UTF-8; throws bad_encoding on malformed input.
inline std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    const auto* p = reinterpret_cast<const uint8_t*>(s.data());
    int32_t i = 0;
    const auto len = static_cast<int32_t>(s.size());
    while (i < len) {
        UChar32 c;
        U8_NEXT(p, i, len, c);
        if (c < 0) raise(ErrorKind::bad_encoding, "invalid UTF-8 byte sequence");
        out.push_back(static_cast<char32_t>(c));
    }
    return out;
}

inline void append_utf8(std::string& out, char32_t c) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool err = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), err);
    if (err) raise(ErrorKind::bad_encoding, "codepoint not encodable as UTF-8");
    out.append(reinterpret_cast<const char*>(buf), static_cast<size_t>(n));
}

inline std::string encode_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t c : s) append_utf8(out, c);
    return out;
}

// True when the bytes are well-formed UTF-8. A sequence truncated at the very
// end counts as valid when allow_truncated_tail is set (prefix reads).
inline bool is_valid_utf8(std::string_view s, bool allow_truncated_tail = false) {
    const auto* p = reinterpret_cast<const uint8_t*>(s.data());
    int32_t i = 0;
    const auto len = static_cast<int32_t>(s.size());
    while (i < len) {
        int32_t start = i;
        UChar32 c;
        U8_NEXT(p, i, len, c);
        if (c < 0) {
            if (!allow_truncated_tail || i < len) return false;
            // Ran off the end: valid lead byte whose continuation got cut off?
            uint8_t lead = p[start];
            int32_t need = U8_COUNT_TRAIL_BYTES(lead);
            if (need == 0 || start + 1 + need <= len) return false;
            for (int32_t j = start + 1; j < len; ++j)
                if ((p[j] & 0xC0) != 0x80) return false;
            return true;
        }
    }
    return true;
}

inline size_t codepoint_count(std::string_view s) {
    size_t n = 0;
    const auto* p = reinterpret_cast<const uint8_t*>(s.data());
    int32_t i = 0;
    const auto len = static_cast<int32_t>(s.size());
    while (i < len) {
        U8_FWD_1(p, i, len);
        ++n;
    }
    return n;
}

// Unicode letters and decimal digits form tokens; everything else separates.
inline bool is_word_char(char32_t c) { return u_isalnum(static_cast<UChar32>(c)) != 0; }

inline bool is_space_char(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0; }

// Horizontal whitespace: tab plus the Zs category (space separators).
inline bool is_horizontal_space(char32_t c) {
    return c == U'\t' || u_charType(static_cast<UChar32>(c)) == U_SPACE_SEPARATOR;
}

// Simple (one-to-one) case folding of a single codepoint.
inline char32_t fold_char(char32_t c) {
    return static_cast<char32_t>(u_foldCase(static_cast<UChar32>(c), U_FOLD_CASE_DEFAULT));
}

inline std::u32string fold_text(std::u32string_view s) {
    std::u32string out(s);
    for (auto& c : out) c = fold_char(c);
    return out;
}

// Per-codepoint fold keeps byte-level substring search aligned to codepoint
// boundaries (UTF-8 is self-synchronizing).
inline std::string fold_text(std::string_view utf8) {
    std::string out;
    out.reserve(utf8.size());
    const auto* p = reinterpret_cast<const uint8_t*>(utf8.data());
    int32_t i = 0;
    const auto len = static_cast<int32_t>(utf8.size());
    while (i < len) {
        UChar32 c;
        U8_NEXT(p, i, len, c);
        if (c < 0) raise(ErrorKind::bad_encoding, "invalid UTF-8 byte sequence");
        append_utf8(out, fold_char(static_cast<char32_t>(c)));
    }
    return out;
}

// Canonical composition (NFC). Throws bad_encoding on malformed input.
inline std::string nfc(std::string_view utf8) {
    if (utf8.empty()) return {};
    UErrorCode ec = U_ZERO_ERROR;
    const UNormalizer2* norm = unorm2_getNFCInstance(&ec);
    if (U_FAILURE(ec) || norm == nullptr)
        raise(ErrorKind::internal, "ICU NFC normalizer unavailable");

    std::u16string u16(utf8.size() + 1, u'\0');
    int32_t u16len = 0;
    u_strFromUTF8(u16.data(), static_cast<int32_t>(u16.size()), &u16len,
                  utf8.data(), static_cast<int32_t>(utf8.size()), &ec);
    if (U_FAILURE(ec)) raise(ErrorKind::bad_encoding, "invalid UTF-8 byte sequence");
    u16.resize(static_cast<size_t>(u16len));

    ec = U_ZERO_ERROR;
    if (unorm2_isNormalized(norm, u16.data(), u16len, &ec) && U_SUCCESS(ec))
        return std::string(utf8);

    ec = U_ZERO_ERROR;
    int32_t need = unorm2_normalize(norm, u16.data(), u16len, nullptr, 0, &ec);
    if (ec != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(ec))
        raise(ErrorKind::internal, "NFC normalization failed");
    ec = U_ZERO_ERROR;
    std::u16string composed(static_cast<size_t>(need), u'\0');
    unorm2_normalize(norm, u16.data(), u16len, composed.data(), need, &ec);
    if (U_FAILURE(ec)) raise(ErrorKind::internal, "NFC normalization failed");

    std::string out;
    out.resize(composed.size() * 4 + 4);
    int32_t outlen = 0;
    u_strToUTF8(out.data(), static_cast<int32_t>(out.size()), &outlen,
                composed.data(), need, &ec);
    if (U_FAILURE(ec)) raise(ErrorKind::internal, "UTF-8 re-encoding failed");
    out.resize(static_cast<size_t>(outlen));
    return out;
}

} // namespace kfc::uni
