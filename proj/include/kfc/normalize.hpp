#pragma once
// Text normalization and deterministic segmentation.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kfc/unicode.hpp"

namespace kfc {

inline constexpr size_t kDefaultMaxSegmentChars = 2000;

// NFC, line endings to LF, horizontal whitespace runs to one space, at most
// two consecutive LFs, trimmed. Idempotent.
inline std::string normalize_text(std::string_view raw) {
    if (raw.empty()) return {};
    const std::u32string in = uni::decode_utf8(uni::nfc(raw));

    std::u32string out;
    out.reserve(in.size());
    size_t i = 0;
    while (i < in.size()) {
        const char32_t c = in[i];
        if (c == U'\r') {
            out.push_back(U'\n');
            i += (i + 1 < in.size() && in[i + 1] == U'\n') ? 2 : 1;
        } else if (uni::is_horizontal_space(c)) {
            out.push_back(U' ');
            while (i < in.size() && uni::is_horizontal_space(in[i])) ++i;
        } else {
            out.push_back(c);
            ++i;
        }
    }

    std::u32string squeezed;
    squeezed.reserve(out.size());
    size_t run = 0;
    for (const char32_t c : out) {
        if (c == U'\n') {
            if (++run <= 2) squeezed.push_back(c);
        } else {
            run = 0;
            squeezed.push_back(c);
        }
    }

    size_t begin = 0, end = squeezed.size();
    while (begin < end && uni::is_space_char(squeezed[begin])) ++begin;
    while (end > begin && uni::is_space_char(squeezed[end - 1])) --end;
    return uni::encode_utf8(std::u32string_view(squeezed).substr(begin, end - begin));
}

namespace detail {

// Splits an oversize unit at the last whitespace before the limit (or hard
// at the limit when none exists).
inline void split_oversize(const std::u32string& unit, size_t max_chars,
                           std::vector<std::u32string>& out) {
    size_t pos = 0;
    while (unit.size() - pos > max_chars) {
        size_t cut = pos + max_chars;
        size_t ws = cut;
        while (ws > pos && !uni::is_space_char(unit[ws - 1])) --ws;
        if (ws == pos) ws = cut;  // no whitespace in the window
        std::u32string piece = unit.substr(pos, ws - pos);
        while (!piece.empty() && uni::is_space_char(piece.back())) piece.pop_back();
        if (!piece.empty()) out.push_back(std::move(piece));
        pos = ws;
        while (pos < unit.size() && uni::is_space_char(unit[pos])) ++pos;
    }
    if (pos < unit.size()) out.push_back(unit.substr(pos));
}

} // namespace detail

// Greedily packs paragraph-like units into segments of at most max_chars
// codepoints, joining packed units with the given separator. Oversize units
// are split at whitespace first. No overlap; order preserved.
inline std::vector<std::string> pack_units(const std::vector<std::string>& units,
                                           size_t max_chars,
                                           std::string_view joiner) {
    const std::u32string join32 = uni::decode_utf8(joiner);
    std::vector<std::u32string> pieces;
    for (const auto& u : units) {
        if (u.empty()) continue;
        detail::split_oversize(uni::decode_utf8(u), max_chars, pieces);
    }

    std::vector<std::string> segments;
    std::u32string current;
    for (auto& piece : pieces) {
        if (current.empty()) {
            current = std::move(piece);
        } else if (current.size() + join32.size() + piece.size() <= max_chars) {
            current += join32;
            current += piece;
        } else {
            segments.push_back(uni::encode_utf8(current));
            current = std::move(piece);
        }
    }
    if (!current.empty()) segments.push_back(uni::encode_utf8(current));
    return segments;
}

// Blank-line paragraphs of normalized text packed into segments.
inline std::vector<std::string> segment_text(std::string_view normalized,
                                             size_t max_chars = kDefaultMaxSegmentChars) {
    std::vector<std::string> paragraphs;
    size_t pos = 0;
    while (pos <= normalized.size()) {
        const size_t next = normalized.find("\n\n", pos);
        std::string_view para = next == std::string_view::npos
                                    ? normalized.substr(pos)
                                    : normalized.substr(pos, next - pos);
        if (!para.empty()) paragraphs.emplace_back(para);
        if (next == std::string_view::npos) break;
        pos = next + 2;
    }
    return pack_units(paragraphs, max_chars, "\n\n");
}

} // namespace kfc
