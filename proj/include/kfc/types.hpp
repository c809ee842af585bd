#pragma once
// Domain types shared across the container, index and query layers.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kfc/error.hpp"
#include "kfc/sha256.hpp"

namespace kfc {

enum class Modality {
    plain_text,
    markdown,
    json,
    csv,
    tabular_spreadsheet,
    pdf,
    docx,
    image,
    unknown,
};

inline const char* to_string(Modality m) {
    switch (m) {
        case Modality::plain_text: return "plain_text";
        case Modality::markdown: return "markdown";
        case Modality::json: return "json";
        case Modality::csv: return "csv";
        case Modality::tabular_spreadsheet: return "tabular_spreadsheet";
        case Modality::pdf: return "pdf";
        case Modality::docx: return "docx";
        case Modality::image: return "image";
        case Modality::unknown: return "unknown";
    }
    return "unknown";
}

inline Modality modality_from_string(std::string_view s) {
    if (s == "plain_text") return Modality::plain_text;
    if (s == "markdown") return Modality::markdown;
    if (s == "json") return Modality::json;
    if (s == "csv") return Modality::csv;
    if (s == "tabular_spreadsheet") return Modality::tabular_spreadsheet;
    if (s == "pdf") return Modality::pdf;
    if (s == "docx") return Modality::docx;
    if (s == "image") return Modality::image;
    return Modality::unknown;
}

// Provenance row in region M.
struct DocumentRecord {
    int64_t doc_id = 0;
    std::string source_path;     // relative to the sync root, '/'-separated, NFC
    Sha256Digest signature{};    // SHA-256 of the source bitstream
    int64_t ingested_at = 0;     // UTC epoch seconds
    uint64_t size_bytes = 0;
    Modality modality = Modality::unknown;
};

// Normalized text segment in region C.
struct SegmentRecord {
    int64_t segment_id = 0;
    int64_t doc_id = 0;
    int64_t ordinal = 0;        // zero-based, contiguous within the document
    std::string content;        // normalized, non-empty
    int64_t char_count = 0;     // codepoints in content
};

struct VocabEntry {
    int64_t term_id = 0;
    std::string term;
    int64_t document_frequency = 0;  // distinct segments containing the term
};

struct Posting {
    int64_t segment_id = 0;
    uint32_t freq = 0;          // raw term count in the segment
};

struct ContainerStats {
    int64_t documents = 0;
    int64_t segments = 0;
    int64_t terms = 0;
    uint64_t file_bytes = 0;
};

// Ranked hit returned by search.
struct SearchResult {
    int64_t segment_id = 0;
    int64_t doc_id = 0;
    std::string source_path;
    double score = 0.0;         // alpha * cosine + beta * boosted
    double cosine = 0.0;        // in [0, 1]
    bool boosted = false;
    std::string snippet;
};

struct SyncFailure {
    std::string path;
    std::string reason;
};

struct SyncReport {
    int64_t scanned = 0;
    int64_t added = 0;
    int64_t updated = 0;
    int64_t skipped = 0;
    int64_t removed = 0;
    std::vector<SyncFailure> failed;
    double elapsed = 0.0;       // seconds, monotonic clock
};

// Sorted (term_id, weight) pairs; weights are sublinear tf (1 + ln f).
struct SparseVector {
    std::vector<std::pair<int64_t, double>> entries;

    bool empty() const { return entries.empty(); }
    size_t size() const { return entries.size(); }
};

namespace detail {

inline void put_u32_le(std::string& out, uint32_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

inline uint32_t get_u32_le(const unsigned char* p) {
    return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
           static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

inline void put_f64_le(std::string& out, double v) {
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    __builtin_memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

inline double get_f64_le(const unsigned char* p) {
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(p[i]) << (8 * i);
    double v;
    __builtin_memcpy(&v, &bits, sizeof(v));
    return v;
}

} // namespace detail

// Region V wire format: u32 count, then count * (u32 term_id, f64 weight),
// little-endian, term_ids strictly ascending.
inline std::string encode_sparse_vector(const SparseVector& v) {
    std::string out;
    out.reserve(4 + v.entries.size() * 12);
    detail::put_u32_le(out, static_cast<uint32_t>(v.entries.size()));
    int64_t prev = -1;
    for (const auto& [term_id, weight] : v.entries) {
        if (term_id <= prev)
            raise(ErrorKind::constraint, "sparse vector term_ids must be strictly ascending");
        if (term_id < 0 || term_id > 0xFFFFFFFFLL)
            raise(ErrorKind::constraint, "term_id out of u32 range");
        if (!(weight > 0.0))
            raise(ErrorKind::constraint, "sparse vector weights must be positive");
        prev = term_id;
        detail::put_u32_le(out, static_cast<uint32_t>(term_id));
        detail::put_f64_le(out, weight);
    }
    return out;
}

inline SparseVector decode_sparse_vector(std::string_view bytes) {
    if (bytes.size() < 4) raise(ErrorKind::constraint, "sparse vector blob truncated");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const uint32_t count = detail::get_u32_le(p);
    if (bytes.size() != 4 + static_cast<size_t>(count) * 12)
        raise(ErrorKind::constraint, "sparse vector blob has wrong length");
    SparseVector v;
    v.entries.reserve(count);
    int64_t prev = -1;
    for (uint32_t i = 0; i < count; ++i) {
        const auto* rec = p + 4 + static_cast<size_t>(i) * 12;
        const auto term_id = static_cast<int64_t>(detail::get_u32_le(rec));
        const double weight = detail::get_f64_le(rec + 4);
        if (term_id <= prev)
            raise(ErrorKind::constraint, "sparse vector blob not strictly ascending");
        prev = term_id;
        v.entries.emplace_back(term_id, weight);
    }
    return v;
}

} // namespace kfc
