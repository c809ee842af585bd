#pragma once
// Tokenization and the TF-IDF math core: sublinear tf, smoothed idf,
// document vectors and weighted norms.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kfc/error.hpp"
#include "kfc/types.hpp"
#include "kfc/unicode.hpp"

namespace kfc {

// Maximal runs of Unicode letters/digits, simple-case-folded. Underscores,
// hyphens and dots separate; single-char and purely numeric tokens are kept.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    const auto* p = reinterpret_cast<const uint8_t*>(text.data());
    int32_t i = 0;
    const auto len = static_cast<int32_t>(text.size());
    while (i < len) {
        UChar32 c;
        U8_NEXT(p, i, len, c);
        if (c < 0) raise(ErrorKind::bad_encoding, "invalid UTF-8 byte sequence");
        if (uni::is_word_char(static_cast<char32_t>(c))) {
            uni::append_utf8(current, uni::fold_char(static_cast<char32_t>(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

// tf(t, d) = 1 + ln(f) with sublinear scaling.
inline double sublinear_tf(uint64_t raw_count) {
    if (raw_count == 0)
        raise(ErrorKind::precondition, "sublinear_tf requires raw_count >= 1");
    return 1.0 + std::log(static_cast<double>(raw_count));
}

// idf(t) = ln(N / (1 + df)) + 1; positive for all 1 <= df <= N.
inline double idf(int64_t total_segments, int64_t document_frequency) {
    if (total_segments < 1)
        raise(ErrorKind::precondition, "idf requires at least one segment");
    if (document_frequency < 1 || document_frequency > total_segments)
        raise(ErrorKind::precondition, "idf requires 1 <= df <= N");
    return std::log(static_cast<double>(total_segments) /
                    (1.0 + static_cast<double>(document_frequency))) +
           1.0;
}

struct IdfTable {
    int64_t total_segments = 0;
    std::unordered_map<int64_t, int64_t> df;  // term_id -> document frequency

    double idf_of(int64_t term_id) const {
        const auto it = df.find(term_id);
        if (it == df.end())
            raise(ErrorKind::precondition, "term has no document frequency entry");
        return idf(total_segments, it->second);
    }
};

// Transaction-scoped view of the vocabulary. Existing terms resolve to their
// stored ids; unseen terms get provisional ids that become real only when the
// owning commit succeeds.
class TermStaging {
public:
    TermStaging(const std::unordered_map<std::string, int64_t>* persisted,
                int64_t next_term_id, int64_t generation = 0)
        : persisted_(persisted), next_term_id_(next_term_id), generation_(generation) {}

    int64_t id_for(const std::string& term) {
        if (persisted_ != nullptr) {
            if (const auto it = persisted_->find(term); it != persisted_->end())
                return it->second;
        }
        if (const auto it = pending_.find(term); it != pending_.end()) return it->second;
        const int64_t id = next_term_id_++;
        pending_.emplace(term, id);
        new_terms_.emplace_back(term, id);
        return id;
    }

    const std::vector<std::pair<std::string, int64_t>>& new_terms() const {
        return new_terms_;
    }
    int64_t next_term_id() const { return next_term_id_; }
    int64_t generation() const { return generation_; }

private:
    const std::unordered_map<std::string, int64_t>* persisted_;
    int64_t next_term_id_;
    int64_t generation_;
    std::unordered_map<std::string, int64_t> pending_;
    std::vector<std::pair<std::string, int64_t>> new_terms_;
};

// Raw counts per term_id, ascending. Feeds both region V (weights) and
// region I (posting rows).
using TermCounts = std::vector<std::pair<int64_t, uint32_t>>;

inline TermCounts count_terms(const std::vector<std::string>& tokens, TermStaging& vocab) {
    std::map<int64_t, uint32_t> counts;
    for (const auto& tok : tokens) counts[vocab.id_for(tok)] += 1;
    return TermCounts(counts.begin(), counts.end());
}

inline SparseVector build_document_vector(const TermCounts& counts) {
    SparseVector v;
    v.entries.reserve(counts.size());
    for (const auto& [term_id, freq] : counts)
        v.entries.emplace_back(term_id, sublinear_tf(freq));
    return v;
}

inline SparseVector build_document_vector(const std::vector<std::string>& tokens,
                                          TermStaging& vocab) {
    return build_document_vector(count_terms(tokens, vocab));
}

// sqrt(sum((tf * idf)^2)); 0 signals an empty vector (segment unreachable
// by cosine ranking).
inline double weighted_norm(const SparseVector& tf_vector, const IdfTable& idf_table) {
    double sum = 0.0;
    for (const auto& [term_id, tf_weight] : tf_vector.entries) {
        const double w = tf_weight * idf_table.idf_of(term_id);
        sum += w * w;
    }
    return std::sqrt(sum);
}

} // namespace kfc
