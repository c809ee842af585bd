#pragma once
// Hybrid retrieval: TF-IDF cosine over the inverted index fused with an
// exact lowercase-substring boost. Score = alpha * cos + beta * 1_substr.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kfc/container.hpp"
#include "kfc/error.hpp"
#include "kfc/normalize.hpp"
#include "kfc/textindex.hpp"
#include "kfc/types.hpp"
#include "kfc/unicode.hpp"

namespace kfc {

struct SearchOptions {
    double alpha = 1.0;
    double beta = 1.0;
    int64_t k = 10;
    bool collapse_docs = false;  // keep only each document's best segment
};

struct QueryPlan {
    std::string raw_query;
    std::string needle;        // fold(normalize_text(raw_query))
    SparseVector query_vector; // tf*idf over known terms, l2-normalized
    double alpha = 1.0;
    double beta = 1.0;
    int64_t k = 10;
};

// 1 iff needle occurs as a contiguous substring of the case-folded,
// NFC-normalized content. The needle must already be folded (a QueryPlan
// needle is).
inline int substring_indicator(std::string_view folded_needle, std::string_view content) {
    if (folded_needle.empty())
        raise(ErrorKind::precondition, "substring indicator requires a non-empty needle");
    const std::string haystack = uni::fold_text(uni::nfc(content));
    return haystack.find(folded_needle) != std::string::npos ? 1 : 0;
}

namespace detail {

inline QueryPlan plan_from_snapshot(const IndexSnapshot& snap, std::string_view raw_query,
                                    const SearchOptions& opts) {
    if (opts.alpha < 0.0 || opts.beta < 0.0)
        raise(ErrorKind::precondition, "alpha and beta must be non-negative");
    if (opts.alpha == 0.0 && opts.beta == 0.0)
        raise(ErrorKind::degenerate_weights,
              "degenerate weights: alpha and beta are both zero");
    if (opts.k < 1) raise(ErrorKind::precondition, "k must be positive");

    QueryPlan plan;
    plan.raw_query = std::string(raw_query);
    plan.alpha = opts.alpha;
    plan.beta = opts.beta;
    plan.k = opts.k;

    const std::string normalized = normalize_text(raw_query);
    if (normalized.empty()) raise(ErrorKind::empty_query, "empty query");
    plan.needle = uni::fold_text(normalized);

    std::map<int64_t, uint32_t> counts;
    for (const auto& token : tokenize(normalized)) {
        const auto it = snap.terms.find(token);
        if (it != snap.terms.end()) counts[it->second.term_id] += 1;
    }
    double sum = 0.0;
    for (const auto& [term_id, freq] : counts) {
        const double w = sublinear_tf(freq) * snap.idf_by_id.at(term_id);
        plan.query_vector.entries.emplace_back(term_id, w);
        sum += w * w;
    }
    if (sum > 0.0) {
        const double norm = std::sqrt(sum);
        for (auto& [_, w] : plan.query_vector.entries) w /= norm;
    }
    return plan;
}

// Posting-list accumulation: per query term, acc[seg] += q_w * tf(f) * idf(t);
// the final dot product is divided by the candidate's weighted norm (the
// query vector is already unit length). Cosine clamped into [0, 1].
inline std::unordered_map<int64_t, double> accumulate_from_snapshot(
    const Container::ReadView& view, const IndexSnapshot& snap,
    const SparseVector& query_vector) {
    std::unordered_map<int64_t, double> acc;
    for (const auto& [term_id, q_weight] : query_vector.entries) {
        const double term_idf = snap.idf_by_id.at(term_id);
        for (const auto& posting : view.postings(term_id))
            acc[posting.segment_id] += q_weight * sublinear_tf(posting.freq) * term_idf;
    }
    for (auto& [segment_id, dot] : acc) {
        const auto it = snap.norm_by_segment.find(segment_id);
        if (it == snap.norm_by_segment.end() || it->second <= 0.0)
            raise(ErrorKind::constraint,
                  "segment in postings has no weighted norm: " + std::to_string(segment_id));
        dot = std::clamp(dot / it->second, 0.0, 1.0);
    }
    return acc;
}

// Corpus-wide scan (not restricted to cosine candidates) so that needles
// whose tokens are unknown to the vocabulary still force their segments up.
inline std::vector<int64_t> boost_scan_snapshot(const IndexSnapshot& snap,
                                                std::string_view folded_needle) {
    std::vector<int64_t> out;
    if (folded_needle.empty()) return out;
    for (const auto& seg : snap.folded_segments)
        if (seg.folded.find(folded_needle) != std::string::npos)
            out.push_back(seg.segment_id);
    return out;
}

inline int64_t doc_of_segment(const IndexSnapshot& snap, int64_t segment_id) {
    const auto it = std::lower_bound(
        snap.folded_segments.begin(), snap.folded_segments.end(), segment_id,
        [](const IndexSnapshot::SegmentText& s, int64_t id) { return s.segment_id < id; });
    if (it == snap.folded_segments.end() || it->segment_id != segment_id)
        raise(ErrorKind::constraint, "unknown segment " + std::to_string(segment_id));
    return it->doc_id;
}

// Up to 200 chars centered on the first match when boosted, else the head.
inline std::string make_snippet(const std::string& content,
                                std::string_view folded_needle, bool boosted) {
    constexpr size_t kSnippetChars = 200;
    const std::u32string c32 = uni::decode_utf8(content);
    size_t start = 0;
    if (boosted) {
        const std::u32string folded = uni::fold_text(std::u32string_view(c32));
        const std::u32string n32 = uni::decode_utf8(folded_needle);
        const auto it = std::search(folded.begin(), folded.end(), n32.begin(), n32.end());
        if (it != folded.end() && c32.size() > kSnippetChars) {
            const size_t mid =
                static_cast<size_t>(it - folded.begin()) + n32.size() / 2;
            start = mid > kSnippetChars / 2 ? mid - kSnippetChars / 2 : 0;
            start = std::min(start, c32.size() - kSnippetChars);
        }
    }
    return uni::encode_utf8(std::u32string_view(c32).substr(start, kSnippetChars));
}

struct Candidate {
    int64_t segment_id = 0;
    double cosine = 0.0;
    bool boosted = false;
};

inline std::vector<SearchResult> assemble_results(const Container::ReadView& view,
                                                  const IndexSnapshot& snap,
                                                  const QueryPlan& plan,
                                                  std::unordered_map<int64_t, double> cosines,
                                                  const std::vector<int64_t>& boosted_ids,
                                                  bool collapse_docs) {
    std::vector<Candidate> candidates;
    candidates.reserve(cosines.size() + boosted_ids.size());
    std::unordered_set<int64_t> boosted_set(boosted_ids.begin(), boosted_ids.end());
    for (const auto& [segment_id, cos] : cosines)
        candidates.push_back({segment_id, cos, boosted_set.contains(segment_id)});
    for (const int64_t segment_id : boosted_ids)
        if (!cosines.contains(segment_id)) candidates.push_back({segment_id, 0.0, true});

    const auto score_of = [&](const Candidate& c) {
        return plan.alpha * c.cosine + plan.beta * (c.boosted ? 1.0 : 0.0);
    };
    std::sort(candidates.begin(), candidates.end(),
              [&](const Candidate& a, const Candidate& b) {
                  const double sa = score_of(a), sb = score_of(b);
                  if (sa != sb) return sa > sb;
                  if (a.boosted != b.boosted) return a.boosted;
                  if (a.cosine != b.cosine) return a.cosine > b.cosine;
                  return a.segment_id < b.segment_id;
              });

    if (collapse_docs) {
        std::unordered_set<int64_t> seen_docs;
        std::vector<Candidate> best;
        best.reserve(candidates.size());
        for (const auto& c : candidates)
            if (seen_docs.insert(doc_of_segment(snap, c.segment_id)).second)
                best.push_back(c);
        candidates = std::move(best);
    }
    if (candidates.size() > static_cast<size_t>(plan.k))
        candidates.resize(static_cast<size_t>(plan.k));

    std::vector<SearchResult> results;
    results.reserve(candidates.size());
    for (const auto& c : candidates) {
        const auto seg = view.segment(c.segment_id);
        if (!seg)
            raise(ErrorKind::constraint, "candidate segment vanished mid-query");
        const auto doc = view.document(seg->doc_id);
        if (!doc)
            raise(ErrorKind::constraint, "segment references missing document");
        SearchResult r;
        r.segment_id = c.segment_id;
        r.doc_id = seg->doc_id;
        r.source_path = doc->source_path;
        r.cosine = c.cosine;
        r.boosted = c.boosted;
        r.score = score_of(c);
        r.snippet = make_snippet(seg->content, plan.needle, c.boosted);
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace detail

inline QueryPlan build_query_plan(Container& container, std::string_view raw_query,
                                  const SearchOptions& opts = {}) {
    return container.with_read_snapshot(
        [&](const Container::ReadView&, const IndexSnapshot& snap) {
            return detail::plan_from_snapshot(snap, raw_query, opts);
        });
}

// Cosine per candidate segment; segments sharing no term with the query are
// absent from the map.
inline std::unordered_map<int64_t, double> cosine_accumulate(
    Container& container, const SparseVector& query_vector) {
    return container.with_read_snapshot(
        [&](const Container::ReadView& view, const IndexSnapshot& snap) {
            return detail::accumulate_from_snapshot(view, snap, query_vector);
        });
}

// Every segment whose folded content contains the needle, corpus-wide.
inline std::vector<int64_t> candidate_boost_scan(Container& container,
                                                 std::string_view folded_needle) {
    return container.with_read_snapshot(
        [&](const Container::ReadView&, const IndexSnapshot& snap) {
            return detail::boost_scan_snapshot(snap, folded_needle);
        });
}

// One-shot hybrid search over a single committed snapshot.
inline std::vector<SearchResult> search(Container& container, std::string_view raw_query,
                                        const SearchOptions& opts = {}) {
    return container.with_read_snapshot(
        [&](const Container::ReadView& view, const IndexSnapshot& snap) {
            const QueryPlan plan = detail::plan_from_snapshot(snap, raw_query, opts);
            auto cosines =
                detail::accumulate_from_snapshot(view, snap, plan.query_vector);
            const auto boosted = detail::boost_scan_snapshot(snap, plan.needle);
            return detail::assemble_results(view, snap, plan, std::move(cosines), boosted,
                                            opts.collapse_docs);
        });
}

} // namespace kfc
