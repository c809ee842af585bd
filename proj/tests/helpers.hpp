#pragma once
// Shared test scaffolding: temp paths, an in-memory commit pipeline, and an
// independent dense TF-IDF oracle for cross-checking posting-list scoring.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <kfc/kfc.hpp>

namespace testutil {

namespace fs = std::filesystem;

inline fs::path temp_root() {
    static const fs::path root = [] {
        auto p = fs::temp_directory_path() /
                 ("kfc_tests_" +
                  std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        fs::create_directories(p);
        return p;
    }();
    return root;
}

// Fresh directory (or file path) unique to the calling test.
inline fs::path temp_path(const std::string& tag) {
    static std::atomic<uint64_t> counter{0};
    return temp_root() / (tag + "_" + std::to_string(counter.fetch_add(1)));
}

inline fs::path temp_dir(const std::string& tag) {
    auto p = temp_path(tag);
    fs::create_directories(p);
    return p;
}

inline void write_file(const fs::path& p, std::string_view bytes) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

// Commits one in-memory document through the real pipeline (normalize ->
// segment -> tokenize -> vectorize -> commit).
inline int64_t commit_text(kfc::Container& c, const std::string& source_path,
                           const std::string& raw_text,
                           kfc::Modality modality = kfc::Modality::plain_text) {
    const auto segments_text = kfc::segment_text(kfc::normalize_text(raw_text));
    kfc::TermStaging staging = c.begin_staging();
    std::vector<kfc::SegmentDraft> drafts;
    std::vector<kfc::SparseVector> vectors;
    kfc::IndexDelta delta;
    for (const auto& content : segments_text) {
        auto counts = kfc::count_terms(kfc::tokenize(content), staging);
        vectors.push_back(kfc::build_document_vector(counts));
        delta.segment_term_counts.push_back(std::move(counts));
        drafts.push_back(
            {content, static_cast<int64_t>(kfc::uni::codepoint_count(content))});
    }
    delta.new_terms = staging.new_terms();
    delta.next_term_id = staging.next_term_id();
    delta.staged_generation = staging.generation();

    kfc::DocumentRecord record;
    record.source_path = source_path;
    record.signature = kfc::sha256_bytes(raw_text);
    record.ingested_at = kfc::now_utc_seconds();
    record.size_bytes = raw_text.size();
    record.modality = modality;
    return c.commit_document(record, drafts, vectors, delta);
}

// ----------------------------------------------------------------------
// Dense brute-force TF-IDF oracle. Independent of the container: recounts
// terms from the segment texts, builds dense vectors over the whole
// vocabulary, and scores with plain dot products.
// ----------------------------------------------------------------------
class DenseOracle {
public:
    explicit DenseOracle(const std::vector<std::string>& segment_texts) {
        for (const auto& text : segment_texts) {
            std::map<std::string, uint32_t> counts;
            for (const auto& tok : kfc::tokenize(text)) counts[tok] += 1;
            for (const auto& [term, _] : counts) df_[term] += 1;
            segment_counts_.push_back(std::move(counts));
        }
        n_ = static_cast<int64_t>(segment_texts.size());
    }

    // Cosine of the query against segment i; 0 when either side is empty.
    double cosine(const std::string& query, size_t i) const {
        const auto q = weighted(query_counts(query));
        const auto d = weighted(segment_counts_[i]);
        const double qn = norm(q), dn = norm(d);
        if (qn == 0.0 || dn == 0.0) return 0.0;
        double dot = 0.0;
        for (const auto& [term, qw] : q) {
            const auto it = d.find(term);
            if (it != d.end()) dot += qw * it->second;
        }
        return dot / (qn * dn);
    }

    // Candidates in the same sense as cosine_accumulate: segments sharing at
    // least one known query term.
    std::set<size_t> candidates(const std::string& query) const {
        std::set<size_t> out;
        for (const auto& [term, _] : query_counts(query))
            for (size_t i = 0; i < segment_counts_.size(); ++i)
                if (segment_counts_[i].count(term) > 0) out.insert(i);
        return out;
    }

    int64_t df(const std::string& term) const {
        const auto it = df_.find(term);
        return it == df_.end() ? 0 : it->second;
    }
    int64_t total_segments() const { return n_; }

private:
    std::map<std::string, uint32_t> query_counts(const std::string& query) const {
        std::map<std::string, uint32_t> counts;
        for (const auto& tok : kfc::tokenize(kfc::normalize_text(query)))
            if (df_.count(tok) > 0) counts[tok] += 1;  // known terms only
        return counts;
    }

    std::map<std::string, double> weighted(const std::map<std::string, uint32_t>& counts) const {
        std::map<std::string, double> out;
        for (const auto& [term, f] : counts) {
            const auto dit = df_.find(term);
            if (dit == df_.end()) continue;
            out[term] = (1.0 + std::log(static_cast<double>(f))) *
                        (std::log(static_cast<double>(n_) / (1.0 + dit->second)) + 1.0);
        }
        return out;
    }

    static double norm(const std::map<std::string, double>& v) {
        double s = 0.0;
        for (const auto& [_, w] : v) s += w * w;
        return std::sqrt(s);
    }

    std::vector<std::map<std::string, uint32_t>> segment_counts_;
    std::map<std::string, int64_t> df_;
    int64_t n_ = 0;
};

} // namespace testutil
