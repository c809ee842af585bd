#pragma once
// Synthetic-corpus generator and experiment harness. Timings are accepted
// only when the correctness checks built into each experiment pass.

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kfc/container.hpp"
#include "kfc/detail/bench_words.hpp"
#include "kfc/error.hpp"
#include "kfc/ingest.hpp"
#include "kfc/query.hpp"

namespace kfc::bench {

// Fixed-algorithm 64-bit generator (splitmix64) for cross-platform
// deterministic corpora.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t below(uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

private:
    uint64_t state_;
};

struct CorpusSpec {
    int64_t n_docs = 1000;
    uint64_t seed = 42;
    std::vector<std::pair<int64_t, std::string>> entity_injections;  // doc index -> code
    int64_t doc_length_mean = 150;  // words; actual lengths span mean +/- 50
};

struct CorpusFile {
    std::string path;                  // relative, doc_<i>.txt
    std::optional<std::string> entity; // injected code, if any
};

using CorpusManifest = std::vector<CorpusFile>;

inline constexpr std::string_view kExemplarEntityCode = "UNIQUE_INVOICE_CODE_XYZ_999";

// Entity grammar: UNIQUE_<WORD>_CODE_<AAA>_<NNN>, uppercase, seeded.
inline std::string make_entity_code(SplitMix64& rng) {
    static constexpr std::string_view kWords[] = {"INVOICE", "ORDER",  "TICKET", "ASSET",
                                                  "BATCH",   "CLAIM",  "VENDOR", "LEDGER",
                                                  "PERMIT",  "RECORD"};
    std::string code = "UNIQUE_";
    code += kWords[rng.below(std::size(kWords))];
    code += "_CODE_";
    for (int i = 0; i < 3; ++i) code += static_cast<char>('A' + rng.below(26));
    code += '_';
    code += std::to_string(100 + rng.below(900));
    return code;
}

// count distinct codes in distinct documents; includes the doc_500 exemplar
// whenever the corpus is large enough.
inline std::vector<std::pair<int64_t, std::string>> make_default_injections(
    int64_t n_docs, int64_t count, uint64_t seed) {
    std::vector<std::pair<int64_t, std::string>> out;
    std::unordered_set<int64_t> used_docs;
    std::unordered_set<std::string> used_codes;
    SplitMix64 rng(seed ^ 0xEC71B5D14C0FFEE1ULL);
    if (n_docs > 500 && count > 0) {
        out.emplace_back(500, std::string(kExemplarEntityCode));
        used_docs.insert(500);
        used_codes.insert(std::string(kExemplarEntityCode));
    }
    while (std::ssize(out) < count && std::ssize(out) < n_docs) {
        const auto doc = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n_docs)));
        if (!used_docs.insert(doc).second) continue;
        std::string code = make_entity_code(rng);
        while (!used_codes.insert(code).second) code = make_entity_code(rng);
        out.emplace_back(doc, std::move(code));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline std::string render_document(SplitMix64& rng, int64_t mean_words,
                                   const std::optional<std::string>& entity) {
    const int64_t spread = std::max<int64_t>(mean_words / 3, 1);
    const auto n_words =
        static_cast<int64_t>(mean_words - spread + static_cast<int64_t>(rng.below(
                                                       static_cast<uint64_t>(2 * spread + 1))));
    std::vector<std::string> tokens;
    tokens.reserve(static_cast<size_t>(n_words) + 1);
    for (int64_t i = 0; i < n_words; ++i) {
        const bool business = rng.below(10) < 7;  // 70/30 business/technical mix
        const auto& pool = business ? words::kBusiness : words::kTechnical;
        const auto pool_size = business ? std::size(words::kBusiness) : std::size(words::kTechnical);
        tokens.emplace_back(pool[rng.below(pool_size)]);
    }
    if (entity) tokens.insert(tokens.begin() + tokens.size() / 2, *entity);

    std::string text;
    size_t i = 0;
    size_t sentences_in_paragraph = 0;
    size_t paragraph_target = 3 + rng.below(3);
    while (i < tokens.size()) {
        const size_t sentence_len = std::min(tokens.size() - i, 6 + rng.below(9));
        for (size_t w = 0; w < sentence_len; ++w, ++i) {
            std::string word = tokens[i];
            if (w == 0 && !word.empty() && word[0] >= 'a' && word[0] <= 'z')
                word[0] = static_cast<char>(word[0] - 'a' + 'A');
            if (w > 0) text += ' ';
            text += word;
        }
        text += '.';
        if (++sentences_in_paragraph >= paragraph_target && i < tokens.size()) {
            text += "\n\n";
            sentences_in_paragraph = 0;
            paragraph_target = 3 + rng.below(3);
        } else if (i < tokens.size()) {
            text += ' ';
        }
    }
    text += '\n';
    return text;
}

} // namespace detail

// Writes doc_0.txt .. doc_{n-1}.txt; a pure function of the spec. Refuses a
// non-empty output directory.
inline CorpusManifest generate_corpus(const CorpusSpec& spec,
                                      const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (fs::exists(out_dir, ec)) {
        if (!fs::is_directory(out_dir, ec))
            raise(ErrorKind::precondition, "corpus target is not a directory: " + out_dir.string());
        if (fs::directory_iterator(out_dir, ec) != fs::directory_iterator())
            raise(ErrorKind::precondition, "corpus directory not empty: " + out_dir.string());
    } else {
        fs::create_directories(out_dir, ec);
        if (ec) raise(ErrorKind::io, "cannot create corpus directory: " + out_dir.string());
    }

    std::unordered_map<int64_t, std::string> injections;
    for (const auto& [idx, code] : spec.entity_injections) {
        if (idx < 0 || idx >= spec.n_docs)
            raise(ErrorKind::precondition, "entity injection index out of range");
        if (!injections.emplace(idx, code).second)
            raise(ErrorKind::precondition, "duplicate entity injection for one document");
    }

    CorpusManifest manifest;
    manifest.reserve(static_cast<size_t>(spec.n_docs));
    SplitMix64 rng(spec.seed);
    for (int64_t i = 0; i < spec.n_docs; ++i) {
        const std::string name = "doc_" + std::to_string(i) + ".txt";
        std::optional<std::string> entity;
        if (const auto it = injections.find(i); it != injections.end()) entity = it->second;
        const std::string body = detail::render_document(rng, spec.doc_length_mean, entity);
        std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
        if (!out) raise(ErrorKind::io, "cannot write corpus file: " + name);
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        out.close();
        manifest.push_back({name, std::move(entity)});
    }
    return manifest;
}

// ----------------------------------------------------------------------
// Experiments
// ----------------------------------------------------------------------

struct Rq1Result {
    int64_t docs = 0;
    int64_t committed_incremental = 0;
    double cold_seconds = 0.0;
    double incremental_seconds = 0.0;
    double speedup = 0.0;
    double cold_docs_per_sec = 0.0;
};

struct Rq2Result {
    int64_t probes = 0;
    int64_t hits = 0;
    double recall_at_1 = 0.0;
    double beta0_recall = 0.0;  // contrast run, informational
};

struct Rq3Result {
    int64_t iterations = 0;
    double mean_query_ms = 0.0;
    double p95_query_ms = 0.0;
};

struct BenchReport {
    double cold_seconds = 0.0;
    double incremental_seconds = 0.0;
    double speedup = 0.0;
    double cold_docs_per_sec = 0.0;
    double recall_at_1 = 0.0;
    double mean_query_ms = 0.0;
    double p95_query_ms = 0.0;
};

// Appends a marker line to mutate_count files, spread across the corpus.
// Returns the mutated relative paths.
inline std::vector<std::string> mutate_corpus_files(const std::filesystem::path& corpus_dir,
                                                    int64_t mutate_count) {
    namespace fs = std::filesystem;
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(corpus_dir))
        if (entry.is_regular_file()) names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    if (mutate_count > std::ssize(names))
        raise(ErrorKind::precondition, "cannot mutate more files than the corpus holds");

    std::vector<std::string> mutated;
    const auto stride = std::max<int64_t>(std::ssize(names) / std::max<int64_t>(mutate_count, 1), 1);
    for (int64_t k = 0; k < mutate_count; ++k) {
        const auto& name = names[static_cast<size_t>((k * stride) % std::ssize(names))];
        std::ofstream out(corpus_dir / name, std::ios::binary | std::ios::app);
        out << "Revision marker " << k << " appended for the incremental pass.\n";
        mutated.push_back(name);
    }
    return mutated;
}

// Cold sync vs re-sync after mutating mutate_count files (0 = no-op pass).
// Throws when the report counts contradict the expectation, so invalid runs
// never produce timings.
inline Rq1Result run_rq1(Container& container, const std::filesystem::path& corpus_dir,
                         int64_t mutate_count, const SyncConfig& cfg = {}) {
    if (container.stats().documents != 0)
        raise(ErrorKind::precondition, "rq1 requires a fresh container");

    const SyncReport cold = sync_directory(container, corpus_dir, cfg);
    if (!cold.failed.empty() || cold.added != cold.scanned || cold.added == 0)
        raise(ErrorKind::internal, "rq1 invalid: cold sync did not ingest the whole corpus");

    if (mutate_count > 0) mutate_corpus_files(corpus_dir, mutate_count);

    const uint64_t commits_before = container.commit_count();
    const SyncReport incr = sync_directory(container, corpus_dir, cfg);
    const auto committed =
        static_cast<int64_t>(container.commit_count() - commits_before);
    const bool counts_ok = incr.failed.empty() && incr.added == 0 &&
                           incr.updated == mutate_count &&
                           incr.skipped == incr.scanned - mutate_count &&
                           committed == mutate_count;
    if (!counts_ok)
        raise(ErrorKind::internal, "rq1 invalid: incremental pass did not match expectation");

    Rq1Result r;
    r.docs = cold.added;
    r.committed_incremental = committed;
    r.cold_seconds = cold.elapsed;
    r.incremental_seconds = incr.elapsed;
    r.speedup = cold.elapsed / std::max(incr.elapsed, 1e-9);
    r.cold_docs_per_sec = static_cast<double>(cold.added) / std::max(cold.elapsed, 1e-9);
    return r;
}

// Queries every injected entity code and counts rank-1 hits on the correct
// document. A beta=0 contrast recall is recorded alongside.
inline Rq2Result run_rq2(Container& container, const CorpusManifest& manifest,
                         const SearchOptions& opts = {}) {
    std::vector<std::pair<std::string, std::string>> probes;  // code -> path
    for (const auto& f : manifest)
        if (f.entity) probes.emplace_back(*f.entity, f.path);
    if (probes.empty())
        raise(ErrorKind::precondition, "nothing to measure: no injected entity codes");

    Rq2Result r;
    r.probes = std::ssize(probes);
    SearchOptions beta0 = opts;
    beta0.beta = 0.0;
    int64_t beta0_hits = 0;
    for (const auto& [code, path] : probes) {
        const auto results = search(container, code, opts);
        if (!results.empty() && results.front().source_path == path) ++r.hits;
        const auto contrast = search(container, code, beta0);
        if (!contrast.empty() && contrast.front().source_path == path) ++beta0_hits;
    }
    r.recall_at_1 = static_cast<double>(r.hits) / static_cast<double>(r.probes);
    r.beta0_recall = static_cast<double>(beta0_hits) / static_cast<double>(r.probes);
    return r;
}

// Fixed mixed query set: 25 common single words, 20 three-word queries,
// 5 entity codes (fewer when the manifest has none).
inline std::vector<std::string> make_query_set(const CorpusManifest& manifest, uint64_t seed) {
    SplitMix64 rng(seed ^ 0x9D2C5680CA35C17FULL);
    const auto pick_word = [&]() -> std::string {
        const bool business = rng.below(2) == 0;
        return std::string(business ? words::kBusiness[rng.below(std::size(words::kBusiness))]
                                    : words::kTechnical[rng.below(std::size(words::kTechnical))]);
    };
    std::vector<std::string> queries;
    queries.reserve(50);
    for (int i = 0; i < 25; ++i) queries.push_back(pick_word());
    for (int i = 0; i < 20; ++i)
        queries.push_back(pick_word() + " " + pick_word() + " " + pick_word());
    std::vector<std::string> codes;
    for (const auto& f : manifest)
        if (f.entity) codes.push_back(*f.entity);
    for (int i = 0; i < 5; ++i)
        queries.push_back(codes.empty() ? pick_word()
                                        : codes[static_cast<size_t>(i) % codes.size()]);
    return queries;
}

// End-to-end search latency after warmup; mean and p95 over `iterations`
// searches cycling through the query set.
inline Rq3Result run_rq3(Container& container, const std::vector<std::string>& queries,
                         int64_t warmup, int64_t iterations) {
    if (queries.empty()) raise(ErrorKind::precondition, "rq3 requires a query set");
    if (iterations <= 0) raise(ErrorKind::precondition, "rq3 requires iterations >= 1");

    for (int64_t i = 0; i < warmup; ++i)
        search(container, queries[static_cast<size_t>(i) % queries.size()]);

    std::vector<double> samples;
    samples.reserve(static_cast<size_t>(iterations));
    for (int64_t i = 0; i < iterations; ++i) {
        const auto& q = queries[static_cast<size_t>(i) % queries.size()];
        const auto t0 = std::chrono::steady_clock::now();
        search(container, q);
        const auto t1 = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }

    Rq3Result r;
    r.iterations = iterations;
    double sum = 0.0;
    for (const double s : samples) sum += s;
    r.mean_query_ms = sum / static_cast<double>(samples.size());
    std::sort(samples.begin(), samples.end());
    const size_t idx = samples.empty()
                           ? 0
                           : std::min(samples.size() - 1,
                                      static_cast<size_t>(std::ceil(0.95 * samples.size())) - 1);
    r.p95_query_ms = samples[idx];
    return r;
}

inline nlohmann::json bench_report_to_json(const BenchReport& r) {
    return {{"cold_seconds", r.cold_seconds},
            {"incremental_seconds", r.incremental_seconds},
            {"speedup", r.speedup},
            {"cold_docs_per_sec", r.cold_docs_per_sec},
            {"recall_at_1", r.recall_at_1},
            {"mean_query_ms", r.mean_query_ms},
            {"p95_query_ms", r.p95_query_ms}};
}

} // namespace kfc::bench
