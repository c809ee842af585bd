// kfc - command line front end for the single-file knowledge container.
//
// Subcommands: init, sync, query, stats, bench {corpus, rq1, rq2, rq3, all}.
// Exit codes: 0 success, 1 I/O or internal failure, 2 usage/contract error.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <kfc/kfc.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

volatile std::sig_atomic_t g_interrupted = 0;

void on_signal(int) { g_interrupted = 1; }

int exit_code_for(const kfc::Error& e) {
    switch (e.kind()) {
        case kfc::ErrorKind::io:
        case kfc::ErrorKind::internal:
        case kfc::ErrorKind::constraint:
            return 1;
        default:
            return 2;
    }
}

std::string resolve_container(const std::string& positional) {
    if (!positional.empty()) return positional;
    if (const char* env = std::getenv("KF_CONTAINER"); env != nullptr && *env != '\0')
        return env;
    kfc::raise(kfc::ErrorKind::precondition,
               "container path required (argument or KF_CONTAINER)");
}

// Two-positional commands: with KF_CONTAINER set, the container argument may
// be omitted entirely and every positional belongs to the second slot.
std::pair<std::string, std::vector<std::string>> split_container_args(
    std::vector<std::string> positionals, size_t min_rest) {
    const char* env = std::getenv("KF_CONTAINER");
    const bool has_env = env != nullptr && *env != '\0';
    if (positionals.size() > min_rest)
        return {positionals.front(),
                {positionals.begin() + 1, positionals.end()}};
    if (has_env && positionals.size() >= min_rest) return {env, std::move(positionals)};
    kfc::raise(kfc::ErrorKind::precondition,
               positionals.size() < min_rest
                   ? "missing required arguments"
                   : "container path required (argument or KF_CONTAINER)");
}

json stats_to_json(const kfc::ContainerStats& s) {
    return {{"documents", s.documents},
            {"segments", s.segments},
            {"terms", s.terms},
            {"file_bytes", s.file_bytes}};
}

void print_stats_table(const kfc::ContainerStats& s) {
    std::printf("documents   %lld\n", static_cast<long long>(s.documents));
    std::printf("segments    %lld\n", static_cast<long long>(s.segments));
    std::printf("terms       %lld\n", static_cast<long long>(s.terms));
    std::printf("file_bytes  %llu\n", static_cast<unsigned long long>(s.file_bytes));
}

void print_sync_table(const kfc::SyncReport& r) {
    std::printf("scanned=%lld added=%lld updated=%lld skipped=%lld removed=%lld "
                "failed=%zu elapsed=%.3fs\n",
                static_cast<long long>(r.scanned), static_cast<long long>(r.added),
                static_cast<long long>(r.updated), static_cast<long long>(r.skipped),
                static_cast<long long>(r.removed), r.failed.size(), r.elapsed);
    for (const auto& f : r.failed)
        std::printf("  failed: %s (%s)\n", f.path.c_str(), f.reason.c_str());
}

std::string one_line(std::string s) {
    for (auto& c : s)
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    return s;
}

json results_to_json(const std::vector<kfc::SearchResult>& results) {
    json arr = json::array();
    for (const auto& r : results)
        arr.push_back({{"segment_id", r.segment_id},
                       {"doc_id", r.doc_id},
                       {"source_path", r.source_path},
                       {"score", r.score},
                       {"cosine", r.cosine},
                       {"boosted", r.boosted},
                       {"snippet", r.snippet}});
    return arr;
}

void print_results_table(const std::vector<kfc::SearchResult>& results) {
    std::printf("%-4s %-8s %-8s %-7s %-28s %s\n", "rank", "score", "cosine", "boosted",
                "source_path", "snippet");
    int rank = 1;
    for (const auto& r : results) {
        std::string snippet = one_line(r.snippet);
        if (snippet.size() > 80) snippet = snippet.substr(0, 77) + "...";
        std::printf("%-4d %-8.4f %-8.4f %-7s %-28s %s\n", rank++, r.score, r.cosine,
                    r.boosted ? "yes" : "no", r.source_path.c_str(), snippet.c_str());
    }
}

struct BenchPrinter {
    static void rq1(const kfc::bench::Rq1Result& r) {
        std::printf("cold        %8.3f s  (%.1f docs/s, %lld docs)\n", r.cold_seconds,
                    r.cold_docs_per_sec, static_cast<long long>(r.docs));
        std::printf("incremental %8.3f s  (%lld commits)\n", r.incremental_seconds,
                    static_cast<long long>(r.committed_incremental));
        std::printf("speedup     %8.1fx\n", r.speedup);
    }
    static void rq2(const kfc::bench::Rq2Result& r) {
        std::printf("probes      %lld\n", static_cast<long long>(r.probes));
        std::printf("recall@1    %.3f  (hits %lld)\n", r.recall_at_1,
                    static_cast<long long>(r.hits));
        std::printf("beta0 recall %.3f (contrast, informational)\n", r.beta0_recall);
    }
    static void rq3(const kfc::bench::Rq3Result& r) {
        std::printf("iterations  %lld\n", static_cast<long long>(r.iterations));
        std::printf("mean        %8.3f ms\n", r.mean_query_ms);
        std::printf("p95         %8.3f ms\n", r.p95_query_ms);
    }
};

json manifest_to_json(const kfc::bench::CorpusManifest& manifest) {
    json arr = json::array();
    for (const auto& f : manifest) {
        json row = {{"path", f.path}};
        row["entity"] = f.entity ? json(*f.entity) : json(nullptr);
        arr.push_back(std::move(row));
    }
    return arr;
}

kfc::bench::CorpusManifest manifest_from_json(const json& arr) {
    kfc::bench::CorpusManifest manifest;
    for (const auto& row : arr) {
        kfc::bench::CorpusFile f;
        f.path = row.at("path").get<std::string>();
        if (row.contains("entity") && !row["entity"].is_null())
            f.entity = row["entity"].get<std::string>();
        manifest.push_back(std::move(f));
    }
    return manifest;
}

kfc::bench::CorpusManifest load_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) kfc::raise(kfc::ErrorKind::io, "cannot read manifest: " + path.string());
    json doc;
    in >> doc;
    return manifest_from_json(doc);
}

uint64_t directory_bytes(const fs::path& dir) {
    uint64_t total = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file()) total += entry.file_size();
    return total;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kfc - embedded single-file retrieval container"};
    app.require_subcommand(1);

    std::string container_arg;
    bool as_json = false;

    // --- init ------------------------------------------------------------
    auto* cmd_init = app.add_subcommand("init", "create an empty container");
    std::string init_path;
    cmd_init->add_option("container", init_path, "container file to create");
    cmd_init->add_flag("--json", as_json, "emit JSON");

    // --- sync ------------------------------------------------------------
    auto* cmd_sync = app.add_subcommand("sync", "index a directory into the container");
    std::vector<std::string> sync_args;
    kfc::SyncConfig sync_cfg;
    bool watch = false;
    double interval = 5.0;
    cmd_sync->add_option("args", sync_args, "container file (or via KF_CONTAINER), directory")
        ->expected(-1);
    cmd_sync->add_flag("--prune", sync_cfg.prune, "remove documents whose files vanished");
    cmd_sync->add_flag("--watch", watch, "poll for changes until interrupted");
    cmd_sync->add_option("--interval", interval, "watch interval in seconds")
        ->check(CLI::PositiveNumber);
    cmd_sync->add_option("--include", sync_cfg.include_globs,
                         "include glob (repeatable; default all files)");
    cmd_sync->add_option("--exclude", sync_cfg.exclude_globs, "exclude glob (repeatable)");
    cmd_sync->add_flag("--hidden", sync_cfg.include_hidden, "include hidden files");
    cmd_sync->add_option("--max-file-bytes", sync_cfg.max_file_bytes,
                         "skip files larger than this (default 64 MiB)");
    cmd_sync->add_flag("--json", as_json, "emit JSON report(s)");

    // --- query -----------------------------------------------------------
    auto* cmd_query = app.add_subcommand("query", "hybrid search");
    std::vector<std::string> query_args;
    kfc::SearchOptions search_opts;
    cmd_query->add_option("args", query_args,
                          "container file (or via KF_CONTAINER), query text")
        ->expected(-1);
    cmd_query->add_option("--top-k", search_opts.k, "result limit (default 10)");
    cmd_query->add_option("--alpha", search_opts.alpha, "cosine weight (default 1.0)");
    cmd_query->add_option("--beta", search_opts.beta, "substring boost weight (default 1.0)");
    cmd_query->add_flag("--collapse-docs", search_opts.collapse_docs,
                        "keep only each document's best segment");
    cmd_query->add_flag("--json", as_json, "emit JSON");

    // --- stats -----------------------------------------------------------
    auto* cmd_stats = app.add_subcommand("stats", "container statistics");
    cmd_stats->add_option("container", container_arg, "container file");
    cmd_stats->add_flag("--json", as_json, "emit JSON");

    // --- bench -----------------------------------------------------------
    auto* cmd_bench = app.add_subcommand("bench", "benchmark harness");
    cmd_bench->require_subcommand(1);
    cmd_bench->fallthrough();  // lets --json appear after the rq subcommand

    auto* bench_corpus = cmd_bench->add_subcommand("corpus", "generate a synthetic corpus");
    kfc::bench::CorpusSpec corpus_spec;
    std::string corpus_out, manifest_path;
    int64_t inject_count = 20;
    bench_corpus->add_option("--out", corpus_out, "output directory")->required();
    bench_corpus->add_option("--docs", corpus_spec.n_docs, "document count (default 1000)");
    bench_corpus->add_option("--seed", corpus_spec.seed, "PRNG seed (default 42)");
    bench_corpus->add_option("--inject", inject_count,
                             "number of injected entity codes (default 20)");
    bench_corpus->add_option("--manifest", manifest_path,
                             "manifest output path (default <out>.manifest.json)");

    auto* bench_rq1 = cmd_bench->add_subcommand("rq1", "cold vs incremental ingestion");
    std::string rq_dir, rq_container, rq_manifest;
    int64_t mutate_count = 0;
    bench_rq1->add_option("--dir", rq_dir, "corpus directory")->required();
    bench_rq1->add_option("--container", rq_container,
                          "container path (default: temporary, deleted afterward)");
    bench_rq1->add_option("--mutate", mutate_count, "files to mutate before the re-sync");

    auto* bench_rq2 = cmd_bench->add_subcommand("rq2", "entity Recall@1");
    bench_rq2->add_option("--container", rq_container, "synced container")->required();
    bench_rq2->add_option("--manifest", rq_manifest, "corpus manifest")->required();
    bench_rq2->add_option("--alpha", search_opts.alpha, "cosine weight");
    bench_rq2->add_option("--beta", search_opts.beta, "substring boost weight");

    auto* bench_rq3 = cmd_bench->add_subcommand("rq3", "query latency");
    int64_t warmup = 50, iterations = 200, reader_threads = 1;
    uint64_t rq3_seed = 42;
    bench_rq3->add_option("--container", rq_container, "synced container")->required();
    bench_rq3->add_option("--manifest", rq_manifest, "corpus manifest (for entity queries)");
    bench_rq3->add_option("--warmup", warmup, "warmup searches (default 50)");
    bench_rq3->add_option("--iterations", iterations, "timed searches (default 200)");
    bench_rq3->add_option("--seed", rq3_seed, "query-set seed (default 42)");
    bench_rq3->add_option("--threads", reader_threads,
                          "concurrent reader handles to exercise (default 1)");

    auto* bench_all = cmd_bench->add_subcommand("all", "corpus + rq1 + rq2 + rq3");
    std::string workdir;
    bench_all->add_option("--workdir", workdir, "working directory (created, must be empty)")
        ->required();
    bench_all->add_option("--docs", corpus_spec.n_docs, "document count (default 1000)");
    bench_all->add_option("--seed", corpus_spec.seed, "PRNG seed (default 42)");
    bench_all->add_option("--inject", inject_count, "injected entity codes (default 20)");
    bench_all->add_option("--warmup", warmup, "rq3 warmup searches");
    bench_all->add_option("--iterations", iterations, "rq3 timed searches");
    cmd_bench->add_flag("--json", as_json, "emit JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_init) {
            auto c = kfc::Container::create(resolve_container(init_path));
            const auto s = c.stats();
            if (as_json)
                std::cout << stats_to_json(s).dump() << "\n";
            else
                print_stats_table(s);
            return 0;
        }

        if (*cmd_sync) {
            auto [container_path, rest] = split_container_args(std::move(sync_args), 1);
            if (rest.size() != 1)
                kfc::raise(kfc::ErrorKind::precondition,
                           "sync takes exactly one directory argument");
            const std::string sync_dir = rest.front();
            auto c = kfc::Container::open(container_path, kfc::OpenMode::read_write);
            if (watch) {
                std::signal(SIGINT, on_signal);
                std::signal(SIGTERM, on_signal);
                kfc::watch_directory(
                    c, sync_dir, sync_cfg, std::chrono::duration<double>(interval),
                    [] { return g_interrupted != 0; },
                    [&](const kfc::SyncReport& r) {
                        if (as_json)
                            std::cout << kfc::sync_report_to_json(r).dump() << std::endl;
                        else
                            print_sync_table(r);
                    });
            } else {
                const auto r = kfc::sync_directory(c, sync_dir, sync_cfg);
                if (as_json)
                    std::cout << kfc::sync_report_to_json(r).dump() << "\n";
                else
                    print_sync_table(r);
            }
            return 0;
        }

        if (*cmd_query) {
            auto [container_path, words] = split_container_args(std::move(query_args), 1);
            std::string text;
            for (const auto& w : words) {
                if (!text.empty()) text += ' ';
                text += w;
            }
            auto c = kfc::Container::open(container_path, kfc::OpenMode::read_only);
            const auto results = kfc::search(c, text, search_opts);
            if (as_json)
                std::cout << results_to_json(results).dump() << "\n";
            else
                print_results_table(results);
            return 0;
        }

        if (*cmd_stats) {
            auto c = kfc::Container::open(resolve_container(container_arg),
                                          kfc::OpenMode::read_only);
            const auto s = c.stats();
            if (as_json)
                std::cout << stats_to_json(s).dump() << "\n";
            else
                print_stats_table(s);
            return 0;
        }

        if (*bench_corpus) {
            corpus_spec.entity_injections = kfc::bench::make_default_injections(
                corpus_spec.n_docs, inject_count, corpus_spec.seed);
            const auto manifest = kfc::bench::generate_corpus(corpus_spec, corpus_out);
            const fs::path mpath =
                manifest_path.empty() ? fs::path(corpus_out + ".manifest.json")
                                      : fs::path(manifest_path);
            std::ofstream out(mpath);
            out << manifest_to_json(manifest).dump(2) << "\n";
            std::printf("wrote %zu documents to %s (manifest: %s)\n", manifest.size(),
                        corpus_out.c_str(), mpath.string().c_str());
            return 0;
        }

        if (*bench_rq1) {
            const bool temporary = rq_container.empty();
            const fs::path cpath =
                temporary ? fs::temp_directory_path() /
                                ("kfc_rq1_" + std::to_string(::getpid()) + ".kfc")
                          : fs::path(rq_container);
            kfc::bench::Rq1Result r;
            {
                auto c = kfc::Container::create(cpath);
                r = kfc::bench::run_rq1(c, rq_dir, mutate_count);
            }
            if (temporary) fs::remove(cpath);
            if (as_json) {
                kfc::bench::BenchReport report;
                report.cold_seconds = r.cold_seconds;
                report.incremental_seconds = r.incremental_seconds;
                report.speedup = r.speedup;
                report.cold_docs_per_sec = r.cold_docs_per_sec;
                auto j = kfc::bench::bench_report_to_json(report);
                j["docs"] = r.docs;
                j["committed_incremental"] = r.committed_incremental;
                std::cout << j.dump() << "\n";
            } else {
                BenchPrinter::rq1(r);
            }
            return 0;
        }

        if (*bench_rq2) {
            auto c = kfc::Container::open(rq_container, kfc::OpenMode::read_only);
            const auto manifest = load_manifest(rq_manifest);
            const auto r = kfc::bench::run_rq2(c, manifest, search_opts);
            if (as_json) {
                kfc::bench::BenchReport report;
                report.recall_at_1 = r.recall_at_1;
                auto j = kfc::bench::bench_report_to_json(report);
                j["probes"] = r.probes;
                j["hits"] = r.hits;
                j["beta0_recall"] = r.beta0_recall;
                std::cout << j.dump() << "\n";
            } else {
                BenchPrinter::rq2(r);
            }
            return 0;
        }

        if (*bench_rq3) {
            auto c = kfc::Container::open(rq_container, kfc::OpenMode::read_only);
            kfc::bench::CorpusManifest manifest;
            if (!rq_manifest.empty()) manifest = load_manifest(rq_manifest);
            const auto queries = kfc::bench::make_query_set(manifest, rq3_seed);

            std::atomic<bool> stop{false};
            std::vector<std::thread> readers;
            for (int64_t t = 1; t < reader_threads; ++t)
                readers.emplace_back([&, t] {
                    auto rc = kfc::Container::open(rq_container, kfc::OpenMode::read_only);
                    size_t i = static_cast<size_t>(t);
                    while (!stop.load(std::memory_order_relaxed))
                        kfc::search(rc, queries[i++ % queries.size()]);
                });
            const auto r = kfc::bench::run_rq3(c, queries, warmup, iterations);
            stop.store(true);
            for (auto& th : readers) th.join();

            if (as_json) {
                kfc::bench::BenchReport report;
                report.mean_query_ms = r.mean_query_ms;
                report.p95_query_ms = r.p95_query_ms;
                auto j = kfc::bench::bench_report_to_json(report);
                j["iterations"] = r.iterations;
                std::cout << j.dump() << "\n";
            } else {
                BenchPrinter::rq3(r);
            }
            return 0;
        }

        if (*bench_all) {
            const fs::path wd(workdir);
            if (fs::exists(wd) && !fs::is_empty(wd))
                kfc::raise(kfc::ErrorKind::precondition,
                           "workdir not empty: " + wd.string());
            fs::create_directories(wd);
            const fs::path corpus_dir = wd / "corpus";
            const fs::path cpath = wd / "kb.kfc";

            corpus_spec.entity_injections = kfc::bench::make_default_injections(
                corpus_spec.n_docs, inject_count, corpus_spec.seed);
            const auto manifest = kfc::bench::generate_corpus(corpus_spec, corpus_dir);
            {
                std::ofstream out(wd / "manifest.json");
                out << manifest_to_json(manifest).dump(2) << "\n";
            }

            kfc::bench::BenchReport report;
            kfc::bench::Rq2Result rq2r;
            kfc::bench::Rq3Result rq3r;
            {
                auto c = kfc::Container::create(cpath);
                const auto rq1r = kfc::bench::run_rq1(c, corpus_dir, 0);
                report.cold_seconds = rq1r.cold_seconds;
                report.incremental_seconds = rq1r.incremental_seconds;
                report.speedup = rq1r.speedup;
                report.cold_docs_per_sec = rq1r.cold_docs_per_sec;
                rq2r = kfc::bench::run_rq2(c, manifest);
                report.recall_at_1 = rq2r.recall_at_1;
                rq3r = kfc::bench::run_rq3(
                    c, kfc::bench::make_query_set(manifest, corpus_spec.seed), warmup,
                    iterations);
                report.mean_query_ms = rq3r.mean_query_ms;
                report.p95_query_ms = rq3r.p95_query_ms;
            }

            const auto corpus_bytes = directory_bytes(corpus_dir);
            const auto container_bytes = static_cast<uint64_t>(fs::file_size(cpath));
            const double overhead =
                static_cast<double>(container_bytes) / static_cast<double>(corpus_bytes);

            if (as_json) {
                auto j = kfc::bench::bench_report_to_json(report);
                j["container_bytes"] = container_bytes;
                j["corpus_bytes"] = corpus_bytes;
                j["container_overhead_ratio"] = overhead;
                std::cout << j.dump() << "\n";
            } else {
                std::printf("== rq1 ==\n");
                std::printf("cold        %8.3f s  (%.1f docs/s)\n", report.cold_seconds,
                            report.cold_docs_per_sec);
                std::printf("incremental %8.3f s\n", report.incremental_seconds);
                std::printf("speedup     %8.1fx\n", report.speedup);
                std::printf("== rq2 ==\n");
                BenchPrinter::rq2(rq2r);
                std::printf("== rq3 ==\n");
                BenchPrinter::rq3(rq3r);
                std::printf("== footprint (informational) ==\n");
                std::printf("corpus    %llu bytes\ncontainer %llu bytes (%.2fx)\n",
                            static_cast<unsigned long long>(corpus_bytes),
                            static_cast<unsigned long long>(container_bytes), overhead);
            }
            return 0;
        }
    } catch (const kfc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
