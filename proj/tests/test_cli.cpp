// End-to-end checks of the installed command grammar, running the real
// binary (path injected by the build as KFC_CLI_BIN).

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "helpers.hpp"

using nlohmann::json;
using testutil::temp_dir;
using testutil::temp_path;
using testutil::write_file;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Runs `<prefix> <binary> <args>` through the shell, capturing stdout.
CliResult run_cli(const std::string& args, const std::string& prefix = "") {
    const std::string cmd =
        prefix + (prefix.empty() ? "" : " ") + KFC_CLI_BIN + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

} // namespace

TEST_CASE("cli init lifecycle and exit codes") {
    const auto kb = temp_path("cli_init") += ".kfc";

    auto r = run_cli("init " + q(kb));
    CHECK(r.exit_code == 0);
    CHECK(std::filesystem::exists(kb));

    r = run_cli("init " + q(kb));  // already exists
    CHECK(r.exit_code == 2);

    r = run_cli("init /nonexistent_parent_dir/kb.kfc");  // I/O failure
    CHECK(r.exit_code == 1);
}

TEST_CASE("cli sync, stats and query flow") {
    const auto kb = temp_path("cli_flow") += ".kfc";
    const auto dir = temp_dir("cli_flow_corpus");
    write_file(dir / "a.txt", "alpha document about ledgers\n");
    write_file(dir / "b.txt", "bravo document with ref INV-2024 inside\n");
    write_file(dir / "c.txt", "charlie document about kernels\n");

    REQUIRE(run_cli("init " + q(kb)).exit_code == 0);

    auto r = run_cli("sync " + q(kb) + " " + q(dir) + " --json");
    REQUIRE(r.exit_code == 0);
    auto report = json::parse(r.out);
    CHECK(report["added"] == 3);
    CHECK(report["scanned"] == 3);

    r = run_cli("sync " + q(kb) + " " + q(dir) + " --json");
    REQUIRE(r.exit_code == 0);
    report = json::parse(r.out);
    CHECK(report["skipped"] == 3);
    CHECK(report["added"] == 0);

    r = run_cli("stats " + q(kb) + " --json");
    REQUIRE(r.exit_code == 0);
    const auto stats = json::parse(r.out);
    CHECK(stats["documents"] == 3);
    CHECK(stats["segments"] == 3);
    CHECK(stats["terms"].get<int>() > 0);
    CHECK(stats["file_bytes"].get<int64_t>() > 0);

    // Entity query: rank 1, boosted, correct file.
    r = run_cli("query " + q(kb) + " INV-2024 --json");
    REQUIRE(r.exit_code == 0);
    const auto hits = json::parse(r.out);
    REQUIRE(hits.is_array());
    REQUIRE_FALSE(hits.empty());
    CHECK(hits[0]["source_path"] == "b.txt");
    CHECK(hits[0]["boosted"] == true);
    CHECK(hits[0]["score"].get<double>() > 1.0);

    // Multi-word positional query joins; table output prints a header row.
    r = run_cli("query " + q(kb) + " alpha ledgers");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("rank") != std::string::npos);
    CHECK(r.out.find("a.txt") != std::string::npos);

    // Unknown-term, no-substring query: empty result set, still exit 0.
    r = run_cli("query " + q(kb) + " zzyzxunseen --json");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out).empty());

    // Empty query is a usage error.
    r = run_cli("query " + q(kb) + " ''");
    CHECK(r.exit_code == 2);

    // --top-k caps the row count.
    r = run_cli("query " + q(kb) + " document --top-k 2 --json");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out).size() <= 2);
}

TEST_CASE("cli reads the container path from KF_CONTAINER") {
    const auto kb = temp_path("cli_env") += ".kfc";
    REQUIRE(run_cli("init " + q(kb)).exit_code == 0);

    const auto r = run_cli("stats --json", "KF_CONTAINER=" + q(kb));
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["documents"] == 0);

    // No positional and no env: usage error.
    const auto bare = run_cli("stats", "env -u KF_CONTAINER");
    CHECK(bare.exit_code != 0);
}

TEST_CASE("cli maps open failures to scripting-friendly exit codes") {
    // Missing container file: I/O class.
    auto r = run_cli("stats /definitely/not/there.kfc");
    CHECK(r.exit_code == 1);

    // Foreign file: header/contract class.
    const auto textfile = temp_path("cli_foreign") += ".txt";
    write_file(textfile, "not a container");
    r = run_cli("stats " + q(textfile));
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli watch terminates cleanly on SIGINT") {
    const auto kb = temp_path("cli_watch") += ".kfc";
    const auto dir = temp_dir("cli_watch_corpus");
    write_file(dir / "w.txt", "watched file\n");
    REQUIRE(run_cli("init " + q(kb)).exit_code == 0);

    const auto r = run_cli("sync " + q(kb) + " " + q(dir) +
                               " --watch --interval 0.2 --json",
                           "timeout --preserve-status -s INT 1");
    CHECK(r.exit_code == 0);
    // One JSON object per pass; at least the first pass must have run.
    REQUIRE(r.out.find("\"scanned\"") != std::string::npos);
    const auto first_line = r.out.substr(0, r.out.find('\n'));
    CHECK(json::parse(first_line)["added"] == 1);
}

TEST_CASE("cli bench all produces a full report on a small corpus") {
    const auto wd = temp_path("cli_bench");
    const auto r = run_cli("bench --json all --workdir " + q(wd) +
                           " --docs 40 --inject 4 --iterations 20 --warmup 5");
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["speedup"].get<double>() > 0.0);
    CHECK(j["recall_at_1"] == 1.0);
    CHECK(j["mean_query_ms"].get<double>() >= 0.0);
    CHECK(j["p95_query_ms"].get<double>() >= 0.0);
    CHECK(j["cold_docs_per_sec"].get<double>() > 0.0);
    CHECK(j["container_overhead_ratio"].get<double>() > 0.0);
}

TEST_CASE("cli bench corpus writes manifest next to the corpus") {
    const auto out = temp_path("cli_corpus");
    const auto r = run_cli("bench corpus --out " + q(out) + " --docs 10 --inject 2");
    REQUIRE(r.exit_code == 0);
    CHECK(std::filesystem::exists(out / "doc_0.txt"));
    CHECK(std::filesystem::exists(out.string() + ".manifest.json"));
    const auto manifest =
        json::parse(testutil::read_file(out.string() + ".manifest.json"));
    CHECK(manifest.size() == 10);
}
