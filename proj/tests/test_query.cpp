#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <kfc/query.hpp>

#include "helpers.hpp"

using namespace kfc;
using testutil::commit_text;
using testutil::DenseOracle;
using testutil::temp_path;

namespace {

// Random small corpus drawn from a fixed word list; one segment per doc.
std::vector<std::string> random_corpus(std::mt19937_64& rng, size_t n_segments) {
    const std::vector<std::string> words = {
        "invoice", "ledger",  "payment", "kernel", "thread", "buffer",
        "vendor",  "account", "socket",  "index",  "query",  "batch"};
    std::vector<std::string> texts;
    for (size_t i = 0; i < n_segments; ++i) {
        std::string t;
        const size_t len = 3 + rng() % 25;
        for (size_t w = 0; w < len; ++w) {
            t += words[rng() % words.size()];
            t += ' ';
        }
        t.pop_back();
        texts.push_back(t);
    }
    return texts;
}

std::string random_query(std::mt19937_64& rng) {
    const std::vector<std::string> words = {
        "invoice", "ledger", "payment", "kernel", "thread",
        "buffer",  "vendor", "account", "missingterm"};
    std::string q;
    const size_t len = 1 + rng() % 3;
    for (size_t w = 0; w < len; ++w) {
        q += words[rng() % words.size()];
        q += ' ';
    }
    q.pop_back();
    return q;
}

} // namespace

TEST_CASE("build_query_plan shapes and errors") {
    const auto path = temp_path("plan") += ".kfc";
    auto c = Container::create(path);
    commit_text(c, "a.txt", "hello there world");

    SECTION("repeated single known term normalizes to weight 1") {
        const auto plan = build_query_plan(c, "hello hello");
        REQUIRE(plan.query_vector.size() == 1);
        CHECK(std::abs(plan.query_vector.entries[0].second - 1.0) < 1e-12);
        CHECK(plan.needle == "hello hello");
    }
    SECTION("unknown terms yield an empty but valid plan") {
        const auto plan = build_query_plan(c, "zzyzx qwerty");
        CHECK(plan.query_vector.empty());
        CHECK(plan.needle == "zzyzx qwerty");
    }
    SECTION("empty and whitespace queries are rejected") {
        CHECK_THROWS_MATCHES(build_query_plan(c, ""), Error,
                             Catch::Matchers::Predicate<Error>([](const Error& e) {
                                 return e.kind() == ErrorKind::empty_query;
                             }));
        CHECK_THROWS_AS(build_query_plan(c, "   \t  "), Error);
    }
    SECTION("degenerate weights are rejected") {
        SearchOptions opts;
        opts.alpha = 0.0;
        opts.beta = 0.0;
        CHECK_THROWS_MATCHES(build_query_plan(c, "hello", opts), Error,
                             Catch::Matchers::Predicate<Error>([](const Error& e) {
                                 return e.kind() == ErrorKind::degenerate_weights;
                             }));
    }
    SECTION("needle folds case and normalizes") {
        const auto plan = build_query_plan(c, "  HeLLo   WORLD ");
        CHECK(plan.needle == "hello world");
    }
}

TEST_CASE("substring_indicator") {
    CHECK(substring_indicator("inv-2024", "quarterly ref INV-2024 attached") == 1);
    CHECK(substring_indicator("abc", "a b c") == 0);  // contiguity required
    CHECK(substring_indicator("whole content", "whole content") == 1);
    CHECK(substring_indicator("caf\xC3\xA9", "Visit the CAF\xC3\x89 now") == 1);
    // NFC on the content side: decomposed e + acute matches composed needle.
    CHECK(substring_indicator("caf\xC3\xA9", "cafe\xCC\x81 menu") == 1);
    CHECK_THROWS_AS(substring_indicator("", "anything"), Error);
}

TEST_CASE("cosine self-similarity is 1") {
    const auto path = temp_path("selfsim") += ".kfc";
    auto c = Container::create(path);
    const std::string text = "ledger payment vendor account batch";
    commit_text(c, "only.txt", text);

    const auto results = search(c, text, {1.0, 0.0, 5});
    REQUIRE(results.size() == 1);
    CHECK(std::abs(results[0].cosine - 1.0) < 1e-12);
}

TEST_CASE("segments sharing no query terms are absent from the cosine map") {
    const auto path = temp_path("absent") += ".kfc";
    auto c = Container::create(path);
    commit_text(c, "a.txt", "kernel thread buffer");
    commit_text(c, "b.txt", "invoice ledger payment");

    const auto plan = build_query_plan(c, "kernel");
    const auto cos = cosine_accumulate(c, plan.query_vector);
    REQUIRE(cos.size() == 1);
    const auto doc_b = c.find_document("b.txt");
    for (const auto& [seg_id, _] : cos)
        CHECK(c.get_segment(seg_id)->doc_id != doc_b->doc_id);
}

TEST_CASE("posting-list cosine matches the dense oracle on random corpora") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 8; ++trial) {
        const auto texts = random_corpus(rng, 5 + rng() % 20);
        const auto path = temp_path("oracle") += ".kfc";
        auto c = Container::create(path);
        for (size_t i = 0; i < texts.size(); ++i)
            commit_text(c, "doc" + std::to_string(i) + ".txt", texts[i]);
        DenseOracle oracle(texts);

        for (int q = 0; q < 6; ++q) {
            const auto query = random_query(rng);
            const auto plan = build_query_plan(c, query);
            const auto cos = cosine_accumulate(c, plan.query_vector);

            const auto expected = oracle.candidates(query);
            REQUIRE(cos.size() == expected.size());
            for (const auto& [seg_id, value] : cos) {
                const auto seg = c.get_segment(seg_id);
                const auto doc = c.document_by_id(seg->doc_id);
                // doc<i>.txt maps back to oracle index i
                const size_t idx = std::stoul(doc->source_path.substr(3));
                REQUIRE(expected.contains(idx));
                CHECK(std::abs(value - oracle.cosine(query, idx)) < 1e-9);
            }
        }
    }
}

TEST_CASE("candidate_boost_scan finds all needle segments corpus-wide") {
    const auto path = temp_path("boostscan") += ".kfc";
    auto c = Container::create(path);
    for (int i = 0; i < 30; ++i) {
        std::string body = "filler words body number " + std::to_string(i);
        if (i == 7 || i == 13 || i == 21) body += " NEEDLE-42 present";
        commit_text(c, "d" + std::to_string(i) + ".txt", body);
    }

    const auto plan = build_query_plan(c, "NEEDLE-42");
    const auto hits = candidate_boost_scan(c, plan.needle);
    CHECK(hits.size() == 3);

    CHECK(candidate_boost_scan(c, "notpresentanywhere").empty());

    // Entity whose tokens are all unknown still reaches its segment.
    commit_text(c, "code.txt", "ref UNIQUE_ENTITY_CODE_QQQ_777 attached");
    const auto results = search(c, "UNIQUE_ENTITY_CODE_QQQ_777");
    REQUIRE_FALSE(results.empty());
    CHECK(results[0].source_path == "code.txt");
    CHECK(results[0].boosted);
}

TEST_CASE("score decomposition is exact and within range") {
    const auto path = temp_path("decomp") += ".kfc";
    auto c = Container::create(path);
    for (int i = 0; i < 12; ++i)
        commit_text(c, "d" + std::to_string(i) + ".txt",
                    "vendor account " + std::string(i % 3, 'x') + " shared words " +
                        (i % 4 == 0 ? "special marker" : "plain body"));

    for (const double alpha : {1.0, 0.5, 2.0})
        for (const double beta : {0.0, 1.0, 3.0}) {
            if (alpha == 0.0 && beta == 0.0) continue;
            const auto results =
                search(c, "special marker shared", {alpha, beta, 50});
            for (const auto& r : results) {
                CHECK(r.score == alpha * r.cosine + beta * (r.boosted ? 1.0 : 0.0));
                CHECK(r.cosine >= 0.0);
                CHECK(r.cosine <= 1.0);
            }
        }
}

TEST_CASE("beta=0 ranking equals pure cosine ordering") {
    std::mt19937_64 rng(777);
    const auto texts = random_corpus(rng, 20);
    const auto path = temp_path("beta0") += ".kfc";
    auto c = Container::create(path);
    for (size_t i = 0; i < texts.size(); ++i)
        commit_text(c, "doc" + std::to_string(i) + ".txt", texts[i]);

    const auto query = "invoice ledger";
    const auto results = search(c, query, {1.0, 0.0, 100});
    const auto plan = build_query_plan(c, query);
    auto cos = cosine_accumulate(c, plan.query_vector);

    REQUIRE(results.size() == cos.size());
    double prev = 2.0;
    for (const auto& r : results) {
        CHECK(r.score == 1.0 * r.cosine);
        CHECK(r.cosine <= prev);
        prev = r.cosine;
        CHECK(std::abs(cos.at(r.segment_id) - r.cosine) == 0.0);
    }
}

TEST_CASE("forcing property: the needle segment always ranks first") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 25; ++trial) {
        const auto path = temp_path("forcing") += ".kfc";
        auto c = Container::create(path);
        const auto texts = random_corpus(rng, 5 + rng() % 15);
        for (size_t i = 0; i < texts.size(); ++i)
            commit_text(c, "doc" + std::to_string(i) + ".txt", texts[i]);
        // One extra segment carries the needle; its other words are drawn
        // from the same pool so cosine noise is real.
        const std::string needle = "ZK-" + std::to_string(1000 + trial);
        commit_text(c, "target.txt", texts[trial % texts.size()] + " " + needle);

        const auto results = search(c, needle, {1.0, 1.0, 5});
        REQUIRE_FALSE(results.empty());
        CHECK(results[0].source_path == "target.txt");
        CHECK(results[0].boosted);
        for (size_t i = 1; i < results.size(); ++i)
            CHECK_FALSE(results[i].boosted);
    }
}

TEST_CASE("tie-break prefers boosted, then cosine, then lower segment id") {
    const auto path = temp_path("tiebreak") += ".kfc";
    auto c = Container::create(path);
    // Two identical twin docs: identical cosine, same boost state; the one
    // with the lower segment id must come first.
    commit_text(c, "twin1.txt", "mirror body words");
    commit_text(c, "twin2.txt", "mirror body words");

    auto results = search(c, "mirror body", {1.0, 1.0, 10});
    REQUIRE(results.size() == 2);
    CHECK(results[0].segment_id < results[1].segment_id);
    CHECK(results[0].score == results[1].score);

    // alpha=0: a boosted zero-cosine segment must outrank non-boosted ones.
    commit_text(c, "boosted.txt", "XQJ-CODE inside");
    results = search(c, "mirror body XQJ-CODE", {0.0, 1.0, 10});
    REQUIRE_FALSE(results.empty());
    CHECK(results[0].source_path == "boosted.txt");
}

TEST_CASE("monotone in beta: raising beta never demotes a boosted result") {
    const auto path = temp_path("beta_monotone") += ".kfc";
    auto c = Container::create(path);
    commit_text(c, "a.txt", "alpha shared shared shared words");
    commit_text(c, "b.txt", "marker alpha words");

    const auto rank_of = [&](double beta, const std::string& path_want) {
        const auto results = search(c, "alpha shared marker", {1.0, beta, 10});
        for (size_t i = 0; i < results.size(); ++i)
            if (results[i].source_path == path_want) return static_cast<int>(i);
        return 1 << 20;
    };
    int prev = rank_of(0.0, "b.txt");
    for (const double beta : {0.25, 0.5, 1.0, 2.0, 8.0}) {
        const int now = rank_of(beta, "b.txt");
        CHECK(now <= prev);
        prev = now;
    }
}

TEST_CASE("k truncation and collapse-docs") {
    const auto path = temp_path("topk") += ".kfc";
    auto c = Container::create(path);
    // Multi-segment doc: every segment matches; collapse keeps the best one.
    std::string multi;
    for (int i = 0; i < 4; ++i) {
        multi += "shared words block " + std::to_string(i);
        for (int w = 0; w < 320; ++w) multi += " filler" + std::to_string(i);
        multi += "\n\n";  // ~2900 chars per paragraph, one segment each
    }
    commit_text(c, "multi.txt", multi);
    commit_text(c, "single.txt", "shared words single");

    auto results = search(c, "shared words", {1.0, 1.0, 3});
    CHECK(results.size() == 3);

    results = search(c, "shared words", {1.0, 1.0, 100});
    CHECK(results.size() > 2);  // several segments of multi.txt match

    SearchOptions collapse;
    collapse.k = 100;
    collapse.collapse_docs = true;
    results = search(c, "shared words", collapse);
    REQUIRE(results.size() == 2);  // one row per document
    CHECK(results[0].source_path != results[1].source_path);

    // k larger than the corpus returns every scorable segment.
    results = search(c, "shared", {1.0, 1.0, 10000});
    CHECK(results.size() >= 5);
}

TEST_CASE("unknown-term no-substring query returns empty result set") {
    const auto path = temp_path("noresults") += ".kfc";
    auto c = Container::create(path);
    commit_text(c, "a.txt", "regular content here");
    CHECK(search(c, "zzyzx").empty());
}

TEST_CASE("snippets center on the boosted match") {
    const auto path = temp_path("snippet") += ".kfc";
    auto c = Container::create(path);
    std::string body(700, 'a');
    body += " TARGET-99 ";
    body += std::string(700, 'b');
    commit_text(c, "long.txt", body);

    auto results = search(c, "TARGET-99");
    REQUIRE(results.size() == 1);
    CHECK(results[0].snippet.find("target-99") == std::string::npos);
    CHECK(results[0].snippet.find("TARGET-99") != std::string::npos);
    CHECK(uni::codepoint_count(results[0].snippet) <= 200);

    // Non-boosted results (cosine hit, no exact phrase) use the segment head.
    commit_text(c, "plain.txt",
                std::string(500, 'z') + " keyword near the very end of this text");
    results = search(c, "keyword nowherephrase", {1.0, 1.0, 5});
    REQUIRE_FALSE(results.empty());
    CHECK_FALSE(results[0].boosted);
    CHECK(uni::codepoint_count(results[0].snippet) <= 200);
    CHECK(results[0].snippet.substr(0, 3) == "zzz");  // head, not match-centered
}

TEST_CASE("search is deterministic for a fixed container state") {
    const auto path = temp_path("determinism") += ".kfc";
    auto c = Container::create(path);
    std::mt19937_64 rng(55);
    const auto texts = random_corpus(rng, 18);
    for (size_t i = 0; i < texts.size(); ++i)
        commit_text(c, "doc" + std::to_string(i) + ".txt", texts[i]);

    const auto a = search(c, "invoice kernel buffer", {1.0, 1.0, 20});
    const auto b = search(c, "invoice kernel buffer", {1.0, 1.0, 20});
    auto reopened = Container::open(path, OpenMode::read_only);
    const auto d = search(reopened, "invoice kernel buffer", {1.0, 1.0, 20});
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == d.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].segment_id == b[i].segment_id);
        CHECK(a[i].score == b[i].score);
        CHECK(a[i].segment_id == d[i].segment_id);
        CHECK(a[i].score == d[i].score);
    }
}
