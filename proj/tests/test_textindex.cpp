#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <unordered_map>

#include <kfc/textindex.hpp>

using namespace kfc;

TEST_CASE("tokenize basics") {
    CHECK(tokenize("Hello, World!") == std::vector<std::string>{"hello", "world"});
    CHECK(tokenize("UNIQUE_INVOICE_CODE_XYZ_999") ==
          std::vector<std::string>{"unique", "invoice", "code", "xyz", "999"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("a-b.c_d") == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(tokenize("v2.1.7") == std::vector<std::string>{"v2", "1", "7"});
    CHECK(tokenize("  42  ") == std::vector<std::string>{"42"});
    CHECK(tokenize("x") == std::vector<std::string>{"x"});  // length-1 kept
}

TEST_CASE("tokenize folds case and handles non-ascii letters") {
    CHECK(tokenize("Caf\xC3\xA9 MENU") == std::vector<std::string>{"caf\xC3\xA9", "menu"});
    CHECK(tokenize("\xC3\x9C" "ber") == std::vector<std::string>{"\xC3\xBC" "ber"});
}

TEST_CASE("sublinear_tf frozen values") {
    CHECK(sublinear_tf(1) == 1.0);
    CHECK(std::abs(sublinear_tf(10) - 3.302585092994046) < 1e-12);
    CHECK_THROWS_AS(sublinear_tf(0), Error);
}

TEST_CASE("sublinear_tf is monotone") {
    double prev = 0.0;
    for (uint64_t f = 1; f < 200; ++f) {
        const double v = sublinear_tf(f);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("idf frozen values") {
    CHECK(idf(10, 9) == 1.0);  // ln(1) = 0
    CHECK(std::abs(idf(100, 9) - 3.302585092994046) < 1e-12);
    CHECK(std::abs(idf(1, 1) - 0.3068528194400547) < 1e-12);
    CHECK_THROWS_AS(idf(10, 0), Error);
    CHECK_THROWS_AS(idf(10, 11), Error);
    CHECK_THROWS_AS(idf(0, 0), Error);
}

TEST_CASE("idf positive and monotone in df") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        // N sampled logarithmically in [1, 1e6]
        const double exp = std::uniform_real_distribution<double>(0.0, 6.0)(rng);
        const auto n = static_cast<int64_t>(std::pow(10.0, exp));
        const auto df1 = static_cast<int64_t>(
            std::uniform_int_distribution<int64_t>(1, n)(rng));
        CHECK(idf(n, df1) > 0.0);
        if (df1 < n) CHECK(idf(n, df1) > idf(n, df1 + 1));
    }
}

TEST_CASE("build_document_vector counts and weights") {
    std::unordered_map<std::string, int64_t> persisted;
    TermStaging staging(&persisted, 1);
    const auto vec = build_document_vector({"a", "b", "a"}, staging);
    REQUIRE(vec.size() == 2);
    // a registered first -> term_id 1 with count 2; b -> term_id 2 count 1
    CHECK(vec.entries[0].first == 1);
    CHECK(std::abs(vec.entries[0].second - 1.6931471805599454) < 1e-12);
    CHECK(vec.entries[1].first == 2);
    CHECK(vec.entries[1].second == 1.0);
}

TEST_CASE("document vector is order independent (bag of words)") {
    std::unordered_map<std::string, int64_t> persisted{{"a", 1}, {"b", 2}, {"c", 3}};
    TermStaging s1(&persisted, 4), s2(&persisted, 4);
    const auto v1 = build_document_vector({"a", "b", "c", "a"}, s1);
    const auto v2 = build_document_vector({"c", "a", "a", "b"}, s2);
    CHECK(v1.entries == v2.entries);
}

TEST_CASE("single token vector") {
    std::unordered_map<std::string, int64_t> persisted{{"x", 9}};
    TermStaging staging(&persisted, 10);
    const auto vec = build_document_vector({"x"}, staging);
    REQUIRE(vec.size() == 1);
    CHECK(vec.entries[0] == std::pair<int64_t, double>{9, 1.0});
    CHECK(staging.new_terms().empty());
}

TEST_CASE("empty token stream yields empty vector") {
    std::unordered_map<std::string, int64_t> persisted;
    TermStaging staging(&persisted, 1);
    CHECK(build_document_vector({}, staging).empty());
}

TEST_CASE("staging assigns stable provisional ids") {
    std::unordered_map<std::string, int64_t> persisted{{"known", 5}};
    TermStaging staging(&persisted, 7);
    CHECK(staging.id_for("known") == 5);
    CHECK(staging.id_for("fresh") == 7);
    CHECK(staging.id_for("fresh") == 7);
    CHECK(staging.id_for("newer") == 8);
    CHECK(staging.next_term_id() == 9);
    REQUIRE(staging.new_terms().size() == 2);
    CHECK(staging.new_terms()[0].first == "fresh");
}

TEST_CASE("weighted_norm") {
    IdfTable table;
    table.total_segments = 10;

    SECTION("single term with tf=1, idf=1") {
        table.df = {{1, 9}};  // idf(10, 9) == 1
        SparseVector v{{{1, 1.0}}};
        CHECK(weighted_norm(v, table) == 1.0);
    }
    SECTION("3-4-5 triangle") {
        table.df = {{1, 9}, {2, 9}};
        SparseVector v{{{1, 3.0}, {2, 4.0}}};
        CHECK(weighted_norm(v, table) == 5.0);
    }
    SECTION("empty vector signals zero") {
        CHECK(weighted_norm(SparseVector{}, table) == 0.0);
    }
}

TEST_CASE("sparse vector codec round trip") {
    SparseVector v{{{1, 1.0}, {7, 1.6931471805599454}, {4294967295LL, 42.5}}};
    const auto blob = encode_sparse_vector(v);
    CHECK(blob.size() == 4 + 3 * 12);
    const auto back = decode_sparse_vector(blob);
    CHECK(back.entries == v.entries);  // bitwise-equal weights
}

TEST_CASE("sparse vector codec rejects bad input") {
    SparseVector unsorted{{{5, 1.0}, {3, 1.0}}};
    CHECK_THROWS_AS(encode_sparse_vector(unsorted), Error);
    SparseVector nonpositive{{{1, 0.0}}};
    CHECK_THROWS_AS(encode_sparse_vector(nonpositive), Error);
    CHECK_THROWS_AS(decode_sparse_vector("abc"), Error);
    CHECK_THROWS_AS(decode_sparse_vector(std::string(17, '\0')), Error);
}
