#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <random>

#include <json.hpp>

#include "tcmkit/labeling.hpp"

using namespace tcmkit;

TEST_CASE("nbc") {
    CHECK(nbc(1).integer_view() == std::vector<int>{0, 1});
    CHECK(nbc(2).integer_view() == std::vector<int>{0, 1, 2, 3});
    CHECK(nbc(3).integer_view() == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("brgc") {
    CHECK(brgc(1).integer_view() == std::vector<int>{0, 1});
    CHECK(brgc(2).integer_view() == std::vector<int>{0, 1, 3, 2});
    CHECK(brgc(3).integer_view() == std::vector<int>{0, 1, 3, 2, 6, 7, 5, 4});
    // adjacent rows differ in exactly one bit, including the wraparound
    for (int m = 1; m <= 6; ++m) {
        const auto v = brgc(m).integer_view();
        for (std::size_t q = 0; q < v.size(); ++q)
            CHECK(__builtin_popcount(unsigned(v[q] ^ v[(q + 1) % v.size()])) == 1);
    }
}

TEST_CASE("labeling parse/print round trip") {
    const Labeling l = Labeling::parse("0 1 2 4 7 6 5 3");
    CHECK(l.order() == 3);
    CHECK(l.to_string() == "0 1 2 4 7 6 5 3");
    CHECK(Labeling::parse(l.to_string()) == l);
    CHECK_THROWS_AS(Labeling::parse("0 1 2"), error);
    CHECK_THROWS_AS(Labeling::parse("0 1 2 2"), error);
}

TEST_CASE("class representatives") {
    for (int m = 1; m <= 6; ++m) CHECK(class_representative(brgc(m)) == nbc(m));

    const Labeling msp = Labeling::parse("0 1 2 7 4 5 6 3");
    CHECK(class_representative(msp).to_string() == "0 1 2 4 7 6 5 3");

    const Labeling reduced = Labeling::parse("1 2 4 0 6 5 3 7");
    CHECK(class_representative(reduced) == reduced);
}

TEST_CASE("class representative is transform-invariant") {
    // exhaustive for m=2
    std::vector<int> perm = {0, 1, 2, 3};
    const auto transforms2 = enumerate_invertible(2);
    do {
        const Labeling l = Labeling::from_integers(perm, 2);
        const Labeling rep = class_representative(l);
        for (const BitMatrix& t : transforms2)
            CHECK(class_representative(l.transformed(t)) == rep);
    } while (std::next_permutation(perm.begin(), perm.end()));

    // sampled for m=3
    std::mt19937 rng(3);
    const auto transforms3 = enumerate_invertible(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> v(8);
        for (int i = 0; i < 8; ++i) v[i] = i;
        std::shuffle(v.begin(), v.end(), rng);
        const Labeling l = Labeling::from_integers(v, 3);
        const Labeling rep = class_representative(l);
        CHECK(class_representative(l.transformed(transforms3[rng() % transforms3.size()])) == rep);
    }
}

TEST_CASE("class counts") {
    using boost::multiprecision::cpp_int;
    const cpp_int mt_expected[] = {1, 6, 168, 20160, 9999360, cpp_int("20158709760")};
    const cpp_int mr_expected[] = {2, 4, 240,
                                   cpp_int("1037836800"),
                                   cpp_int("26314767838511017721856000000"),
                                   cpp_int("6294397493517172604177291817666483472544699020188"
                                           "938530498585559040000000000000")};
    for (int m = 1; m <= 6; ++m) {
        CHECK(invertible_matrix_count(m) == mt_expected[m - 1]);
        CHECK(labeling_class_count(m) == mr_expected[m - 1]);
    }
    // class count times class size is the number of labelings
    for (int m = 1; m <= 6; ++m) {
        cpp_int fact = 1;
        for (int q = 2; q <= (1 << m); ++q) fact *= q;
        CHECK(invertible_matrix_count(m) * labeling_class_count(m) == fact);
    }
}

TEST_CASE("bundled class count table agrees with the formulas") {
    std::ifstream in(std::string(TCMKIT_DATA_DIR) + "/labeling_class_counts.json");
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    REQUIRE(j.at("rows").size() == 6);
    for (const auto& row : j.at("rows")) {
        const int m = row.at("m").get<int>();
        CHECK(labeling_class_count(m).str() == row.at("classes").get<std::string>());
        CHECK(invertible_matrix_count(m).str() == row.at("class_size").get<std::string>());
    }
}

TEST_CASE("reversal and rotation helpers") {
    const Labeling l = Labeling::parse("0 1 2 4 7 6 5 3");
    CHECK(l.reversed().to_string() == "3 5 6 7 4 2 1 0");
    CHECK(l.rotated(1).to_string() == "3 0 1 2 4 7 6 5");
    CHECK(l.rotated(8) == l);
    CHECK(l.rotated(3).rotated(-3) == l);
}
