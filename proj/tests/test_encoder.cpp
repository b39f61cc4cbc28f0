#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "tcmkit/encoder.hpp"
#include "tcmkit/labeling.hpp"

using namespace tcmkit;

namespace {

bool universe_contains(int k, int m, const std::vector<int>& split, const std::string& octal) {
    EncoderEnumerator e(k, m, split);
    while (auto spec = e.next())
        if (spec->to_octal_string() == octal) return true;
    return false;
}

}  // namespace

TEST_CASE("octal parsing round trips") {
    const EncoderSpec g13_4 = EncoderSpec::parse_octal("[13,4]", 2, 3);
    CHECK(g13_4.inputs() == 1);
    CHECK(g13_4.memories() == std::vector<int>{3});
    CHECK(g13_4.taps().to_binary_string() == "10/01/10/10");
    CHECK(g13_4.to_octal_string() == "[13,4]");

    const EncoderSpec g2 = EncoderSpec::parse_octal("[1,1,1;2,31,0]", 3, 4);
    CHECK(g2.memories() == std::vector<int>{0, 4});
    CHECK(g2.to_octal_string() == "[1,1,1;2,31,0]");

    // split inference with zero slack
    const EncoderSpec g3 = EncoderSpec::parse_octal("[1,2,0;30,25,10]", 3, 5);
    CHECK(g3.memories() == std::vector<int>{1, 4});

    // ambiguous split
    CHECK_THROWS_AS(EncoderSpec::parse_octal("[1,1,1;1,3,0]", 3, 2), error);
    const std::vector<int> split{0, 2};
    CHECK(EncoderSpec::parse_octal("[1,1,1;1,3,0]", 3, 2, &split).memories() == split);

    CHECK_THROWS_AS(EncoderSpec::parse_octal("[13,4]", 2, 2), error);
    CHECK_THROWS_AS(EncoderSpec::parse_octal("[13;4]", 2, 3), error);
}

TEST_CASE("encode worked sequences") {
    const EncoderSpec g13_4 = EncoderSpec::parse_octal("[13,4]", 2, 3);
    CHECK(encode(g13_4, {1, 0, 0, 0}) == std::vector<int>{2, 1, 2, 2});
    CHECK(encode(g13_4, {0, 0, 0, 0, 0}) == std::vector<int>{0, 0, 0, 0, 0});

    const EncoderSpec g3_1 = EncoderSpec::parse_octal("[3,1]", 2, 1);
    CHECK(encode(g3_1, {1, 0}) == std::vector<int>{2, 3});
}

TEST_CASE("encode is linear") {
    std::mt19937 rng(5);
    const EncoderSpec spec = EncoderSpec::parse_octal("[1,2,0;4,5,2]", 3, 3, nullptr);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> a(12), b(12), axb(12);
        for (int i = 0; i < 12; ++i) {
            a[i] = static_cast<int>(rng() % 4);
            b[i] = static_cast<int>(rng() % 4);
            axb[i] = a[i] ^ b[i];
        }
        const auto ea = encode(spec, a);
        const auto eb = encode(spec, b);
        const auto eaxb = encode(spec, axb);
        for (int i = 0; i < 12; ++i) CHECK((ea[i] ^ eb[i]) == eaxb[i]);
    }
}

TEST_CASE("trellis structure") {
    // memoryless: one state, all branches loop back
    const EncoderSpec uncoded(std::vector<int>{0}, 1, BitMatrix::parse_binary("1"));
    const TrellisSection t0(uncoded);
    CHECK(t0.state_count() == 1);
    CHECK(t0.branch_count() == 2);
    CHECK(t0.next_state(0, 0) == 0);
    CHECK(t0.next_state(0, 1) == 0);

    const EncoderSpec g3_1 = EncoderSpec::parse_octal("[3,1]", 2, 1);
    const TrellisSection t(g3_1);
    CHECK(t.next_state(0, 1) == 1);
    CHECK(t.output(0, 1) == 2);   // (i XOR reg, reg) with reg = 0
    CHECK(t.output(1, 1) == 1);
    CHECK(t.branch_count() == 4);

    for (const char* g : {"[13,4]", "[13,17]"}) {
        const EncoderSpec spec = EncoderSpec::parse_octal(g, 2, 3);
        const TrellisSection tr(spec);
        CHECK(tr.branch_count() == (1 << 3) * 2);
    }

    // k=2 with an ungated first input: that input does not move the state
    const std::vector<int> split{0, 2};
    const EncoderSpec g2 = EncoderSpec::parse_octal("[1,0,0;0,5,2]", 3, 2, &split);
    const TrellisSection t2(g2);
    for (int s = 0; s < 4; ++s)
        for (int in = 0; in < 4; ++in)
            CHECK(t2.next_state(s, in) == t2.next_state(s, in & 1));
}

TEST_CASE("catastrophic detection") {
    CHECK(is_noncatastrophic(EncoderSpec::parse_octal("[13,17]", 2, 3)));
    CHECK(is_noncatastrophic(EncoderSpec::parse_octal("[13,4]", 2, 3)));
    CHECK_FALSE(is_noncatastrophic(EncoderSpec::parse_octal("[3,3]", 2, 1)));
    // classic catastrophic pair: both generators divisible by 1+D
    CHECK_FALSE(is_noncatastrophic(EncoderSpec::parse_octal("[6,3]", 2, 2)));
}

TEST_CASE("equally likely symbols requires full output rank") {
    const std::vector<int> split{0, 2};
    CHECK(has_equally_likely_symbols(EncoderSpec::parse_octal("[1,0,0;0,5,2]", 3, 2, &split)));
    CHECK(has_equally_likely_symbols(EncoderSpec::parse_octal("[3,1]", 2, 1)));
    // duplicate output columns cannot reach rank m
    CHECK_FALSE(has_equally_likely_symbols(EncoderSpec::parse_octal("[3,3]", 2, 1)));
    // zero output column
    CHECK_FALSE(has_equally_likely_symbols(EncoderSpec::parse_octal("[3,0]", 2, 1)));
}

TEST_CASE("universe enumeration") {
    CHECK(universe_contains(1, 2, {1}, "[3,1]"));
    CHECK(universe_contains(1, 2, {3}, "[13,4]"));
    CHECK(universe_contains(1, 2, {3}, "[13,17]"));
    CHECK(universe_contains(2, 3, {0, 1}, "[1,1,1;1,3,0]"));

    // every streamed encoder passes both universe filters and has full
    // effective memory per register
    EncoderEnumerator e(1, 2, {2});
    std::vector<std::string> seen;
    while (auto spec = e.next()) {
        CHECK(is_noncatastrophic(*spec));
        CHECK(has_equally_likely_symbols(*spec));
        bool first = false, last = false;
        for (int l = 0; l < 2; ++l) {
            first |= spec->taps().get(0, l) != 0;
            last |= spec->taps().get(2, l) != 0;
        }
        CHECK(first);
        CHECK(last);
        seen.push_back(spec->to_octal_string());
    }
    // stream order is lexicographic on the octal generator tuples
    auto tuple_of = [](const std::string& s) {
        std::vector<unsigned long> v;
        std::string cur;
        for (char c : s) {
            if (c >= '0' && c <= '7') cur += c;
            else if (!cur.empty()) { v.push_back(std::stoul(cur, nullptr, 8)); cur.clear(); }
        }
        return v;
    };
    CHECK(std::is_sorted(seen.begin(), seen.end(), [&](const auto& a, const auto& b) {
        return tuple_of(a) < tuple_of(b);
    }));
    CHECK_FALSE(seen.empty());
    // degenerate-memory matrices are not in the stream
    CHECK(std::find(seen.begin(), seen.end(), "[2,1]") == seen.end());
}

TEST_CASE("memory splits enumerate lexicographically") {
    CHECK(memory_splits(1, 3) == std::vector<std::vector<int>>{{3}});
    CHECK(memory_splits(2, 2) ==
          std::vector<std::vector<int>>{{0, 2}, {1, 1}, {2, 0}});
}

TEST_CASE("transform identity between the two worked encoders") {
    const BitMatrix t_inv = BitMatrix::parse_binary("11/01");
    const EncoderSpec g13_17 = EncoderSpec::parse_octal("[13,17]", 2, 3);
    const EncoderSpec g13_4 = EncoderSpec::parse_octal("[13,4]", 2, 3);
    CHECK(multiply(g13_17.taps(), t_inv) == g13_4.taps());
}

TEST_CASE("transforming encoder and labeling together preserves the symbol stream") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 2);
        const int k = 1 + static_cast<int>(rng() % std::min(2, m));
        const int nu = 1 + static_cast<int>(rng() % 3);
        const auto splits = memory_splits(k, nu);
        const auto& split = splits[rng() % splits.size()];

        BitMatrix taps(nu + k, m);
        for (int r = 0; r < taps.rows(); ++r)
            taps.set_row_value(r, rng() & ((1u << m) - 1));
        const EncoderSpec spec(split, m, taps);

        std::vector<int> lab(std::size_t(1) << m);
        for (std::size_t i = 0; i < lab.size(); ++i) lab[i] = static_cast<int>(i);
        std::shuffle(lab.begin(), lab.end(), rng);
        const Labeling l = Labeling::from_integers(lab, m);

        const auto transforms = enumerate_invertible(m);
        const BitMatrix& t = transforms[rng() % transforms.size()];

        const EncoderSpec spec_t(split, m, multiply(taps, t));
        const Labeling l_t = l.transformed(t);

        std::vector<int> input(64);
        for (int& w : input) w = static_cast<int>(rng() % (1u << k));

        const auto u = encode(spec, input);
        const auto u_t = encode(spec_t, input);
        const auto sym = l.symbol_of_label();
        const auto sym_t = l_t.symbol_of_label();
        for (std::size_t i = 0; i < u.size(); ++i) CHECK(sym[u[i]] == sym_t[u_t[i]]);
    }
}
