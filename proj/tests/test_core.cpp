#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgx/abelian.hpp"
#include "pgx/pcpres.hpp"

#include <random>

using namespace pgx;

namespace {

const char* kPhi2_21_p5 =
    "generators: a, a1, a2\n"
    "[a1,a] = a2\n"
    "a^5 = a2\n"
    "a1^5 = 1\n"
    "a2^5 = 1\n";

const char* kPhi2_111_p5 =
    "generators: a, a1, a2\n"
    "[a1,a] = a2\n"
    "a^5 = 1\n"
    "a1^5 = 1\n"
    "a2^5 = 1\n";

// Brute-force elementary divisors of a 3x3 integer matrix via gcds of minors:
// d1 = gcd(entries), d1 d2 = gcd(2x2 minors), d1 d2 d3 = |det|.
std::vector<Int> snf3_oracle(const std::vector<std::vector<Int>>& m) {
    auto g = [](Int a, Int b) {
        a = abs(a); b = abs(b);
        while (b != 0) { Int t = a % b; a = b; b = t; }
        return a;
    };
    Int g1 = 0, g2 = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g1 = g(g1, m[i][j]);
    for (int i1 = 0; i1 < 3; ++i1)
        for (int i2 = i1 + 1; i2 < 3; ++i2)
            for (int j1 = 0; j1 < 3; ++j1)
                for (int j2 = j1 + 1; j2 < 3; ++j2)
                    g2 = g(g2, m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]);
    Int det = 0;
    for (int j = 0; j < 3; ++j) {
        Int term = m[0][j] * (m[1][(j + 1) % 3] * m[2][(j + 2) % 3] -
                              m[1][(j + 2) % 3] * m[2][(j + 1) % 3]);
        det += term;
    }
    Int g3 = abs(det);
    std::vector<Int> d(3, 0);
    d[0] = g1;
    if (g1 != 0) d[1] = g2 / g1;
    if (g2 != 0) d[2] = g3 / g2;
    return d;
}

} // namespace

TEST_CASE("smith normal form basics") {
    // diag(2,3) ~ diag(1,6)
    auto d = smith_normal_form({{2, 0}, {0, 3}}, 2);
    CHECK(d == std::vector<Int>{1, 6});
    auto inv = AbelianInvariants::from_relation_matrix({{2, 0}, {0, 3}}, 2);
    CHECK(inv.divisors() == std::vector<Int>{6});

    auto z = AbelianInvariants::from_relation_matrix({{5, 0, 0}, {0, 5, 0}, {0, 0, 125}}, 3);
    CHECK(z.divisors() == std::vector<Int>{5, 5, 125});
    CHECK(z.order() == 3125);
}

TEST_CASE("snf against 3x3 minor-gcd oracle") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::vector<Int>> m(3, std::vector<Int>(3));
        for (auto& row : m)
            for (auto& x : row)
                x = static_cast<long long>(rng() % 41) - 20;
        auto expect = snf3_oracle(m);
        auto got = smith_normal_form(m, 3);
        CHECK(got == expect);
        // divisor chain property
        for (int i = 0; i + 1 < 3; ++i)
            if (got[i] != 0 && got[i + 1] != 0) CHECK(got[i + 1] % got[i] == 0);
    }
}

TEST_CASE("abelian invariants canonicalization") {
    auto a = AbelianInvariants::from_cyclic_orders({4, 6});
    CHECK(a.divisors() == std::vector<Int>{2, 12});
    CHECK(a.to_string() == "Z4 x Z3 x Z2");
    auto b = AbelianInvariants::from_cyclic_orders({1, 1});
    CHECK(b.trivial());
    auto c = AbelianInvariants::from_cyclic_orders({5, 5, 125});
    CHECK(c.exponent() == 125);
    CHECK(c.rank() == 3);
}

TEST_CASE("parse and collect Phi2(21) at p=5") {
    PcPresentation g = parse_pc_presentation(kPhi2_21_p5);
    CHECK(g.ngens() == 3);
    CHECK(g.order() == 125);
    CHECK(g.check_consistency().empty());

    // a^5 = a2
    ExponentVector v = g.evaluate("a^5");
    CHECK(v == g.evaluate("a2"));
    // [a1,a] = a2
    CHECK(g.evaluate("[a1,a]") == g.generator(2));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_pc_presentation("generators: a, b\n[b,a] = a\n"
                                          "a^5 = 1\nb^5 = 1\n"),
                    pgx_error);
    CHECK_THROWS_AS(parse_pc_presentation("generators: a\na^1 = 1\n"), pgx_error);
    CHECK_THROWS_AS(parse_pc_presentation("generators: a\n"), pgx_error);
    PcPresentation cyc = parse_pc_presentation("generators: a\na^5 = 1\n");
    CHECK(cyc.order() == 5);
}

TEST_CASE("evaluate on Phi2(111)") {
    PcPresentation g = parse_pc_presentation(kPhi2_111_p5);
    CHECK(g.evaluate("[a1,a]") == g.generator(2));
    CHECK(g.evaluate("a*a^-1").is_identity());
    CHECK(g.evaluate("a^-1*a1^-1*a*a1") == g.inverse(g.evaluate("[a1,a]")));
    CHECK(g.element_order(g.evaluate("a*a1")) == 5);
    CHECK(g.element_order(g.identity()) == 1);
}

TEST_CASE("collection obeys group laws on random words") {
    PcPresentation g = parse_pc_presentation(kPhi2_21_p5);
    std::mt19937_64 rng(3);
    auto rand_elem = [&]() {
        ExponentVector v(g.ngens());
        for (int i = 0; i < g.ngens(); ++i)
            v[i] = static_cast<Exp>(rng() % g.relative_order(i));
        return v;
    };
    for (int t = 0; t < 200; ++t) {
        ExponentVector a = rand_elem(), b = rand_elem(), c = rand_elem();
        CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
        CHECK(g.multiply(a, g.inverse(a)).is_identity());
        CHECK(g.multiply(g.inverse(a), a).is_identity());
    }
}

TEST_CASE("consistency check finds a genuine failure") {
    // At p=2 the chain b1 -> b1 b2 -> ... needs [b2,a] = b3 to square to b1 b3,
    // so a^2 = 1 cannot hold; the presented data is not a group of order 16.
    const char* bad =
        "generators: a, b1, b2, b3\n"
        "[b1,a] = b2\n"
        "[b2,a] = b3\n"
        "a^2 = 1\nb1^2 = 1\nb2^2 = 1\nb3^2 = 1\n";
    PcPresentation g = parse_pc_presentation(bad);
    auto viol = g.check_consistency();
    CHECK(!viol.empty());

    // Same shape at p=5 with a length-6 chain.
    std::string bad5 = "generators: a, b1, b2, b3, b4, b5, b6\n";
    for (int i = 1; i <= 5; ++i)
        bad5 += "[b" + std::to_string(i) + ",a] = b" + std::to_string(i + 1) + "\n";
    bad5 += "a^5 = 1\n";
    for (int i = 1; i <= 6; ++i) bad5 += "b" + std::to_string(i) + "^5 = 1\n";
    CHECK(!parse_pc_presentation(bad5).check_consistency().empty());

    // The honest length-5 chain is consistent.
    std::string good5 = "generators: a, b1, b2, b3, b4, b5\n";
    for (int i = 1; i <= 4; ++i)
        good5 += "[b" + std::to_string(i) + ",a] = b" + std::to_string(i + 1) + "\n";
    good5 += "a^5 = 1\n";
    for (int i = 1; i <= 5; ++i) good5 += "b" + std::to_string(i) + "^5 = 1\n";
    CHECK(parse_pc_presentation(good5).check_consistency().empty());
}

TEST_CASE("trivial and mixed-order presentations") {
    PcPresentation z25 = parse_pc_presentation("generators: a\norder(a) = 25\n");
    CHECK(z25.order() == 25);
    CHECK(z25.element_order(z25.generator(0)) == 25);
    CHECK(z25.check_consistency().empty());

    PcPresentation z = cyclic_group(12);
    CHECK(z.order() == 12);
    CHECK(z.element_order(z.multiply(z.generator(0), z.generator(1))) == 12);
}

TEST_CASE("direct products multiply orders") {
    PcPresentation a = parse_pc_presentation(kPhi2_111_p5);
    PcPresentation b = cyclic_group(5, "z");
    PcPresentation ab = direct_product(a, b);
    CHECK(ab.order() == 625);
    CHECK(ab.check_consistency().empty());
}
