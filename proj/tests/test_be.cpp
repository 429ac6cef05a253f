#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgx/be.hpp"
#include "pgx/nu.hpp"

using namespace pgx;

namespace {

PcPresentation phi4(const std::string& powers) {
    // Common Phi4 frame at p=5: [a_i, a] = b_i, b_i central of order 5.
    return parse_pc_presentation(
        "generators: a, a1, a2, b1, b2\n"
        "[a1,a] = b1\n[a2,a] = b2\n" + powers +
        "b1^5 = 1\nb2^5 = 1\n");
}

} // namespace

TEST_CASE("be_setup dimensions") {
    PcPresentation g = phi4("a^5 = 1\na1^5 = 1\na2^5 = 1\n");  // Phi4(1^5)
    CHECK(g.check_consistency().empty());
    BEContext ctx = be_setup(g, 5);
    CHECK(ctx.dimV == 3);
    CHECK(ctx.dimW == 2);
    CHECK(ctx.within_stated_hypothesis);
    for (auto& row : ctx.powmap)
        for (long long x : row) CHECK(x == 0);

    // Phi5(1^5): extraspecial of order p^5, dims (4, 1)
    PcPresentation e = parse_pc_presentation(
        "generators: a1, a2, a3, a4, b\n"
        "[a2,a1] = b^4\n[a4,a3] = b^4\n"
        "a1^5 = 1\na2^5 = 1\na3^5 = 1\na4^5 = 1\nb^5 = 1\n");
    CHECK(e.check_consistency().empty());
    BEContext ce = be_setup(e, 5);
    CHECK(ce.dimV == 4);
    CHECK(ce.dimW == 1);
    CHECK(!ce.within_stated_hypothesis);
    CHECK(be_multiplier(ce).divisors() == std::vector<Int>(5, 5));

    // Phi2(41) is out of scope: G^ab has exponent p^3
    PcPresentation bad = parse_pc_presentation(
        "generators: a, a1, a2\n[a1,a] = a2\na^125 = a2\na1^5 = 1\na2^5 = 1\n");
    CHECK_THROWS_AS(be_setup(bad, 5), pgx_error);
}

TEST_CASE("the three X-dimension triples") {
    struct Case {
        const char* powers;
        int x1, x2, x;
        std::vector<Int> multiplier;
    };
    const Case cases[] = {
        // Phi4(221)a
        {"a^5 = b2\na1^5 = b1\na2^5 = 1\n", 1, 5, 6, {5}},
        // Phi4(221)b
        {"a^5 = b2\na1^5 = 1\na2^5 = b1\n", 1, 5, 5, {5, 5}},
        // Phi4(2111)a
        {"a^5 = b2\na1^5 = 1\na2^5 = 1\n", 1, 3, 4, {5, 5, 5}},
    };
    for (const auto& c : cases) {
        PcPresentation g = phi4(c.powers);
        REQUIRE(g.check_consistency().empty());
        BEContext ctx = be_setup(g, 5);
        BESubspaces d = be_X_dimensions(ctx);
        CHECK(d.dimX1 == c.x1);
        CHECK(d.dimX2 == c.x2);
        CHECK(d.dimX == c.x);
        CHECK(d.dimN == 3 * 2 - c.x);
        CHECK(be_multiplier(ctx).divisors() == c.multiplier);
        // |M| = |N| |V ^ V| / |W|
        Int m = be_multiplier(ctx).order();
        CHECK(m == int_pow(5, d.dimN) * int_pow(5, d.dimKerRho));
    }
}

TEST_CASE("Z_{p^2} case: Phi4(221)d at r = (p-1)/2") {
    // k = zeta^2 = 4 at p = 5
    PcPresentation g = phi4("a^5 = 1\na1^5 = b1^4\na2^5 = b2\n");
    REQUIRE(g.check_consistency().empty());
    BEContext ctx = be_setup(g, 5);
    CHECK(be_multiplier(ctx).divisors() == std::vector<Int>{25});
}

TEST_CASE("cross-engine agreement on Phi4(1^5)") {
    PcPresentation g = phi4("a^5 = 1\na1^5 = 1\na2^5 = 1\n");
    BEContext ctx = be_setup(g, 5);
    AbelianInvariants be = be_multiplier(ctx);
    CHECK(be.divisors() == std::vector<Int>(6, 5));
    AbelianInvariants direct = schur_multiplier(g, 5);
    CHECK(be == direct);
}
