#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgx/gamma.hpp"
#include "pgx/nu.hpp"
#include <random>

using namespace pgx;

namespace {

PcPresentation phi2_111(long long p) {
    std::string ps = std::to_string(p);
    return parse_pc_presentation("generators: a, a1, a2\n[a1,a] = a2\n"
                                 "a^" + ps + " = 1\na1^" + ps + " = 1\na2^" + ps + " = 1\n");
}

PcPresentation phi2_21(long long p) {
    std::string ps = std::to_string(p);
    return parse_pc_presentation("generators: a, a1, a2\n[a1,a] = a2\n"
                                 "a^" + ps + " = a2\na1^" + ps + " = 1\na2^" + ps + " = 1\n");
}

} // namespace

TEST_CASE("nu presentation shape") {
    PcPresentation z5 = cyclic_group(5);
    FpPresentation fp = build_nu_presentation(z5);
    CHECK(fp.ngens() == 2);
    CHECK(fp.relators.size() == 2 + 2);  // two power relators, 2*1 compatibility

    PcPresentation h = phi2_111(5);
    FpPresentation fph = build_nu_presentation(h);
    CHECK(fph.ngens() == 6);
    // 2 * (3 powers + 3 commutators) + 2*27 compatibility
    CHECK(fph.relators.size() == 12 + 54);
}

TEST_CASE("nu of Z5") {
    NuRealization nu = realize_nu(cyclic_group(5), 5);
    CHECK(nu.nu().order() == 125);
    CHECK(nu.tensor_sub.order == 5);
    CHECK(nu.nabla.order == 5);
    GroupDescriptor t = tensor_square(nu);
    REQUIRE(t.abelian.has_value());
    CHECK(t.abelian->divisors() == std::vector<Int>{5});
    CHECK(exterior_square(nu).fp.order == 1);
    CHECK(schur_multiplier(nu).trivial());
    EpicenterResult e = epicenter(nu);
    CHECK(!e.capable);
    CHECK(e.epicenter.order == 5);
}

TEST_CASE("nu of Z5 x Z5") {
    PcPresentation g = direct_product(cyclic_group(5, "x"), cyclic_group(5, "y"));
    NuRealization nu = realize_nu(g, 5);
    // G (x) G = Gamma(Z5^2) x (G ^ G) = Z5^3 x Z5
    CHECK(nu.tensor_sub.order == 625);
    CHECK(schur_multiplier(nu).divisors() == std::vector<Int>{5});
    CHECK(epicenter(nu).capable);
}

TEST_CASE("nu of the Heisenberg group of order 125") {
    NuRealization nu = realize_nu(phi2_111(5), 5);
    CHECK(nu.trace.terminal);
    CHECK(nu.nu_class <= 3);
    CHECK(nu.nu().order() == int_pow(5, 12));
    CHECK(nu.tensor_sub.order == int_pow(5, 6));

    GroupDescriptor t = tensor_square(nu);
    REQUIRE(t.abelian.has_value());
    CHECK(t.abelian->divisors() == std::vector<Int>(6, 5));

    GroupDescriptor w = exterior_square(nu);
    REQUIRE(w.abelian.has_value());
    CHECK(w.abelian->divisors() == std::vector<Int>(3, 5));

    CHECK(schur_multiplier(nu).divisors() == std::vector<Int>(2, 5));
    CHECK(epicenter(nu).capable);

    IdentityReport rep = check_nu_identities(nu, 20, 42);
    CHECK(rep.all_passed());
}

TEST_CASE("nu of Phi2(21)") {
    NuRealization nu = realize_nu(phi2_21(5), 5);
    CHECK(schur_multiplier(nu).trivial());
    GroupDescriptor w = exterior_square(nu);
    REQUIRE(w.abelian.has_value());
    CHECK(w.abelian->divisors() == std::vector<Int>{5});
    GroupDescriptor t = tensor_square(nu);
    REQUIRE(t.abelian.has_value());
    CHECK(t.abelian->divisors() == std::vector<Int>(4, 5));
    EpicenterResult e = epicenter(nu);
    CHECK(!e.capable);
    CHECK(e.epicenter.order == 5);
}

TEST_CASE("decomposition agreement on small groups") {
    for (long long p : {5LL, 7LL}) {
        PcPresentation g = phi2_111(p);
        NuRealization nu = realize_nu(g, p);
        GroupDescriptor direct = tensor_square(nu);
        GroupDescriptor dec = tensor_via_decomposition(nu);
        CHECK(direct.fp == dec.fp);
    }
    CHECK_THROWS_AS(tensor_via_decomposition(cyclic_group(2), 2), pgx_error);
}

TEST_CASE("G/Z(G) of a Phi4 group has elementary exterior square of order p^3") {
    PcPresentation g = parse_pc_presentation(
        "generators: a, a1, a2, b1, b2\n"
        "[a1,a] = b1\n[a2,a] = b2\n"
        "a^5 = b2\na1^5 = b1\na2^5 = 1\nb1^5 = 1\nb2^5 = 1\n");
    QuotientResult q = quotient_by(g, center(g));
    GroupDescriptor w = exterior_square(realize_nu(q.pres, 5));
    REQUIRE(w.abelian.has_value());
    CHECK(w.abelian->divisors() == std::vector<Int>(3, 5));
}

TEST_CASE("power-commutator identity") {
    PcPresentation g = phi2_21(5);
    std::mt19937_64 rng(5);
    auto rand_elem = [&]() {
        ExponentVector v(g.ngens());
        for (int i = 0; i < g.ngens(); ++i)
            v[i] = static_cast<Exp>(rng() % g.relative_order(i));
        return v;
    };
    for (int t = 0; t < 100; ++t) {
        long long n = 1 + static_cast<long long>(rng() % 5);
        CHECK(verify_power_commutator_identity(g, rand_elem(), rand_elem(), n));
    }
    // n = 1 degenerates to [x,y] = [x,y]
    CHECK(verify_power_commutator_identity(g, rand_elem(), rand_elem(), 1));
}
