#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgx/catalog.hpp"
#include "pgx/nu.hpp"
#include "pgx/structure.hpp"
#include <random>

using namespace pgx;

TEST_CASE("residue parameters") {
    ResidueParams r5 = residue_params(5);
    CHECK(r5.nu == 2);
    CHECK(r5.zeta == 2);
    ResidueParams r7 = residue_params(7);
    CHECK(r7.nu == 3);
    CHECK(r7.zeta == 3);
    ResidueParams r3 = residue_params(3);
    CHECK(r3.nu == 2);
    CHECK(r3.zeta == 2);
    CHECK_THROWS_AS(residue_params(4), pgx_error);
    CHECK_THROWS_AS(residue_params(2), pgx_error);
    // definition checks: Euler criterion and multiplicative order
    for (long long p : {5, 7, 11, 13}) {
        ResidueParams r = residue_params(p);
        CHECK(mod_pow_ll(r.nu, (p - 1) / 2, p) == p - 1);
        for (long long n = 2; n < r.nu; ++n)
            CHECK(mod_pow_ll(n, (p - 1) / 2, p) == 1);
        long long x = r.zeta, ord = 1;
        while (x != 1) { x = x * r.zeta % p; ++ord; }
        CHECK(ord == p - 1);
    }
}

TEST_CASE("catalog counts") {
    const Catalog& cat = catalog();
    CHECK(cat.list(3, 5).size() == 2);
    CHECK(cat.list(4, 5).size() == 10);
    CHECK(cat.list(5, 5).size() == 70);
    CHECK(cat.list(3, 7).size() == 2);
    CHECK(cat.list(4, 7).size() == 10);
    CHECK(cat.list(5, 7).size() == 76);
    CHECK_THROWS_AS(cat.list(5, 3), pgx_error);
    // duplicate-free display names
    auto entries = cat.list(5, 5);
    std::set<std::string> names;
    for (const auto& e : entries) names.insert(e.display_name);
    CHECK(names.size() == entries.size());
}

TEST_CASE("every catalog group instantiates consistently at p in {5,7,11}") {
    const Catalog& cat = catalog();
    for (long long p : {5LL, 7LL, 11LL}) {
        for (int oe : {3, 4, 5}) {
            for (const auto& e : cat.list(oe, p)) {
                PcPresentation g = cat.instantiate(e, p);
                CHECK(g.order() == int_pow(Int(p), oe));
                // instantiate() already ran the consistency check
            }
        }
    }
}

TEST_CASE("known instantiation details") {
    const Catalog& cat = catalog();
    // Phi6(221)b_r at r=1, p=5: k = zeta = 2, so a1^5 = b1^2.
    PcPresentation g = cat.instantiate(cat.resolve("Phi6(221)b_r[r=1]", 5), 5);
    ExponentVector v = g.power(g.generator(0), 5);
    CHECK(v == g.evaluate("b1^2"));
    // Phi4(221)e at p=5: -1/4 = 1 mod 5.
    PcPresentation e = cat.instantiate(cat.resolve("Phi4(221)e", 5), 5);
    CHECK(e.power(e.generator(1), 5) == e.evaluate("b2"));
    // Phi2(1^5) is elementary of class 2, order 3125.
    PcPresentation f = cat.instantiate(cat.resolve("Phi2(1^5)", 5), 5);
    CHECK(f.order() == 3125);
    CHECK(nilpotency_class(f) == 2);
    CHECK(fingerprint(f).exponent == 5);
    // bad references
    CHECK_THROWS_AS(cat.resolve("Phi99(1)", 5), pgx_error);
    CHECK_THROWS_AS(cat.instantiate(cat.resolve("Phi6(2111)a", 5), 3), pgx_error);
}

TEST_CASE("classes and orders match the families") {
    const Catalog& cat = catalog();
    struct Want { const char* ref; int cls; };
    const Want wants[] = {
        {"Phi2(41)", 2},      {"Phi3(221)a", 3},  {"Phi4(1^5)", 2},
        {"Phi5(2111)", 2},    {"Phi6(1^5)", 3},   {"Phi7(2111)c", 3},
        {"Phi8(32)", 3},      {"Phi9(1^5)", 4},   {"Phi10(1^5)", 4},
        {"Phi10(2111)a_r[r=0]", 4},
    };
    for (const auto& w : wants) {
        PcPresentation g = cat.instantiate(cat.resolve(w.ref, 5), 5);
        CHECK_MESSAGE(nilpotency_class(g) == w.cls, w.ref);
    }
}

TEST_CASE("direct-factor families match explicitly built products") {
    const Catalog& cat = catalog();
    struct Pair { const char* whole; const char* part; Exp factor; };
    const Pair pairs[] = {
        {"Phi2(311)a", "Phi2(31)", 5},
        {"Phi2(221)b", "Phi2(21)", 25},
        {"Phi2(2111)d", "Phi2(111)", 25},
        {"Phi3(2111)a", "Phi3(211)a", 5},
        {"Phi3(1^5)", "Phi3(1^4)", 5},
    };
    for (const auto& pr : pairs) {
        PcPresentation whole = cat.instantiate(cat.resolve(pr.whole, 5), 5);
        PcPresentation part = cat.instantiate(cat.resolve(pr.part, 5), 5);
        PcPresentation built = direct_product(part, cyclic_group(pr.factor, "z"));
        CHECK_MESSAGE(fingerprint(whole) == fingerprint(built), pr.whole);
    }
}

TEST_CASE("collection laws on random words across catalog groups") {
    const Catalog& cat = catalog();
    std::mt19937_64 rng(21);
    for (const char* ref :
         {"Phi2(41)", "Phi3(221)b_r[r=1]", "Phi6(221)c_r[r=2]", "Phi8(32)",
          "Phi9(2111)a", "Phi10(2111)a_r[r=1]"}) {
        PcPresentation g = cat.instantiate(cat.resolve(ref, 5), 5);
        auto rand_elem = [&]() {
            ExponentVector v(g.ngens());
            for (int i = 0; i < g.ngens(); ++i)
                v[i] = static_cast<Exp>(rng() % g.relative_order(i));
            return v;
        };
        for (int t = 0; t < 50; ++t) {
            ExponentVector a = rand_elem(), b = rand_elem(), c = rand_elem();
            CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
            CHECK(g.multiply(a, g.inverse(a)).is_identity());
        }
    }
}

TEST_CASE("p-th power substitution sanity for Phi3 at p=5") {
    // alpha^{(p)} = alpha^p for p > 3: orders come out as advertised.
    const Catalog& cat = catalog();
    for (const char* ref : {"Phi3(311)a", "Phi3(311)b_r[r=1]", "Phi3(221)b_r[r=2]"}) {
        PcPresentation g = cat.instantiate(cat.resolve(ref, 5), 5);
        CHECK(g.order() == 3125);
    }
}
