#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgx/catalog.hpp"
#include "pgx/gamma.hpp"

#include <random>

using namespace pgx;

namespace {
AbelianInvariants inv(std::vector<Int> v) {
    return AbelianInvariants::from_cyclic_orders(std::move(v));
}
} // namespace

TEST_CASE("whitehead gamma on cyclic groups") {
    CHECK(gamma_whitehead(inv({5})) == inv({5}));
    CHECK(gamma_whitehead(inv({2})) == inv({4}));
    CHECK(gamma_whitehead(inv({5, 5})) == inv({5, 5, 5}));
    CHECK(gamma_whitehead(inv({25, 25})) == inv({25, 25, 25}));
    CHECK(gamma_whitehead(inv({})).trivial());
    // Z_{p^2} x Z_p^2 -> Z_{p^2} x Z_p^5
    CHECK(gamma_whitehead(inv({25, 5, 5})) == inv({25, 5, 5, 5, 5, 5}));
}

TEST_CASE("gamma distributes over random direct sums") {
    std::mt19937_64 rng(11);
    const Int choices[] = {2, 3, 4, 5, 8, 9, 25};
    for (int t = 0; t < 60; ++t) {
        std::vector<Int> a, b;
        for (int i = 0, n = 1 + rng() % 3; i < n; ++i)
            a.push_back(choices[rng() % 7]);
        for (int i = 0, n = 1 + rng() % 3; i < n; ++i)
            b.push_back(choices[rng() % 7]);
        AbelianInvariants A = inv(a), B = inv(b);
        AbelianInvariants lhs = gamma_whitehead(A.times(B));
        AbelianInvariants rhs =
            gamma_whitehead(A).times(gamma_whitehead(B)).times(abelian_tensor(A, B));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("abelian tensor") {
    CHECK(abelian_tensor(inv({4}), inv({6})) == inv({2}));
    CHECK(abelian_tensor(inv({}), inv({25, 5})).trivial());
    CHECK(abelian_tensor(inv({25, 5}), inv({5})) == inv({5, 5}));
    // symmetry and distributivity on random inputs
    std::mt19937_64 rng(13);
    const Int choices[] = {2, 4, 5, 9, 25};
    for (int t = 0; t < 40; ++t) {
        std::vector<Int> a, b, c;
        for (int i = 0, n = 1 + rng() % 3; i < n; ++i) a.push_back(choices[rng() % 5]);
        for (int i = 0, n = 1 + rng() % 3; i < n; ++i) b.push_back(choices[rng() % 5]);
        for (int i = 0, n = 1 + rng() % 2; i < n; ++i) c.push_back(choices[rng() % 5]);
        AbelianInvariants A = inv(a), B = inv(b), C = inv(c);
        CHECK(abelian_tensor(A, B) == abelian_tensor(B, A));
        CHECK(abelian_tensor(A.times(B), C) ==
              abelian_tensor(A, C).times(abelian_tensor(B, C)));
    }
}

TEST_CASE("direct product multiplier formula") {
    // H = Phi2(21), K = Z5: M = 1 x 1 x (Z5^2 (x) Z5) = Z5^2
    AbelianInvariants m =
        direct_product_multiplier(inv({}), inv({}), inv({5, 5}), inv({5}));
    CHECK(m == inv({5, 5}));
    CHECK(direct_product_multiplier(inv({5}), inv({}), inv({5, 5}), inv({})) ==
          inv({5}));
    CHECK(direct_product_multiplier(inv({}), inv({}), inv({5}), inv({5})) == inv({5}));
}

TEST_CASE("direct product tensor formula reproduces Phi2(2111)a") {
    // G = Phi2(211)a, H = Z5: tensor = Z5^9 x Z5^3 x Z5^3 x Z5 = Z5^16
    GroupDescriptor tg = abelian_descriptor(inv(std::vector<Int>(9, 5)));
    GroupDescriptor th = abelian_descriptor(inv({5}));
    GroupDescriptor r = direct_product_tensor(tg, th, inv({5, 5, 5}), inv({5}));
    REQUIRE(r.abelian.has_value());
    CHECK(*r.abelian == inv(std::vector<Int>(16, 5)));
}

TEST_CASE("decomposition equals direct tensor on p^3 and p^4 families") {
    const Catalog& cat = catalog();
    for (long long p : {5LL, 7LL}) {
        for (int oe : {3, 4}) {
            for (const auto& e : cat.list(oe, p)) {
                PcPresentation g = cat.instantiate(e, p);
                NuRealization nu = realize_nu(g, p);
                GroupDescriptor direct = tensor_square(nu);
                GroupDescriptor dec = tensor_via_decomposition(nu);
                CHECK_MESSAGE(direct.fp == dec.fp, e.display_name);
            }
        }
    }
}
