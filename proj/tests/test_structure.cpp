#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgx/structure.hpp"

using namespace pgx;

namespace {

PcPresentation heisenberg5() {
    return parse_pc_presentation(
        "generators: a, a1, a2\n[a1,a] = a2\na^5 = 1\na1^5 = 1\na2^5 = 1\n");
}

} // namespace

TEST_CASE("subgroup closure orders in Phi2(111)") {
    PcPresentation g = heisenberg5();
    Subgroup s1 = subgroup_closure(g, {g.generator(2)});
    CHECK(s1.order == 5);
    Subgroup s2 = subgroup_closure(g, {g.generator(0), g.generator(1)});
    CHECK(s2.order == 125);
    Subgroup s3 = subgroup_closure(g, {g.generator(1), g.generator(2)});
    CHECK(s3.order == 25);
    CHECK(contains(g, s3, g.evaluate("a1^2*a2^3")));
    CHECK(!contains(g, s3, g.generator(0)));
}

TEST_CASE("characteristic subgroups of Phi2(111)") {
    PcPresentation g = heisenberg5();
    auto cs = characteristic_subgroups(g);
    CHECK(cs.derived.order == 5);
    CHECK(cs.nilpotency_class == 2);
    CHECK(cs.center.order == 5);
    CHECK(cs.frattini.order == 5);
}

TEST_CASE("cyclic group structure") {
    PcPresentation g = cyclic_group(5);
    CHECK(derived_subgroup(g).trivial());
    CHECK(nilpotency_class(g) == 1);
    CHECK(center(g).order == 5);
}

TEST_CASE("abelian invariants of quotients") {
    // Phi2(41): a of relative order p^3 with a^{p^3} = a2.
    PcPresentation g = parse_pc_presentation(
        "generators: a, a1, a2\n[a1,a] = a2\na^125 = a2\na1^5 = 1\na2^5 = 1\n");
    CHECK(g.order() == 3125);
    CHECK(g.check_consistency().empty());
    Subgroup der = derived_subgroup(g);
    CHECK(der.order == 5);
    auto ab = abelian_invariants(g, whole_group(g), &der);
    CHECK(ab.divisors() == std::vector<Int>{5, 125});
    CHECK(abelian_invariants(g, trivial_subgroup(g)).trivial());
}

TEST_CASE("quotients") {
    PcPresentation g = heisenberg5();
    Subgroup der = derived_subgroup(g);
    QuotientResult q = quotient_by(g, der);
    CHECK(q.pres.order() == 25);
    CHECK(q.pres.check_consistency().empty());
    CHECK(derived_subgroup(q.pres).trivial());

    QuotientResult whole = quotient_by(g, whole_group(g));
    CHECK(whole.pres.order() == 1);
    QuotientResult none = quotient_by(g, trivial_subgroup(g));
    CHECK(none.pres.order() == 125);
    CHECK(fingerprint(none.pres) == fingerprint(g));

    Subgroup notnormal = subgroup_closure(g, {g.generator(0)});
    CHECK_THROWS_AS(quotient_by(g, notnormal), pgx_error);
}

TEST_CASE("kernels") {
    PcPresentation src = direct_product(cyclic_group(5, "x"), cyclic_group(5, "y"));
    PcPresentation dst = cyclic_group(5, "z");
    Subgroup k = kernel_of(src, dst, {dst.generator(0), dst.identity()});
    CHECK(k.order == 5);
    // identity map has trivial kernel
    PcPresentation g = heisenberg5();
    std::vector<ExponentVector> ident;
    for (int i = 0; i < g.ngens(); ++i) ident.push_back(g.generator(i));
    CHECK(kernel_of(g, g, ident).trivial());
    // violating images are reported: [a1,a] = a2 cannot map to [z,z] = 1 with
    // a2 mapping to z
    CHECK_THROWS_AS(kernel_of(g, dst,
                              {dst.generator(0), dst.generator(0), dst.generator(0)}),
                    pgx_error);
    // Hom onto Z5 from Heisenberg kills the derived subgroup: kernel order 25.
    Subgroup hk = kernel_of(g, dst, {dst.generator(0), dst.identity(), dst.identity()});
    CHECK(hk.order == 25);
}

TEST_CASE("fingerprints separate and identify") {
    PcPresentation heis = heisenberg5();
    PcPresentation e125 = direct_product(direct_product(cyclic_group(5, "x"),
                                                        cyclic_group(5, "y")),
                                         cyclic_group(5, "z"));
    CHECK(fingerprint(heis) != fingerprint(e125));
    CHECK(fingerprint(heis).nilpotency_class == 2);
    CHECK(fingerprint(e125).nilpotency_class == 1);
    // trivial group
    PcPresentation t(std::vector<std::string>{}, std::vector<Exp>{});
    t.finalize();
    auto fp = fingerprint(t);
    CHECK(fp.order == 1);
    CHECK(fp.abelianization.trivial());
}

TEST_CASE("power structure and exponent") {
    PcPresentation g = parse_pc_presentation(
        "generators: a, a1, a2\n[a1,a] = a2\na^125 = a2\na1^5 = 1\na2^5 = 1\n");
    auto ps = power_structure(g);
    CHECK(ps.exponent_log == 4);   // a has order 625
    CHECK(ps.agemo_orders.front() == 125);  // <a^5> x <a2>? |G^5| = 5^3
    CHECK(ps.agemo_orders.back() == 1);
    CHECK(fingerprint(g).exponent == 625);
}

TEST_CASE("element order statistics and brute isomorphism") {
    PcPresentation d8 = parse_pc_presentation(
        "generators: a, b, c\n[b,a] = c\na^2 = 1\nb^2 = 1\nc^2 = 1\n");
    PcPresentation q8 = parse_pc_presentation(
        "generators: a, b, c\n[b,a] = c\na^2 = c\nb^2 = c\nc^2 = 1\n");
    CHECK(d8.check_consistency().empty());
    CHECK(q8.check_consistency().empty());
    auto sd = element_order_statistics(d8);
    auto sq = element_order_statistics(q8);
    CHECK(sd != sq);  // D8 has five involutions, Q8 has one
    CHECK(!brute_isomorphic(d8, q8));
    // relabeled D8 presentation: b' = ab
    PcPresentation d8b = parse_pc_presentation(
        "generators: a, b, c\n[b,a] = c\na^2 = 1\nb^2 = c\nc^2 = 1\n");
    CHECK(brute_isomorphic(d8, d8b));
    CHECK(conjugacy_class_count(d8) == 5);
    CHECK(conjugacy_class_count(q8) == 5);
}
