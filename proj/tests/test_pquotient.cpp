#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgx/pquotient.hpp"
#include "pgx/structure.hpp"

using namespace pgx;

TEST_CASE("free group class-1 quotient is elementary abelian") {
    FpPresentation fp;
    fp.names = {"x", "y"};
    PQuotientOptions opts;
    opts.max_class = 1;
    auto r = p_quotient(fp, 5, opts);
    CHECK(r.pc.order() == 25);
    CHECK(!r.trace.terminal);
    CHECK(r.pc.check_consistency().empty());
}

TEST_CASE("free group class-2 quotient at p=5") {
    FpPresentation fp;
    fp.names = {"x", "y"};
    PQuotientOptions opts;
    opts.max_class = 2;
    auto r = p_quotient(fp, 5, opts);
    // lambda_2/lambda_3 of F_2 has rank 3 (one commutator, two powers)
    CHECK(r.pc.ngens() == 5);
    CHECK(r.pc.order() == int_pow(5, 5));
    CHECK(r.pc.check_consistency().empty());
}

TEST_CASE("finite cyclic quotients stabilize") {
    auto fp = parse_fp_presentation("generators: x\nrelator: x^25\n");
    auto r = p_quotient(fp, 5);
    CHECK(r.trace.terminal);
    CHECK(r.pc.order() == 25);
    CHECK(r.pc.element_order(r.fp_images[0]) == 25);
}

TEST_CASE("relators with conjugation and commutators") {
    // Heisenberg: [y,x] central, exponent 5.
    auto fp = parse_fp_presentation(
        "generators: x, y\n"
        "relator: x^5\nrelator: y^5\n"
        "relator: [y,x,x]\nrelator: [y,x,y]\nrelator: [y,x]^5\n");
    auto r = p_quotient(fp, 5);
    CHECK(r.trace.terminal);
    CHECK(r.pc.order() == 125);
    CHECK(nilpotency_class(r.pc) == 2);
}

TEST_CASE("idempotence: re-reading a pc group reproduces it") {
    PcPresentation g = parse_pc_presentation(
        "generators: a, a1, a2\n[a1,a] = a2\na^125 = a2\na1^5 = 1\na2^5 = 1\n");
    auto fp = to_fp_presentation(g);
    auto r = p_quotient(fp, 5);
    CHECK(r.trace.terminal);
    CHECK(r.pc.order() == g.order());
    CHECK(fingerprint(r.pc) == fingerprint(g));
    CHECK(r.pc.check_consistency().empty());
    // epimorphism images satisfy the original relations
    CHECK(!homomorphism_failure(g, r.pc, r.fp_images));
}

TEST_CASE("trace is monotone and budget errors are raised") {
    auto fp = parse_fp_presentation("generators: x\nrelator: x^625\n");
    auto r = p_quotient(fp, 5);
    CHECK(r.trace.terminal);
    for (std::size_t i = 1; i < r.trace.rows.size(); ++i)
        CHECK(r.trace.rows[i].order_exponent >= r.trace.rows[i - 1].order_exponent);

    FpPresentation free2;
    free2.names = {"x", "y"};
    PQuotientOptions tight;
    tight.max_class = 6;
    tight.max_gens = 10;
    CHECK_THROWS_AS(p_quotient(free2, 5, tight), budget_error);
}

TEST_CASE("non-prime p rejected") {
    FpPresentation fp;
    fp.names = {"x"};
    CHECK_THROWS_AS(p_quotient(fp, 6), pgx_error);
}
