#pragma once

#include "pgx/abelian.hpp"
#include "pgx/ints.hpp"
#include "pgx/word.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pgx {

// Normal-form word g_1^{e_1} ... g_n^{e_n}, 0 <= e_i < o_i.
struct ExponentVector {
    std::vector<Exp> e;

    ExponentVector() = default;
    explicit ExponentVector(std::size_t n) : e(n, 0) {}

    std::size_t size() const { return e.size(); }
    Exp& operator[](std::size_t i) { return e[i]; }
    Exp operator[](std::size_t i) const { return e[i]; }
    bool is_identity() const;
    // Index of the first nonzero exponent, or -1 for the identity.
    int leading() const;

    bool operator==(const ExponentVector& o) const { return e == o.e; }
    bool operator!=(const ExponentVector& o) const { return e != o.e; }
    bool operator<(const ExponentVector& o) const { return e < o.e; }
};

struct ConsistencyViolation {
    std::string instance;   // which overlap failed, human readable
    ExponentVector lhs, rhs;
};

// How a pc generator came to exist; filled in by the p-quotient engine and
// consumed when homomorphisms out of the group are built from generator images.
struct GenDef {
    enum class Kind { none, fp_image, commutator, power };
    Kind kind = Kind::none;
    int a = -1, b = -1;  // commutator: g = [g_a, g_b]; power: g = g_a^p; fp_image: fp gen a
};

// Consistent power-commutator presentation.  Immutable once finalize() has
// run; collection tables are built eagerly so concurrent reads are safe.
class PcPresentation {
public:
    PcPresentation() = default;
    PcPresentation(std::vector<std::string> names, std::vector<Exp> relative_orders);

    // g_i^{o_i} = rhs (normal word over generators > i).  Unset means trivial.
    void set_power(int i, ExponentVector rhs);
    // [g_j, g_i] = rhs for j > i (normal word over generators > j).
    void set_commutator(int j, int i, ExponentVector rhs);
    void set_definition(int i, GenDef d) { defs_[i] = d; }
    void set_weight(int i, int w) { weights_[i] = w; }

    // Validates index monotonicity and builds conjugation/inversion tables.
    void finalize();
    bool finalized() const { return finalized_; }

    int ngens() const { return n_; }
    Exp relative_order(int i) const { return orders_[i]; }
    const std::vector<Exp>& relative_orders() const { return orders_; }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    int gen_index(const std::string& name) const;  // -1 if unknown
    const ExponentVector& power_rule(int i) const { return powers_[i]; }
    const ExponentVector& commutator_rule(int j, int i) const;
    bool commutator_trivial(int j, int i) const;
    const GenDef& definition(int i) const { return defs_[i]; }
    int weight(int i) const { return weights_[i]; }

    Int order() const;
    // The unique prime dividing the order; throws for mixed primes.
    Int prime() const;

    ExponentVector identity() const { return ExponentVector(n_); }
    ExponentVector generator(int i) const;

    ExponentVector multiply(const ExponentVector& a, const ExponentVector& b) const;
    ExponentVector inverse(const ExponentVector& a) const;
    ExponentVector power(const ExponentVector& a, Int k) const;
    ExponentVector conjugate(const ExponentVector& a, const ExponentVector& b) const;
    ExponentVector commutator(const ExponentVector& a, const ExponentVector& b) const;
    Int element_order(const ExponentVector& a) const;

    // Evaluate an expression whose generator indices refer to this group.
    ExponentVector evaluate_word(const Word& w) const;
    // Evaluate with substituted images (for homomorphisms / fp relators).
    ExponentVector evaluate_word(const Word& w, const std::vector<ExponentVector>& images) const;
    ExponentVector evaluate(const std::string& expr) const;

    // Exhaustive overlap check: empty result iff collection is confluent.
    std::vector<ConsistencyViolation> check_consistency() const;

    std::string element_to_string(const ExponentVector& v) const;

private:
    friend PcPresentation direct_product(const PcPresentation&, const PcPresentation&);

    struct Pending {
        const ExponentVector* w = nullptr;  // null: a bare generator stream
        int gen = -1;                       // generator for the bare stream
        Exp repeat = 0;                     // word copies / bare-gen copies left
        int pos = -1;                       // current index within *w
        Exp count = 0;                      // copies of w[pos] left this pass
    };

    void collect_letter(ExponentVector& v, int g, std::vector<Pending>& stack) const;
    void collect_word(ExponentVector& v, const ExponentVector& w, Exp repeat,
                      std::vector<Pending>& stack) const;
    void drain(ExponentVector& v, std::vector<Pending>& stack) const;

    int n_ = 0;
    bool finalized_ = false;
    std::vector<std::string> names_;
    std::vector<Exp> orders_;
    std::vector<ExponentVector> powers_;          // empty vector = trivial rhs
    std::vector<ExponentVector> comms_;           // (j,i) -> index j*(j-1)/2 + i; empty = trivial
    std::vector<ExponentVector> conj_;            // nf(g_j^{g_i}), same indexing
    std::vector<ExponentVector> inv_gen_;         // nf(g_i^{-1})
    std::vector<GenDef> defs_;
    std::vector<int> weights_;
    ExponentVector empty_;
};

PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b);
PcPresentation cyclic_group(Exp n, const std::string& name = "t");

// Text format:
//   generators: a, a1, a2
//   order(a) = 5        # relative order (optional if a power line is present)
//   a^5 = a2            # power rule; RHS a normal word over later generators
//   [a1, a] = a2        # commutator rule, first entry has the larger index
//   # comments, blank lines allowed; omitted commutators are trivial
PcPresentation parse_pc_presentation(const std::string& text);

// Same grammar with symbolic integer expressions (p, nu, zeta, parameters)
// permitted in orders and exponents; used by the catalog loader.
PcPresentation parse_pc_presentation_with_env(const std::string& text, const SymbolEnv& env);

} // namespace pgx
