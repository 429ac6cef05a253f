#pragma once

#include "pgx/ints.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace pgx {

// Smith normal form over Z. Returns the full diagonal (one entry per column),
// nonnegative, with d1 | d2 | ... ; zeros mean free rank in the cokernel.
std::vector<Int> smith_normal_form(std::vector<std::vector<Int>> m, std::size_t ncols);

// Elementary-divisor chain d1 | d2 | ... | dk of a finite abelian group,
// every d_i > 1. The canonical form every abelian answer is reduced to.
class AbelianInvariants {
public:
    AbelianInvariants() = default;

    // Canonicalize an arbitrary multiset of cyclic orders (entries 1 dropped).
    static AbelianInvariants from_cyclic_orders(std::vector<Int> orders);

    // Cokernel Z^ncols / rowspace(rows); throws if infinite.
    static AbelianInvariants from_relation_matrix(std::vector<std::vector<Int>> rows,
                                                  std::size_t ncols);

    const std::vector<Int>& divisors() const { return divisors_; }
    bool trivial() const { return divisors_.empty(); }
    std::size_t rank() const { return divisors_.size(); }
    Int order() const;
    Int exponent() const { return divisors_.empty() ? Int(1) : divisors_.back(); }
    bool elementary(const Int& p) const;

    AbelianInvariants times(const AbelianInvariants& other) const;

    // Multiset of prime-power cyclic factors (primary decomposition).
    std::map<Int, std::vector<unsigned>> primary_decomposition() const;

    bool operator==(const AbelianInvariants& o) const { return divisors_ == o.divisors_; }
    bool operator!=(const AbelianInvariants& o) const { return !(*this == o); }

    // "Z27 x Z3^(2)" style; "1" for the trivial group.
    std::string to_string() const;

private:
    std::vector<Int> divisors_;
};

// Tensor product of finite abelian groups: sum of Z_gcd(a,b) over factor pairs.
AbelianInvariants abelian_tensor(const AbelianInvariants& a, const AbelianInvariants& b);

// Whitehead quadratic functor: Gamma(Z_n) = Z_n (n odd), Z_2n (n even),
// Gamma(A x B) = Gamma(A) x Gamma(B) x (A (x) B).
AbelianInvariants gamma_whitehead(const AbelianInvariants& a);

} // namespace pgx
