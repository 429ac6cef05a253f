#include "pgx/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pgx {

namespace {

Int gcd_int(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) { Int t = a % b; a = b; b = t; }
    return a;
}

// Position of the nonzero entry of smallest absolute value in the submatrix
// starting at (s, s); returns false if that submatrix is zero.
bool find_pivot(const std::vector<std::vector<Int>>& m, std::size_t s,
                std::size_t ncols, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best = 0;
    for (std::size_t i = s; i < m.size(); ++i)
        for (std::size_t j = s; j < ncols; ++j) {
            if (m[i][j] == 0) continue;
            Int a = abs(m[i][j]);
            if (!found || a < best) { found = true; best = a; pi = i; pj = j; }
        }
    return found;
}

} // namespace

std::vector<Int> smith_normal_form(std::vector<std::vector<Int>> m, std::size_t ncols) {
    std::size_t nrows = m.size();
    for (auto& row : m)
        row.resize(ncols, 0);

    std::size_t steps = std::min(nrows, ncols);
    std::vector<Int> diag(ncols, 0);

    for (std::size_t s = 0; s < steps; ++s) {
        std::size_t pi = s, pj = s;
        if (!find_pivot(m, s, ncols, pi, pj)) break;
        std::swap(m[s], m[pi]);
        if (pj != s)
            for (auto& row : m) std::swap(row[s], row[pj]);

        // Clear row and column s; restart whenever a remainder shrinks the pivot.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = s + 1; i < nrows; ++i) {
                if (m[i][s] == 0) continue;
                Int q = m[i][s] / m[s][s];
                for (std::size_t j = s; j < ncols; ++j) m[i][j] -= q * m[s][j];
                if (m[i][s] != 0) { std::swap(m[s], m[i]); dirty = true; }
            }
            for (std::size_t j = s + 1; j < ncols; ++j) {
                if (m[s][j] == 0) continue;
                Int q = m[s][j] / m[s][s];
                for (std::size_t i = s; i < nrows; ++i) m[i][j] -= q * m[i][s];
                if (m[s][j] != 0) {
                    for (std::size_t i = s; i < nrows; ++i) std::swap(m[i][s], m[i][j]);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Pivot must divide every remaining entry; absorb a violator into
            // column s and restart.
            for (std::size_t i = s + 1; i < nrows && !dirty; ++i)
                for (std::size_t j = s + 1; j < ncols && !dirty; ++j)
                    if (m[i][j] % m[s][s] != 0) {
                        for (std::size_t jj = s; jj < ncols; ++jj) m[s][jj] += m[i][jj];
                        dirty = true;
                    }
        }
        diag[s] = abs(m[s][s]);
    }
    return diag;
}

AbelianInvariants AbelianInvariants::from_cyclic_orders(std::vector<Int> orders) {
    // Gather p-power factors per prime, then zip from the largest down.
    std::map<Int, std::vector<Int>> by_prime;
    std::size_t max_len = 0;
    for (Int n : orders) {
        if (n < 1) throw pgx_error("AbelianInvariants: nonpositive cyclic order");
        for (Int d = 2; d * d <= n; ++d) {
            if (n % d != 0) continue;
            Int q = 1;
            while (n % d == 0) { q *= d; n /= d; }
            by_prime[d].push_back(q);
            max_len = std::max(max_len, by_prime[d].size());
        }
        if (n > 1) {
            by_prime[n].push_back(n);
            max_len = std::max(max_len, by_prime[n].size());
        }
    }
    for (auto& [p, v] : by_prime)
        std::sort(v.begin(), v.end(), std::greater<Int>());

    AbelianInvariants r;
    r.divisors_.assign(max_len, 1);
    for (auto& [p, v] : by_prime)
        for (std::size_t i = 0; i < v.size(); ++i)
            r.divisors_[i] *= v[i];
    std::reverse(r.divisors_.begin(), r.divisors_.end());
    return r;
}

AbelianInvariants AbelianInvariants::from_relation_matrix(std::vector<std::vector<Int>> rows,
                                                          std::size_t ncols) {
    auto diag = smith_normal_form(std::move(rows), ncols);
    std::vector<Int> orders;
    for (const Int& d : diag) {
        if (d == 0)
            throw pgx_error("AbelianInvariants: relation matrix presents an infinite group");
        if (d > 1) orders.push_back(d);
    }
    return from_cyclic_orders(std::move(orders));
}

Int AbelianInvariants::order() const {
    Int r = 1;
    for (const Int& d : divisors_) r *= d;
    return r;
}

bool AbelianInvariants::elementary(const Int& p) const {
    return std::all_of(divisors_.begin(), divisors_.end(),
                       [&](const Int& d) { return d == p; });
}

AbelianInvariants AbelianInvariants::times(const AbelianInvariants& other) const {
    std::vector<Int> all = divisors_;
    all.insert(all.end(), other.divisors_.begin(), other.divisors_.end());
    return from_cyclic_orders(std::move(all));
}

std::map<Int, std::vector<unsigned>> AbelianInvariants::primary_decomposition() const {
    std::map<Int, std::vector<unsigned>> out;
    for (Int n : divisors_) {
        for (Int d = 2; d * d <= n; ++d) {
            if (n % d != 0) continue;
            unsigned e = 0;
            while (n % d == 0) { ++e; n /= d; }
            out[d].push_back(e);
        }
        if (n > 1) out[n].push_back(1);
    }
    return out;
}

std::string AbelianInvariants::to_string() const {
    if (divisors_.empty()) return "1";
    // Print the primary decomposition largest-first, grouping repeats.
    std::vector<Int> factors;
    for (auto& [p, exps] : primary_decomposition())
        for (unsigned e : exps) factors.push_back(int_pow(p, e));
    std::sort(factors.begin(), factors.end(), std::greater<Int>());
    std::ostringstream os;
    for (std::size_t i = 0; i < factors.size();) {
        std::size_t j = i;
        while (j < factors.size() && factors[j] == factors[i]) ++j;
        if (i) os << " x ";
        os << "Z" << factors[i].str();
        if (j - i > 1) os << "^(" << (j - i) << ")";
        i = j;
    }
    return os.str();
}

AbelianInvariants abelian_tensor(const AbelianInvariants& a, const AbelianInvariants& b) {
    std::vector<Int> orders;
    for (const Int& x : a.divisors())
        for (const Int& y : b.divisors()) {
            Int g = gcd_int(x, y);
            if (g > 1) orders.push_back(g);
        }
    return AbelianInvariants::from_cyclic_orders(std::move(orders));
}

AbelianInvariants gamma_whitehead(const AbelianInvariants& a) {
    // Peel one cyclic factor at a time through Gamma(A x B).
    const auto& ds = a.divisors();
    if (ds.empty()) return {};
    AbelianInvariants head = AbelianInvariants::from_cyclic_orders(
        {ds.back() % 2 == 0 ? ds.back() * 2 : ds.back()});
    AbelianInvariants rest = AbelianInvariants::from_cyclic_orders(
        std::vector<Int>(ds.begin(), ds.end() - 1));
    if (rest.trivial()) return head;
    AbelianInvariants single = AbelianInvariants::from_cyclic_orders({ds.back()});
    return gamma_whitehead(rest).times(head).times(abelian_tensor(single, rest));
}

} // namespace pgx
