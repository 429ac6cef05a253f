#include "pgx/be.hpp"

namespace pgx {

namespace {

// Row space over F_p kept in reduced row echelon form, so a single reduction
// pass gives canonical representatives mod the span.
struct Span {
    long long p;
    std::size_t ncols;
    std::vector<std::vector<long long>> rows;
    std::vector<int> pivots;

    Span(long long p_, std::size_t ncols_) : p(p_), ncols(ncols_) {}

    std::vector<long long> reduce(std::vector<long long> v) const {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            long long f = v[pivots[r]];
            if (f == 0) continue;
            for (std::size_t c = 0; c < ncols; ++c)
                v[c] = mod_floor(v[c] - f * rows[r][c], p);
        }
        return v;
    }

    bool add(std::vector<long long> v) {
        v = reduce(std::move(v));
        for (std::size_t c = 0; c < ncols; ++c)
            if (v[c] != 0) {
                long long inv = mod_inverse(v[c], p);
                for (std::size_t k = 0; k < ncols; ++k)
                    v[k] = (__int128)v[k] * inv % p;
                // keep RREF: clear this column from every stored row
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    long long f = rows[r][c];
                    if (f == 0) continue;
                    for (std::size_t k = 0; k < ncols; ++k)
                        rows[r][k] = mod_floor(rows[r][k] - f * v[k], p);
                }
                pivots.push_back(static_cast<int>(c));
                rows.push_back(std::move(v));
                return true;
            }
        return false;
    }

    int dim() const { return static_cast<int>(rows.size()); }
};

std::vector<long long> w_coords(const PcPresentation& g, const Subgroup& der,
                                const ExponentVector& x, long long p) {
    SiftResult s = sift(g, der, x);
    if (!s.remainder.is_identity())
        throw pgx_error("be_setup: element expected in G' escapes it");
    std::vector<long long> v;
    for (Exp c : s.coeffs) v.push_back(mod_floor(c, p));
    return v;
}

} // namespace

BEContext be_setup(const PcPresentation& g, long long p) {
    if (g.ngens() == 0 || g.prime() != p)
        throw pgx_error("be_setup: not a " + std::to_string(p) + "-group");
    Subgroup der = derived_subgroup(g);
    if (der.trivial() || nilpotency_class(g) != 2)
        throw pgx_error("be_setup: group is not of nilpotency class 2");
    AbelianInvariants dinv = abelian_invariants(g, der);
    if (!dinv.elementary(p))
        throw pgx_error("be_setup: derived subgroup is not elementary abelian");
    AbelianInvariants ab = abelian_invariants(g, whole_group(g), &der);
    if (!ab.elementary(p))
        throw pgx_error("be_setup: G/G' is not elementary abelian (exponent " +
                        ab.exponent().str() + ")");

    // V basis: pc generators at levels not occupied by G'.
    std::vector<int> v_levels;
    std::vector<char> taken(g.ngens(), 0);
    for (const auto& s : der.igs) taken[s.leading()] = 1;
    for (int i = 0; i < g.ngens(); ++i)
        if (!taken[i]) v_levels.push_back(i);

    BEContext ctx;
    ctx.p = p;
    ctx.dimV = static_cast<int>(v_levels.size());
    ctx.dimW = static_cast<int>(der.igs.size());
    ctx.within_stated_hypothesis = (ctx.dimV == 3 && ctx.dimW == 2);
    ctx.pairing.assign(ctx.dimV, std::vector<std::vector<long long>>(
                                     ctx.dimV, std::vector<long long>(ctx.dimW, 0)));
    for (int i = 0; i < ctx.dimV; ++i)
        for (int j = 0; j < ctx.dimV; ++j)
            ctx.pairing[i][j] = w_coords(
                g, der, g.commutator(g.generator(v_levels[i]), g.generator(v_levels[j])), p);
    for (int i = 0; i < ctx.dimV; ++i)
        ctx.powmap.push_back(
            w_coords(g, der, g.power(g.generator(v_levels[i]), Int(p)), p));
    return ctx;
}

namespace {

std::vector<long long> tensor_vec(const BEContext& ctx, int vi,
                                  const std::vector<long long>& w) {
    std::vector<long long> out(static_cast<std::size_t>(ctx.dimV) * ctx.dimW, 0);
    for (int k = 0; k < ctx.dimW; ++k)
        out[static_cast<std::size_t>(vi) * ctx.dimW + k] = w[k];
    return out;
}

Span build_X1(const BEContext& ctx) {
    Span x1(ctx.p, static_cast<std::size_t>(ctx.dimV) * ctx.dimW);
    for (int i = 0; i < ctx.dimV; ++i)
        for (int j = 0; j < ctx.dimV; ++j)
            for (int k = 0; k < ctx.dimV; ++k) {
                auto v = tensor_vec(ctx, i, ctx.pairing[j][k]);
                auto b = tensor_vec(ctx, j, ctx.pairing[k][i]);
                auto c = tensor_vec(ctx, k, ctx.pairing[i][j]);
                for (std::size_t t = 0; t < v.size(); ++t)
                    v[t] = (v[t] + b[t] + c[t]) % ctx.p;
                x1.add(std::move(v));
            }
    return x1;
}

void add_X2(const BEContext& ctx, Span& span) {
    // span of { v (x) f(v) : v in V } = diagonal plus symmetrized basis pairs
    for (int i = 0; i < ctx.dimV; ++i)
        span.add(tensor_vec(ctx, i, ctx.powmap[i]));
    for (int i = 0; i < ctx.dimV; ++i)
        for (int j = i + 1; j < ctx.dimV; ++j) {
            auto v = tensor_vec(ctx, i, ctx.powmap[j]);
            auto b = tensor_vec(ctx, j, ctx.powmap[i]);
            for (std::size_t t = 0; t < v.size(); ++t) v[t] = (v[t] + b[t]) % ctx.p;
            span.add(std::move(v));
        }
}

struct Rho {
    std::vector<std::pair<int, int>> pair_basis;  // (i < j) indexing V ^ V
    std::vector<std::vector<long long>> kernel;   // basis of ker rho
    int rank = 0;
};

Rho build_rho(const BEContext& ctx) {
    Rho rho;
    for (int i = 0; i < ctx.dimV; ++i)
        for (int j = i + 1; j < ctx.dimV; ++j)
            rho.pair_basis.push_back({i, j});
    std::size_t m = rho.pair_basis.size();
    // Row-reduce the transpose action to find the left kernel of the
    // (pairs x dimW) matrix: vectors y with sum y_ij (v_i, v_j) = 0.
    Span img(ctx.p, static_cast<std::size_t>(ctx.dimW) + m);
    // augmented rows [pairing | identity]; kernel rows appear with zero W-part
    for (std::size_t r = 0; r < m; ++r) {
        std::vector<long long> row(ctx.dimW + m, 0);
        auto [i, j] = rho.pair_basis[r];
        for (int k = 0; k < ctx.dimW; ++k) row[k] = ctx.pairing[i][j][k];
        row[ctx.dimW + r] = 1;
        img.add(std::move(row));
    }
    for (std::size_t r = 0; r < img.rows.size(); ++r) {
        bool wzero = true;
        for (int k = 0; k < ctx.dimW; ++k) wzero &= img.rows[r][k] == 0;
        if (wzero)
            rho.kernel.push_back(std::vector<long long>(img.rows[r].begin() + ctx.dimW,
                                                        img.rows[r].end()));
        else
            ++rho.rank;
    }
    return rho;
}

} // namespace

BESubspaces be_X_dimensions(const BEContext& ctx) {
    BESubspaces out;
    Span x1 = build_X1(ctx);
    out.dimX1 = x1.dim();
    Span x2(ctx.p, static_cast<std::size_t>(ctx.dimV) * ctx.dimW);
    add_X2(ctx, x2);
    out.dimX2 = x2.dim();
    Span x = build_X1(ctx);
    add_X2(ctx, x);
    out.dimX = x.dim();
    out.dimN = ctx.dimV * ctx.dimW - out.dimX;
    Rho rho = build_rho(ctx);
    out.dimKerRho = static_cast<int>(rho.kernel.size());
    return out;
}

AbelianInvariants be_multiplier(const BEContext& ctx) {
    Span x = build_X1(ctx);
    add_X2(ctx, x);
    int dimN = ctx.dimV * ctx.dimW - x.dim();
    Rho rho = build_rho(ctx);

    // sigma(v_i ^ v_j) = v_i (x) f(v_j) + C(p,2) v_j (x) (v_i, v_j), mod X.
    long long binom = mod_floor(ctx.p * (ctx.p - 1) / 2, ctx.p);
    auto sigma_pair = [&](int i, int j) {
        auto v = tensor_vec(ctx, i, ctx.powmap[j]);
        auto b = tensor_vec(ctx, j, ctx.pairing[i][j]);
        for (std::size_t t = 0; t < v.size(); ++t)
            v[t] = (v[t] + binom * b[t]) % ctx.p;
        return v;
    };
    Span sigma_image(ctx.p, static_cast<std::size_t>(ctx.dimV) * ctx.dimW);
    int r = 0;
    for (const auto& y : rho.kernel) {
        std::vector<long long> v(static_cast<std::size_t>(ctx.dimV) * ctx.dimW, 0);
        for (std::size_t t = 0; t < rho.pair_basis.size(); ++t) {
            if (y[t] == 0) continue;
            auto [i, j] = rho.pair_basis[t];
            auto s = sigma_pair(i, j);
            for (std::size_t c = 0; c < v.size(); ++c)
                v[c] = (v[c] + y[t] * s[c]) % ctx.p;
        }
        if (sigma_image.add(x.reduce(std::move(v)))) ++r;
    }
    // Sigma's image inside N was built after reducing mod X; its rank there is
    // what survives the X-quotient.  Guard against X-components inflating it.
    std::vector<Int> orders;
    for (int t = 0; t < r; ++t) orders.push_back(Int(ctx.p) * ctx.p);
    int ones = (dimN - r) + (static_cast<int>(rho.kernel.size()) - r);
    for (int t = 0; t < ones; ++t) orders.push_back(Int(ctx.p));
    return AbelianInvariants::from_cyclic_orders(std::move(orders));
}

} // namespace pgx
