#include "pgx/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace pgx {

namespace {

Exp gcd_exp(Exp a, Exp b) {
    while (b) { Exp t = a % b; a = b; b = t; }
    return a;
}

// Normalize so the leading exponent becomes gcd(e, o) exactly.
ExponentVector normalize_slot(const PcPresentation& g, ExponentVector x) {
    int l = x.leading();
    Exp o = g.relative_order(l);
    Exp e = x[l];
    Exp d = gcd_exp(e, o);
    if (e == d) return x;
    Exp u = mod_inverse(e / d, o / d);
    ExponentVector r = g.power(x, Int(u));
    if (r[l] != d) throw pgx_error("normalize_slot: internal error");
    return r;
}

struct Builder {
    const PcPresentation& g;
    std::map<int, ExponentVector> slots;   // leading index -> normalized element
    std::deque<ExponentVector> queue;

    explicit Builder(const PcPresentation& g_) : g(g_) {}

    // Sift x; if a residue survives, install it and enqueue closure elements.
    void add(ExponentVector x) {
        for (;;) {
            int l = x.leading();
            if (l < 0) return;
            auto it = slots.find(l);
            if (it == slots.end()) {
                install(l, normalize_slot(g, std::move(x)));
                return;
            }
            ExponentVector& s = it->second;
            Exp d = s[l];
            if (x[l] % d != 0) {
                // x spans more of this level than the slot; swap them.
                ExponentVector old = s;
                ExponentVector fresh = normalize_slot(g, std::move(x));
                Exp nd = fresh[l];
                it->second = fresh;
                enqueue_closure(l);
                if (old[l] % nd != 0)
                    throw pgx_error("sift: leading exponents not nested");
                x = g.multiply(g.power(fresh, Int(-(old[l] / nd))), old);
            } else {
                x = g.multiply(g.power(s, Int(-(x[l] / d))), std::move(x));
            }
        }
    }

    void install(int l, ExponentVector s) {
        slots.emplace(l, std::move(s));
        enqueue_closure(l);
    }

    void enqueue_closure(int l) {
        const ExponentVector& s = slots.at(l);
        Exp q = g.relative_order(l) / s[l];
        queue.push_back(g.power(s, Int(q)));
        for (auto& [m, t] : slots) {
            if (m == l) continue;
            queue.push_back(g.commutator(s, t));
            queue.push_back(g.conjugate(s, t));
            queue.push_back(g.conjugate(s, g.inverse(t)));
            queue.push_back(g.conjugate(t, s));
            queue.push_back(g.conjugate(t, g.inverse(s)));
        }
    }

    void run() {
        while (!queue.empty()) {
            ExponentVector x = std::move(queue.front());
            queue.pop_front();
            add(std::move(x));
        }
    }

    Subgroup finish() {
        Subgroup h;
        h.parent = &g;
        h.order = 1;
        for (auto& [l, s] : slots) {
            h.order *= g.relative_order(l) / s[l];
            h.igs.push_back(s);
        }
        return h;
    }
};

} // namespace

Exp Subgroup::slot_index(std::size_t slot) const {
    int l = igs[slot].leading();
    return parent->relative_order(l) / igs[slot][l];
}

Subgroup subgroup_closure(const PcPresentation& pres, std::vector<ExponentVector> gens) {
    for (const auto& x : gens)
        if (x.size() != static_cast<std::size_t>(pres.ngens()))
            throw pgx_error("subgroup_closure: generator vector of wrong length");
    Builder b(pres);
    for (auto& x : gens) b.queue.push_back(std::move(x));
    b.run();
    return b.finish();
}

Subgroup normal_closure(const PcPresentation& pres, std::vector<ExponentVector> gens) {
    Subgroup h = subgroup_closure(pres, std::move(gens));
    for (;;) {
        std::vector<ExponentVector> extra;
        for (const auto& s : h.igs)
            for (int i = 0; i < pres.ngens(); ++i) {
                ExponentVector c = pres.conjugate(s, pres.generator(i));
                if (!contains(pres, h, c)) extra.push_back(c);
                c = pres.conjugate(s, pres.inverse(pres.generator(i)));
                if (!contains(pres, h, c)) extra.push_back(c);
            }
        if (extra.empty()) return h;
        for (const auto& s : h.igs) extra.push_back(s);
        h = subgroup_closure(pres, extra);
    }
}

Subgroup whole_group(const PcPresentation& pres) {
    std::vector<ExponentVector> gens;
    for (int i = 0; i < pres.ngens(); ++i) gens.push_back(pres.generator(i));
    return subgroup_closure(pres, gens);
}

Subgroup trivial_subgroup(const PcPresentation& pres) {
    Subgroup h;
    h.parent = &pres;
    return h;
}

SiftResult sift(const PcPresentation& pres, const Subgroup& h, ExponentVector x) {
    SiftResult r;
    r.coeffs.assign(h.igs.size(), 0);
    std::size_t slot = 0;
    for (;;) {
        int l = x.leading();
        if (l < 0) break;
        while (slot < h.igs.size() && h.igs[slot].leading() < l) ++slot;
        if (slot >= h.igs.size() || h.igs[slot].leading() != l) break;
        Exp d = h.igs[slot][l];
        if (x[l] % d != 0) break;
        Exp c = x[l] / d;
        r.coeffs[slot] = c;
        x = pres.multiply(pres.power(h.igs[slot], Int(-c)), std::move(x));
    }
    r.remainder = std::move(x);
    return r;
}

bool contains(const PcPresentation& pres, const Subgroup& h, const ExponentVector& x) {
    return sift(pres, h, x).remainder.is_identity();
}

bool subgroup_leq(const PcPresentation& pres, const Subgroup& a, const Subgroup& b) {
    return std::all_of(a.igs.begin(), a.igs.end(),
                       [&](const ExponentVector& s) { return contains(pres, b, s); });
}

bool is_normal(const PcPresentation& pres, const Subgroup& h) {
    for (const auto& s : h.igs)
        for (int i = 0; i < pres.ngens(); ++i) {
            if (!contains(pres, h, pres.conjugate(s, pres.generator(i)))) return false;
            if (!contains(pres, h, pres.conjugate(s, pres.inverse(pres.generator(i))))) return false;
        }
    return true;
}

ExponentVector coset_reduce(const PcPresentation& pres, const Subgroup& h, ExponentVector x) {
    for (std::size_t slot = 0; slot < h.igs.size(); ++slot) {
        int l = h.igs[slot].leading();
        Exp d = h.igs[slot][l];
        Exp t = x[l] / d;
        if (t != 0)
            x = pres.multiply(pres.power(h.igs[slot], Int(-t)), std::move(x));
    }
    return x;
}

InducedPresentation induced_presentation(const PcPresentation& pres, const Subgroup& h) {
    std::size_t m = h.igs.size();
    std::vector<std::string> names;
    std::vector<Exp> orders;
    for (std::size_t k = 0; k < m; ++k) {
        names.push_back("u" + std::to_string(k + 1));
        orders.push_back(h.slot_index(k));
    }
    InducedPresentation out{PcPresentation(names, orders), h.igs};
    if (m == 0) {
        out.pres.finalize();
        return out;
    }
    auto express = [&](const ExponentVector& x, std::size_t min_slot) {
        SiftResult s = sift(pres, h, x);
        if (!s.remainder.is_identity())
            throw pgx_error("induced_presentation: element escapes subgroup");
        ExponentVector v(m);
        for (std::size_t k = 0; k < m; ++k) {
            if (s.coeffs[k] != 0 && k < min_slot)
                throw pgx_error("induced_presentation: sift not deep enough");
            v[k] = s.coeffs[k];
        }
        return v;
    };
    for (std::size_t k = 0; k < m; ++k) {
        ExponentVector rhs = express(pres.power(h.igs[k], Int(orders[k])), k + 1);
        out.pres.set_power(static_cast<int>(k), std::move(rhs));
    }
    for (std::size_t j = 1; j < m; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            ExponentVector rhs = express(pres.commutator(h.igs[j], h.igs[i]), j + 1);
            out.pres.set_commutator(static_cast<int>(j), static_cast<int>(i), std::move(rhs));
        }
    out.pres.finalize();
    return out;
}

QuotientResult quotient_by(const PcPresentation& pres, const Subgroup& nsub) {
    if (!is_normal(pres, nsub))
        throw pgx_error("quotient_by: subgroup is not normal");
    int n = pres.ngens();
    // Surviving relative order at each level.
    std::vector<Exp> d(n);
    for (int l = 0; l < n; ++l) d[l] = pres.relative_order(l);
    for (const auto& s : nsub.igs) d[s.leading()] = s[s.leading()];

    std::vector<int> new_index(n, -1);
    std::vector<std::string> names;
    std::vector<Exp> orders;
    for (int l = 0; l < n; ++l)
        if (d[l] > 1) {
            new_index[l] = static_cast<int>(names.size());
            names.push_back(pres.name(l));
            orders.push_back(d[l]);
        }
    QuotientResult out{PcPresentation(names, orders), {}, {}};
    for (int l = 0; l < n; ++l)
        if (new_index[l] >= 0) out.surviving_levels.push_back(l);
    int m = static_cast<int>(names.size());
    auto project = [&](ExponentVector x) {
        x = coset_reduce(pres, nsub, std::move(x));
        ExponentVector v(m);
        for (int l = 0; l < n; ++l)
            if (x[l] != 0) {
                if (new_index[l] < 0)
                    throw pgx_error("quotient_by: reduction left an entry at a killed level");
                v[new_index[l]] = x[l];
            }
        return v;
    };
    for (int l = 0; l < n; ++l) {
        if (new_index[l] < 0) continue;
        out.pres.set_power(new_index[l], project(pres.power(pres.generator(l), Int(d[l]))));
    }
    for (int lj = 1; lj < n; ++lj)
        for (int li = 0; li < lj; ++li) {
            if (new_index[lj] < 0 || new_index[li] < 0) continue;
            out.pres.set_commutator(new_index[lj], new_index[li],
                                    project(pres.commutator(pres.generator(lj),
                                                            pres.generator(li))));
        }
    out.pres.finalize();
    for (int l = 0; l < n; ++l)
        out.gen_images.push_back(project(pres.generator(l)));
    return out;
}

std::optional<std::string> homomorphism_failure(const PcPresentation& src,
                                                const PcPresentation& dst,
                                                const std::vector<ExponentVector>& images) {
    if (images.size() != static_cast<std::size_t>(src.ngens()))
        return "wrong number of generator images";
    for (int i = 0; i < src.ngens(); ++i) {
        ExponentVector lhs = dst.power(images[i], Int(src.relative_order(i)));
        ExponentVector rhs = src.power_rule(i).e.empty()
                                 ? dst.identity()
                                 : apply_hom(src, dst, images, src.power_rule(i));
        if (lhs != rhs)
            return "power relation of " + src.name(i) + " not preserved";
    }
    for (int j = 1; j < src.ngens(); ++j)
        for (int i = 0; i < j; ++i) {
            ExponentVector lhs = dst.commutator(images[j], images[i]);
            ExponentVector rhs = src.commutator_trivial(j, i)
                                     ? dst.identity()
                                     : apply_hom(src, dst, images, src.commutator_rule(j, i));
            if (lhs != rhs)
                return "commutator relation [" + src.name(j) + "," + src.name(i) +
                       "] not preserved";
        }
    return std::nullopt;
}

ExponentVector apply_hom(const PcPresentation& src, const PcPresentation& dst,
                         const std::vector<ExponentVector>& images, const ExponentVector& x) {
    ExponentVector v = dst.identity();
    for (int i = 0; i < src.ngens(); ++i)
        if (x[i] != 0)
            v = dst.multiply(v, dst.power(images[i], Int(x[i])));
    return v;
}

Subgroup kernel_of(const PcPresentation& src, const PcPresentation& dst,
                   const std::vector<ExponentVector>& images) {
    if (auto fail = homomorphism_failure(src, dst, images))
        throw pgx_error("kernel_of: images do not define a homomorphism: " + *fail);
    PcPresentation prod = direct_product(dst, src);
    int m = dst.ngens(), n = src.ngens();
    std::vector<ExponentVector> graph_gens;
    for (int i = 0; i < n; ++i) {
        ExponentVector v(m + n);
        for (int k = 0; k < m; ++k) v[k] = images[i][k];
        v[m + i] = 1;
        graph_gens.push_back(std::move(v));
    }
    Subgroup graph = subgroup_closure(prod, graph_gens);
    Subgroup ker;
    ker.parent = &src;
    ker.order = 1;
    for (std::size_t k = 0; k < graph.igs.size(); ++k) {
        const ExponentVector& s = graph.igs[k];
        if (s.leading() < m) continue;
        ExponentVector v(n);
        for (int i = 0; i < n; ++i) v[i] = s[m + i];
        ker.order *= graph.slot_index(k);
        ker.igs.push_back(std::move(v));
    }
    return ker;
}

AbelianInvariants abelian_invariants(const PcPresentation& pres, const Subgroup& sub,
                                     const Subgroup* modulo) {
    if (sub.trivial()) return {};
    if (modulo && !subgroup_leq(pres, *modulo, sub))
        throw pgx_error("abelian_invariants: modulo subgroup not contained in sub");
    InducedPresentation ip = induced_presentation(pres, sub);
    const PcPresentation& s = ip.pres;
    std::size_t m = sub.igs.size();
    std::vector<std::vector<Int>> rows;
    auto to_row = [&](const ExponentVector& v, Exp diag_at, Exp diag_val) {
        std::vector<Int> row(m, 0);
        for (std::size_t k = 0; k < m; ++k) row[k] = -Int(v.size() ? v[k] : 0);
        if (diag_at >= 0) row[diag_at] += diag_val;
        return row;
    };
    for (std::size_t k = 0; k < m; ++k) {
        ExponentVector rhs = s.power_rule(k).e.empty() ? s.identity() : s.power_rule(k);
        rows.push_back(to_row(rhs, static_cast<Exp>(k), s.relative_order(k)));
    }
    for (std::size_t j = 1; j < m; ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (!s.commutator_trivial(static_cast<int>(j), static_cast<int>(i)))
                rows.push_back(to_row(s.commutator_rule(static_cast<int>(j),
                                                        static_cast<int>(i)), -1, 0));
    if (modulo)
        for (const auto& z : modulo->igs) {
            SiftResult sr = sift(pres, sub, z);
            std::vector<Int> row(m, 0);
            for (std::size_t k = 0; k < m; ++k) row[k] = sr.coeffs[k];
            rows.push_back(std::move(row));
        }
    return AbelianInvariants::from_relation_matrix(std::move(rows), m);
}

} // namespace pgx
