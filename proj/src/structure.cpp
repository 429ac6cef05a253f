#include "pgx/structure.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pgx {

namespace {

constexpr long long kEnumLimit = 1 << 21;

std::vector<ExponentVector> commutator_gens(const PcPresentation& g) {
    std::vector<ExponentVector> gens;
    for (int j = 1; j < g.ngens(); ++j)
        for (int i = 0; i < j; ++i)
            if (!g.commutator_trivial(j, i))
                gens.push_back(g.commutator_rule(j, i));
    return gens;
}

bool enumerable(const PcPresentation& g) {
    return g.order() <= kEnumLimit;
}

} // namespace

Subgroup derived_subgroup(const PcPresentation& g) {
    return normal_closure(g, commutator_gens(g));
}

std::vector<Subgroup> lower_central_series(const PcPresentation& g) {
    std::vector<Subgroup> series;
    series.push_back(derived_subgroup(g));
    while (!series.back().trivial()) {
        std::vector<ExponentVector> gens;
        for (const auto& u : series.back().igs)
            for (int i = 0; i < g.ngens(); ++i)
                gens.push_back(g.commutator(u, g.generator(i)));
        series.push_back(normal_closure(g, gens));
        if (series.back().order == series[series.size() - 2].order)
            throw pgx_error("lower_central_series: series does not descend (group not nilpotent?)");
    }
    return series;
}

int nilpotency_class(const PcPresentation& g) {
    if (g.ngens() == 0) return 0;
    auto series = lower_central_series(g);
    // series = gamma_2 .. gamma_{c+1} = 1; class c is the last nontrivial index.
    return static_cast<int>(series.size());
}

namespace {

// Subgroup elements as staircase products, exact enumeration.
std::vector<ExponentVector> subgroup_elements_impl(const PcPresentation& g, const Subgroup& h) {
    if (h.order > kEnumLimit) throw pgx_error("subgroup too large to enumerate");
    std::vector<ExponentVector> out;
    out.push_back(g.identity());
    for (std::size_t k = h.igs.size(); k-- > 0;) {
        Exp q = h.slot_index(k);
        std::vector<ExponentVector> next;
        next.reserve(out.size() * q);
        ExponentVector pw = g.identity();
        for (Exp c = 0; c < q; ++c) {
            for (const auto& tail : out) next.push_back(g.multiply(pw, tail));
            if (c + 1 < q) pw = g.multiply(pw, h.igs[k]);
        }
        out = std::move(next);
    }
    return out;
}

Subgroup center_class2(const PcPresentation& g) {
    Subgroup k = whole_group(g);
    for (int j = 0; j < g.ngens(); ++j) {
        if (k.trivial()) break;
        InducedPresentation ip = induced_presentation(g, k);
        std::vector<ExponentVector> images;
        for (const auto& u : ip.gens_in_parent)
            images.push_back(g.commutator(u, g.generator(j)));
        Subgroup ker = kernel_of(ip.pres, g, images);
        std::vector<ExponentVector> gens;
        for (const auto& slot : ker.igs) {
            ExponentVector x = g.identity();
            for (std::size_t t = 0; t < ip.gens_in_parent.size(); ++t)
                if (slot[t] != 0)
                    x = g.multiply(x, g.power(ip.gens_in_parent[t], Int(slot[t])));
            gens.push_back(std::move(x));
        }
        k = subgroup_closure(g, gens);
    }
    return k;
}

Subgroup center_brute(const PcPresentation& g) {
    std::vector<ExponentVector> central;
    for (const auto& x : enumerate_elements(g)) {
        bool ok = true;
        for (int i = 0; i < g.ngens() && ok; ++i)
            ok = g.commutator(x, g.generator(i)).is_identity();
        if (ok) central.push_back(x);
    }
    return subgroup_closure(g, central);
}

} // namespace

Subgroup center(const PcPresentation& g) {
    if (g.ngens() == 0) return whole_group(g);
    if (nilpotency_class(g) <= 2) return center_class2(g);
    if (enumerable(g)) return center_brute(g);
    throw pgx_error("center: group too large for class > 2 path");
}

Subgroup frattini_subgroup(const PcPresentation& g) {
    if (g.ngens() == 0) return trivial_subgroup(g);
    Exp p = static_cast<Exp>(g.prime());
    std::vector<ExponentVector> gens = commutator_gens(g);
    for (int i = 0; i < g.ngens(); ++i)
        gens.push_back(g.power(g.generator(i), Int(p)));
    return normal_closure(g, gens);
}

CharacteristicSubgroups characteristic_subgroups(const PcPresentation& g) {
    CharacteristicSubgroups cs;
    cs.lower_central = lower_central_series(g);
    cs.derived = cs.lower_central.front();
    cs.nilpotency_class = g.ngens() == 0 ? 0 : static_cast<int>(cs.lower_central.size());
    cs.center = center(g);
    cs.frattini = frattini_subgroup(g);
    return cs;
}

Subgroup agemo(const PcPresentation& g, const Subgroup& h) {
    if (h.trivial()) return trivial_subgroup(g);
    Exp p = static_cast<Exp>(g.prime());
    if (nilpotency_class(g) < p) {
        // Normal closure of igs p-th powers; the quotient is then generated by
        // order-p elements and regular, hence of exponent p.
        std::vector<ExponentVector> gens;
        for (const auto& u : h.igs) gens.push_back(g.power(u, Int(p)));
        return normal_closure(g, gens);
    }
    if (h.order <= kEnumLimit) {
        std::vector<ExponentVector> gens;
        for (const auto& x : subgroup_elements_impl(g, h))
            gens.push_back(g.power(x, Int(p)));
        return subgroup_closure(g, gens);
    }
    throw pgx_error("agemo: needs class < p or enumerable subgroup");
}

PowerStructure power_structure(const PcPresentation& g) {
    PowerStructure ps;
    if (g.ngens() == 0) return ps;
    Subgroup h = whole_group(g);
    while (!h.trivial()) {
        h = agemo(g, h);
        if (!h.trivial()) ps.agemo_orders.push_back(h.order);
        ++ps.exponent_log;
    }
    ps.agemo_orders.push_back(1);
    return ps;
}

std::string StructureFingerprint::to_string() const {
    std::ostringstream os;
    os << "order=" << order.str() << " exp=" << exponent.str()
       << " class=" << nilpotency_class << " ab=[" << abelianization.to_string()
       << "] |G'|=" << derived_order.str() << " Z=[" << center_invariants.to_string()
       << "] pow=";
    for (std::size_t i = 0; i < power_orders.size(); ++i)
        os << (i ? "," : "") << power_orders[i].str();
    return os.str();
}

StructureFingerprint fingerprint(const PcPresentation& g) {
    StructureFingerprint fp;
    fp.order = g.order();
    if (g.ngens() == 0) return fp;
    PowerStructure ps = power_structure(g);
    fp.exponent = int_pow(g.prime(), ps.exponent_log);
    Subgroup der = derived_subgroup(g);
    fp.nilpotency_class = der.trivial() ? 1 : nilpotency_class(g);
    fp.abelianization = abelian_invariants(g, whole_group(g), &der);
    fp.derived_order = der.order;
    fp.center_invariants = abelian_invariants(g, center(g));
    fp.power_orders = ps.agemo_orders;
    return fp;
}

std::vector<ExponentVector> subgroup_elements(const PcPresentation& g, const Subgroup& h) {
    return subgroup_elements_impl(g, h);
}

std::vector<ExponentVector> enumerate_elements(const PcPresentation& g) {
    if (!enumerable(g)) throw pgx_error("group too large to enumerate");
    std::vector<ExponentVector> out;
    out.reserve(static_cast<std::size_t>(g.order()));
    ExponentVector v(g.ngens());
    for (;;) {
        out.push_back(v);
        int i = g.ngens() - 1;
        while (i >= 0 && ++v[i] == g.relative_order(i)) v[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

std::vector<std::pair<Int, long long>> element_order_statistics(const PcPresentation& g) {
    std::map<Int, long long> counts;
    for (const auto& x : enumerate_elements(g)) ++counts[g.element_order(x)];
    return {counts.begin(), counts.end()};
}

long long conjugacy_class_count(const PcPresentation& g) {
    auto elems = enumerate_elements(g);
    long long commuting = 0;
    for (const auto& x : elems)
        for (const auto& y : elems)
            if (g.commutator(x, y).is_identity()) ++commuting;
    return commuting / static_cast<long long>(elems.size());
}

std::vector<Subgroup> lower_exponent_p_series(const PcPresentation& g) {
    std::vector<Subgroup> series;
    Exp p = static_cast<Exp>(g.prime());
    Subgroup cur = whole_group(g);
    for (;;) {
        // lambda_{k+1} = [lambda_k, G] * lambda_k^p
        std::vector<ExponentVector> gens;
        for (const auto& u : cur.igs)
            for (int i = 0; i < g.ngens(); ++i)
                gens.push_back(g.commutator(u, g.generator(i)));
        Subgroup comm_part = normal_closure(g, gens);
        Subgroup pow_part = agemo(g, cur);
        std::vector<ExponentVector> all = comm_part.igs;
        all.insert(all.end(), pow_part.igs.begin(), pow_part.igs.end());
        Subgroup next = subgroup_closure(g, all);
        series.push_back(next);
        if (next.trivial()) return series;
        if (next.order == cur.order)
            throw pgx_error("lower_exponent_p_series: series does not descend");
        cur = std::move(next);
    }
}

namespace {

struct IsoSearch {
    const PcPresentation& a;
    const PcPresentation& b;
    std::vector<ExponentVector> b_elems;
    std::vector<int> b_layer;             // per element, lambda-layer depth
    std::vector<Int> b_order;
    std::vector<int> a_gen_layer;
    std::vector<Int> a_gen_order;
    std::vector<ExponentVector> images;   // per a-generator
    long long nodes = 0;

    bool relations_ok(int i) {
        // All relations whose every participant has index >= i.
        ExponentVector lhs = b.power(images[i], Int(a.relative_order(i)));
        ExponentVector rhs = a.power_rule(i).e.empty()
                                 ? b.identity()
                                 : apply_hom(a, b, images, a.power_rule(i));
        if (lhs != rhs) return false;
        for (int j = i + 1; j < a.ngens(); ++j) {
            lhs = b.commutator(images[j], images[i]);
            rhs = a.commutator_trivial(j, i) ? b.identity()
                                             : apply_hom(a, b, images, a.commutator_rule(j, i));
            if (lhs != rhs) return false;
        }
        return true;
    }

    bool extend(int i) {
        if (++nodes > 50'000'000)
            throw pgx_error("brute_isomorphic: search budget exceeded");
        if (i < 0) {
            std::vector<ExponentVector> gens(images.begin(), images.end());
            return subgroup_closure(b, gens).order == b.order();
        }
        for (std::size_t e = 0; e < b_elems.size(); ++e) {
            if (b_order[e] != a_gen_order[i] || b_layer[e] != a_gen_layer[i]) continue;
            images[i] = b_elems[e];
            if (relations_ok(i) && extend(i - 1)) return true;
        }
        return false;
    }
};

int layer_of(const PcPresentation& g, const std::vector<Subgroup>& lambda,
             const ExponentVector& x) {
    int d = 1;
    for (const auto& s : lambda) {
        if (!contains(g, s, x)) break;
        ++d;
    }
    return d;
}

} // namespace

bool brute_isomorphic(const PcPresentation& a, const PcPresentation& b) {
    if (a.order() != b.order()) return false;
    if (a.ngens() == 0) return true;
    if (fingerprint(a) != fingerprint(b)) return false;

    IsoSearch s{a, b};
    s.b_elems = enumerate_elements(b);
    auto lam_a = lower_exponent_p_series(a);
    auto lam_b = lower_exponent_p_series(b);
    if (lam_a.size() != lam_b.size()) return false;
    for (std::size_t k = 0; k < lam_a.size(); ++k)
        if (lam_a[k].order != lam_b[k].order) return false;
    s.b_layer.reserve(s.b_elems.size());
    s.b_order.reserve(s.b_elems.size());
    for (const auto& x : s.b_elems) {
        s.b_layer.push_back(layer_of(b, lam_b, x));
        s.b_order.push_back(b.element_order(x));
    }
    for (int i = 0; i < a.ngens(); ++i) {
        s.a_gen_layer.push_back(layer_of(a, lam_a, a.generator(i)));
        s.a_gen_order.push_back(a.element_order(a.generator(i)));
    }
    s.images.assign(a.ngens(), b.identity());
    return s.extend(a.ngens() - 1);
}

} // namespace pgx
