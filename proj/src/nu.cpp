#include "pgx/nu.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace pgx {

namespace {

Word conj_word(Word x, const Word& by) {
    return Word::prod({Word::pow(by, -1), std::move(x), by});
}

Word rule_word(const PcPresentation& g, const ExponentVector& v, int offset) {
    std::vector<Word> parts;
    for (int i = 0; i < g.ngens(); ++i)
        if (v.size() && v[i] != 0)
            parts.push_back(Word::pow(Word::generator(offset + i), v[i]));
    return Word::prod(std::move(parts));
}

void append_group_relators(const PcPresentation& g, int offset, FpPresentation& fp) {
    for (int i = 0; i < g.ngens(); ++i) {
        Word lhs = Word::pow(Word::generator(offset + i), g.relative_order(i));
        Word rhs = rule_word(g, g.power_rule(i), offset);
        fp.relators.push_back(Word::prod({lhs, Word::pow(rhs, -1)}));
    }
    for (int j = 1; j < g.ngens(); ++j)
        for (int i = 0; i < j; ++i) {
            Word lhs = Word::comm({Word::generator(offset + j), Word::generator(offset + i)});
            Word rhs = g.commutator_trivial(j, i)
                           ? Word::identity()
                           : rule_word(g, g.commutator_rule(j, i), offset);
            fp.relators.push_back(Word::prod({lhs, Word::pow(rhs, -1)}));
        }
}

} // namespace

FpPresentation build_nu_presentation(const PcPresentation& g) {
    int n = g.ngens();
    FpPresentation fp;
    for (int i = 0; i < n; ++i) fp.names.push_back(g.name(i));
    for (int i = 0; i < n; ++i) fp.names.push_back(g.name(i) + "f");
    append_group_relators(g, 0, fp);
    append_group_relators(g, n, fp);
    // [g_a, g_b^phi]^{g_c} = [g_a^{g_c}, (g_b^{g_c})^phi] = [g_a, g_b^phi]^{g_c^phi}
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                Word base = Word::comm({Word::generator(a), Word::generator(n + b)});
                Word rhs = Word::comm({conj_word(Word::generator(a), Word::generator(c)),
                                       conj_word(Word::generator(n + b), Word::generator(n + c))});
                fp.relators.push_back(Word::prod(
                    {conj_word(base, Word::generator(c)), Word::pow(rhs, -1)}));
                fp.relators.push_back(Word::prod(
                    {conj_word(base, Word::generator(n + c)), Word::pow(rhs, -1)}));
            }
    return fp;
}

ExponentVector NuRealization::embed(const ExponentVector& x, bool phi) const {
    const auto& imgs = phi ? embed_gphi : embed_g;
    ExponentVector v = nu().identity();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) v = nu().multiply(v, nu().power(imgs[i], Int(x[i])));
    return v;
}

std::vector<ExponentVector> NuRealization::nu_to_g_images() const {
    std::vector<ExponentVector> fp_imgs;
    for (int i = 0; i < g().ngens(); ++i) fp_imgs.push_back(g().generator(i));
    for (int i = 0; i < g().ngens(); ++i) fp_imgs.push_back(g().generator(i));
    return images_from_definitions(nu(), g(), fp_imgs);
}

NuRealization realize_nu(const PcPresentation& g, long long p,
                         const PQuotientOptions& opts) {
    if (g.ngens() > 0 && g.prime() != p)
        throw pgx_error("realize_nu: presentation is not a " + std::to_string(p) + "-group");
    NuRealization r;
    r.g_ptr = std::make_shared<PcPresentation>(g);
    r.g_class = g.ngens() == 0 ? 0 : nilpotency_class(g);

    FpPresentation fp = build_nu_presentation(g);
    PQuotientResult pq = p_quotient(fp, p, opts);
    if (!pq.trace.terminal)
        throw budget_error("realize_nu: p-quotient not terminal within class cap " +
                           std::to_string(opts.max_class));
    r.nu_ptr = std::make_shared<PcPresentation>(std::move(pq.pc));
    r.trace = std::move(pq.trace);
    int n = g.ngens();
    r.embed_g.assign(pq.fp_images.begin(), pq.fp_images.begin() + n);
    r.embed_gphi.assign(pq.fp_images.begin() + n, pq.fp_images.end());
    const PcPresentation& nu = *r.nu_ptr;
    r.nu_class = nu.ngens() == 0 ? 0 : nilpotency_class(nu);
    if (r.g_class > 0 && r.nu_class > r.g_class + 1)
        throw pgx_error("realize_nu: class(nu) exceeds class(G)+1");

    std::vector<ExponentVector> tensor_gens;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            tensor_gens.push_back(nu.commutator(r.embed_g[i], r.embed_gphi[j]));
    r.tensor_sub = normal_closure(nu, tensor_gens);

    std::vector<ExponentVector> nabla_gens;
    for (int i = 0; i < n; ++i)
        nabla_gens.push_back(nu.commutator(r.embed_g[i], r.embed_gphi[i]));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            nabla_gens.push_back(nu.multiply(nu.commutator(r.embed_g[i], r.embed_gphi[j]),
                                             nu.commutator(r.embed_g[j], r.embed_gphi[i])));
    r.nabla = subgroup_closure(nu, nabla_gens);

    if (!is_normal(nu, r.nabla))
        throw pgx_error("realize_nu: nabla generating set did not close to a normal subgroup");
    if (!subgroup_leq(nu, r.nabla, r.tensor_sub))
        throw pgx_error("realize_nu: nabla not inside [G, G^phi]");
    if (nu.order() != g.order() * g.order() * r.tensor_sub.order)
        throw pgx_error("realize_nu: |nu(G)| != |G|^2 |G x G|");
    // Diagonal elements of products must already lie in nabla.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ExponentVector x = g.multiply(g.generator(i), g.generator(j));
            ExponentVector d = nu.commutator(r.embed(x, false), r.embed(x, true));
            if (!contains(nu, r.nabla, d))
                throw pgx_error("realize_nu: diagonal element escapes nabla");
        }
    return r;
}

std::string GroupDescriptor::describe() const {
    if (abelian) return abelian->to_string();
    return "nonabelian " + fp.to_string();
}

namespace {

GroupDescriptor descriptor_of(PcPresentation pres) {
    GroupDescriptor d;
    d.pres = std::make_shared<PcPresentation>(std::move(pres));
    d.fp = fingerprint(*d.pres);
    if (d.fp.nilpotency_class <= 1) d.abelian = d.fp.abelianization;
    return d;
}

} // namespace

GroupDescriptor tensor_square(const NuRealization& nu) {
    return descriptor_of(induced_presentation(nu.nu(), nu.tensor_sub).pres);
}

namespace {

// Exterior square presentation together with preimages of its generators
// inside nu(G).
struct WedgeData {
    PcPresentation pres;
    std::vector<ExponentVector> preimages_in_nu;
};

WedgeData wedge_data(const NuRealization& nu) {
    InducedPresentation t = induced_presentation(nu.nu(), nu.tensor_sub);
    std::vector<ExponentVector> nabla_in_t;
    for (const auto& z : nu.nabla.igs) {
        SiftResult s = sift(nu.nu(), nu.tensor_sub, z);
        if (!s.remainder.is_identity())
            throw pgx_error("wedge: nabla escapes the tensor subgroup");
        ExponentVector v(t.pres.ngens());
        for (std::size_t k = 0; k < s.coeffs.size(); ++k) v[k] = s.coeffs[k];
        nabla_in_t.push_back(std::move(v));
    }
    Subgroup nt = subgroup_closure(t.pres, nabla_in_t);
    QuotientResult q = quotient_by(t.pres, nt);
    WedgeData w;
    w.pres = std::move(q.pres);
    for (int lvl : q.surviving_levels)
        w.preimages_in_nu.push_back(t.gens_in_parent[lvl]);
    return w;
}

} // namespace

GroupDescriptor exterior_square(const NuRealization& nu) {
    return descriptor_of(wedge_data(nu).pres);
}

AbelianInvariants schur_multiplier(const NuRealization& nu) {
    WedgeData w = wedge_data(nu);
    std::vector<ExponentVector> nu_to_g = nu.nu_to_g_images();
    std::vector<ExponentVector> images;
    for (const auto& pre : w.preimages_in_nu)
        images.push_back(apply_hom(nu.nu(), nu.g(), nu_to_g, pre));
    Subgroup ker = kernel_of(w.pres, nu.g(), images);
    Subgroup der = derived_subgroup(nu.g());
    if (ker.order * der.order != w.pres.order())
        throw pgx_error("schur_multiplier: |M||G'| != |G ^ G|");
    return abelian_invariants(w.pres, ker);
}

EpicenterResult epicenter(const NuRealization& nu) {
    const PcPresentation& g = nu.g();
    Subgroup z = center(g);
    std::vector<ExponentVector> passing;
    for (const auto& zel : subgroup_elements(g, z)) {
        if (zel.is_identity()) continue;
        ExponentVector zphi = nu.embed(zel, true);
        bool ok = true;
        for (int i = 0; i < g.ngens() && ok; ++i)
            ok = contains(nu.nu(), nu.nabla,
                          nu.nu().commutator(nu.embed_g[i], zphi));
        if (ok) passing.push_back(zel);
    }
    EpicenterResult r;
    r.epicenter = subgroup_closure(g, passing);
    r.capable = r.epicenter.trivial();
    return r;
}

GroupDescriptor tensor_square(const PcPresentation& g, long long p) {
    return tensor_square(realize_nu(g, p));
}
GroupDescriptor exterior_square(const PcPresentation& g, long long p) {
    return exterior_square(realize_nu(g, p));
}
AbelianInvariants schur_multiplier(const PcPresentation& g, long long p) {
    return schur_multiplier(realize_nu(g, p));
}

bool IdentityReport::all_passed() const {
    return std::all_of(items.begin(), items.end(),
                       [](const Item& i) { return i.failures == 0; });
}

std::string IdentityReport::to_string() const {
    std::ostringstream os;
    for (const auto& i : items)
        os << i.name << ": " << (i.samples - i.failures) << "/" << i.samples
           << (i.failures ? " FAIL" : " ok") << "\n";
    return os.str();
}

IdentityReport check_nu_identities(const NuRealization& nu, int samples, unsigned seed) {
    const PcPresentation& g = nu.g();
    const PcPresentation& n = nu.nu();
    std::mt19937_64 rng(seed);
    auto random_g = [&]() {
        ExponentVector v(g.ngens());
        for (int i = 0; i < g.ngens(); ++i)
            v[i] = static_cast<Exp>(rng() % static_cast<unsigned long long>(g.relative_order(i)));
        return v;
    };
    Subgroup der = derived_subgroup(g);
    auto random_derived = [&]() {
        ExponentVector v = g.identity();
        for (const auto& u : der.igs)
            v = g.multiply(v, g.power(u, Int(static_cast<long long>(rng() % 16))));
        return v;
    };
    auto E = [&](const ExponentVector& x, bool phi) { return nu.embed(x, phi); };
    auto C = [&](const ExponentVector& a, const ExponentVector& b) {
        return n.commutator(a, b);
    };

    IdentityReport rep;
    auto run = [&](const std::string& name, auto&& once) {
        IdentityReport::Item item{name, 0, 0};
        for (int s = 0; s < samples; ++s) {
            ++item.samples;
            if (!once()) ++item.failures;
        }
        rep.items.push_back(std::move(item));
    };

    run("phi shift [g1^f,g2,g3] invariance", [&]() {
        ExponentVector a = random_g(), b = random_g(), c = random_g();
        ExponentVector base = C(C(E(a, true), E(b, false)), E(c, false));
        const bool phis[5][3] = {{false, true, false}, {false, false, true},
                                 {true, true, false},  {true, false, true},
                                 {false, true, true}};
        for (const auto& ph : phis)
            if (C(C(E(a, ph[0]), E(b, ph[1])), E(c, ph[2])) != base) return false;
        return true;
    });
    run("antisymmetry for derived entries", [&]() {
        ExponentVector d = random_derived(), h = random_g();
        return C(E(d, false), E(h, true)) ==
               n.inverse(C(E(h, false), E(d, true)));
    });
    run("diagonal trivial on derived subgroup", [&]() {
        ExponentVector d = random_derived();
        return C(E(d, false), E(d, true)).is_identity();
    });
    run("commutator of tensors", [&]() {
        ExponentVector a = random_g(), b = random_g(), x = random_g(), y = random_g();
        ExponentVector lhs = C(C(E(a, false), E(b, true)), C(E(x, false), E(y, true)));
        ExponentVector rhs = C(E(g.commutator(a, b), false), E(g.commutator(x, y), true));
        return lhs == rhs;
    });
    run("symmetric pair commutes", [&]() {
        ExponentVector a = random_g(), b = random_g();
        return C(C(E(a, false), E(b, true)), C(E(b, false), E(a, true))).is_identity();
    });
    run("central-argument vanishing", [&]() {
        // [g1, g2, z^phi] = 1 whenever z commutes with g1 and g2; sample z central.
        static thread_local std::vector<ExponentVector> central;
        if (central.empty()) central = subgroup_elements(g, center(g));
        ExponentVector z = central[rng() % central.size()];
        ExponentVector a = random_g(), b = random_g();
        return C(C(E(a, false), E(b, false)), E(z, true)).is_identity();
    });
    run("diagonal is central in nu", [&]() {
        ExponentVector a = random_g();
        ExponentVector d = C(E(a, false), E(a, true));
        for (int i = 0; i < n.ngens(); ++i)
            if (!n.commutator(d, n.generator(i)).is_identity()) return false;
        return true;
    });
    run("antisymmetry modulo nabla", [&]() {
        ExponentVector a = random_g(), b = random_g();
        ExponentVector v = n.multiply(C(E(a, false), E(b, true)),
                                      C(E(b, false), E(a, true)));
        return contains(n, nu.nabla, v);
    });
    run("Hall-Witt instance", [&]() {
        ExponentVector x = E(random_g(), false), y = E(random_g(), false),
                       z = E(random_g(), true);
        auto lnc = [&](const ExponentVector& a, const ExponentVector& b,
                       const ExponentVector& c) { return C(C(a, b), c); };
        ExponentVector t1 = n.conjugate(lnc(x, n.inverse(y), z), y);
        ExponentVector t2 = n.conjugate(lnc(y, n.inverse(z), x), z);
        ExponentVector t3 = n.conjugate(lnc(z, n.inverse(x), y), x);
        return n.multiply(n.multiply(t1, t2), t3).is_identity();
    });
    run("diagonal membership in nabla", [&]() {
        ExponentVector a = random_g();
        return contains(n, nu.nabla, C(E(a, false), E(a, true)));
    });
    return rep;
}

bool verify_power_commutator_identity(const PcPresentation& g, const ExponentVector& x,
                                      const ExponentVector& y, long long nexp) {
    if (nexp < 1) throw pgx_error("verify_power_commutator_identity: n must be positive");
    if (g.ngens() > 0 && nilpotency_class(g) > 5)
        throw pgx_error("verify_power_commutator_identity: class > 5");
    auto comm = [&](const ExponentVector& a, const ExponentVector& b) {
        return g.commutator(a, b);
    };
    ExponentVector lhs = comm(g.power(x, Int(nexp)), y);
    ExponentVector xy = comm(x, y);
    ExponentVector xyx = comm(xy, x);
    ExponentVector xyxx = comm(xyx, x);
    ExponentVector xyxxx = comm(xyxx, x);
    ExponentVector xyx_xy = comm(xyx, xy);
    auto binom = [&](long long nn, int k) {
        Int r = 1;
        for (int t = 0; t < k; ++t) r = r * (nn - t) / (t + 1);
        return r;
    };
    Int sigma = Int(nexp) * (nexp - 1) * (2 * nexp - 1) / 6;
    ExponentVector rhs = g.power(xy, Int(nexp));
    rhs = g.multiply(rhs, g.power(xyx, binom(nexp, 2)));
    rhs = g.multiply(rhs, g.power(xyxx, binom(nexp, 3)));
    rhs = g.multiply(rhs, g.power(xyxxx, binom(nexp, 4)));
    rhs = g.multiply(rhs, g.power(xyx_xy, sigma));
    return lhs == rhs;
}

} // namespace pgx
