#include "pgx/gamma.hpp"

namespace pgx {

namespace {

PcPresentation abelian_pcp(const AbelianInvariants& inv) {
    if (inv.trivial()) {
        PcPresentation p(std::vector<std::string>{}, std::vector<Exp>{});
        p.finalize();
        return p;
    }
    PcPresentation p = cyclic_group(static_cast<Exp>(inv.divisors()[0]), "c1");
    for (std::size_t i = 1; i < inv.divisors().size(); ++i)
        p = direct_product(p, cyclic_group(static_cast<Exp>(inv.divisors()[i]),
                                           "c" + std::to_string(i + 1)));
    return p;
}

GroupDescriptor descriptor_of_pres(PcPresentation pres) {
    GroupDescriptor d;
    d.pres = std::make_shared<PcPresentation>(std::move(pres));
    d.fp = fingerprint(*d.pres);
    if (d.fp.nilpotency_class <= 1) d.abelian = d.fp.abelianization;
    return d;
}

} // namespace

AbelianInvariants direct_product_multiplier(const AbelianInvariants& mh,
                                            const AbelianInvariants& mk,
                                            const AbelianInvariants& hab,
                                            const AbelianInvariants& kab) {
    return mh.times(mk).times(abelian_tensor(hab, kab));
}

GroupDescriptor abelian_descriptor(const AbelianInvariants& inv) {
    return descriptor_of_pres(abelian_pcp(inv));
}

GroupDescriptor product_descriptor(const AbelianInvariants& a, const GroupDescriptor& d) {
    if (d.abelian) return abelian_descriptor(a.times(*d.abelian));
    return descriptor_of_pres(direct_product(abelian_pcp(a), *d.pres));
}

GroupDescriptor direct_product_tensor(const GroupDescriptor& tg, const GroupDescriptor& th,
                                      const AbelianInvariants& gab,
                                      const AbelianInvariants& hab) {
    AbelianInvariants cross = abelian_tensor(gab, hab);
    AbelianInvariants ab = cross.times(cross);
    if (tg.abelian && th.abelian)
        return abelian_descriptor(ab.times(*tg.abelian).times(*th.abelian));
    if (tg.abelian) return product_descriptor(ab.times(*tg.abelian), th);
    if (th.abelian) return product_descriptor(ab.times(*th.abelian), tg);
    return descriptor_of_pres(direct_product(direct_product(*tg.pres, *th.pres),
                                             abelian_pcp(ab)));
}

GroupDescriptor tensor_via_decomposition(const NuRealization& nu) {
    if (nu.g().ngens() > 0 && nu.g().prime() == 2)
        throw pgx_error("tensor_via_decomposition: not valid at p = 2");
    Subgroup der = derived_subgroup(nu.g());
    AbelianInvariants gab = abelian_invariants(nu.g(), whole_group(nu.g()), &der);
    AbelianInvariants gamma = gamma_whitehead(gab);
    GroupDescriptor wedge = exterior_square(nu);
    return product_descriptor(gamma, wedge);
}

GroupDescriptor tensor_via_decomposition(const PcPresentation& g, long long p) {
    if (p == 2) throw pgx_error("tensor_via_decomposition: not valid at p = 2");
    return tensor_via_decomposition(realize_nu(g, p));
}

} // namespace pgx
