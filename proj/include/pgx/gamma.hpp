#pragma once

#include "pgx/nu.hpp"

namespace pgx {

// M(H x K) = M(H) x M(K) x (H/H' (x) K/K')
AbelianInvariants direct_product_multiplier(const AbelianInvariants& mh,
                                            const AbelianInvariants& mk,
                                            const AbelianInvariants& hab,
                                            const AbelianInvariants& kab);

// (G x H) (x) (G x H) = (GxG) x (Gab (x) Hab)^2 x (HxH); cross terms act
// trivially so they reduce to abelian tensors.
GroupDescriptor direct_product_tensor(const GroupDescriptor& tg, const GroupDescriptor& th,
                                      const AbelianInvariants& gab,
                                      const AbelianInvariants& hab);

// G (x) G = Gamma(G^ab) x (G ^ G) for odd p; cross-checks the direct engine.
GroupDescriptor tensor_via_decomposition(const PcPresentation& g, long long p);
GroupDescriptor tensor_via_decomposition(const NuRealization& nu);

// Descriptor of an explicitly known abelian group.
GroupDescriptor abelian_descriptor(const AbelianInvariants& inv);

// Descriptor of (abelian part) x (arbitrary descriptor).
GroupDescriptor product_descriptor(const AbelianInvariants& a, const GroupDescriptor& d);

} // namespace pgx
