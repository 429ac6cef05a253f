#pragma once

#include "pgx/pquotient.hpp"
#include "pgx/structure.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pgx {

// nu(G) on two copies of G with the conjugation-compatibility relations;
// [G, G^phi] realizes the non-abelian tensor square.  Presentations sit
// behind shared_ptr so the contained Subgroups stay valid across copies.
struct NuRealization {
    std::shared_ptr<const PcPresentation> g_ptr;
    std::shared_ptr<const PcPresentation> nu_ptr;
    std::vector<ExponentVector> embed_g;    // images of G's pc generators
    std::vector<ExponentVector> embed_gphi; // images of the phi-copy generators
    Subgroup tensor_sub;                    // [G, G^phi]
    Subgroup nabla;                         // nabla(G)
    QuotientTrace trace;
    int g_class = 1;
    int nu_class = 1;

    const PcPresentation& g() const { return *g_ptr; }
    const PcPresentation& nu() const { return *nu_ptr; }
    ExponentVector embed(const ExponentVector& x, bool phi) const;
    // Images of nu's pc generators under nu(G) -> G (both copies to G).
    std::vector<ExponentVector> nu_to_g_images() const;
};

// Result of a tensor/exterior square: fingerprint, abelian invariants when
// abelian, and the presentation itself for further matching.
struct GroupDescriptor {
    StructureFingerprint fp;
    std::optional<AbelianInvariants> abelian;
    std::shared_ptr<const PcPresentation> pres;
    std::string describe() const;
};

FpPresentation build_nu_presentation(const PcPresentation& g);

NuRealization realize_nu(const PcPresentation& g, long long p,
                         const PQuotientOptions& opts = {});

GroupDescriptor tensor_square(const NuRealization& nu);
GroupDescriptor exterior_square(const NuRealization& nu);
AbelianInvariants schur_multiplier(const NuRealization& nu);

struct EpicenterResult {
    Subgroup epicenter;   // subgroup of G (parent pointer = nu.g())
    bool capable = false;
};
EpicenterResult epicenter(const NuRealization& nu);

// Convenience wrappers that realize nu(G) internally.
GroupDescriptor tensor_square(const PcPresentation& g, long long p);
GroupDescriptor exterior_square(const PcPresentation& g, long long p);
AbelianInvariants schur_multiplier(const PcPresentation& g, long long p);

// Sampled verification of the nu(G) identities (commutator shift rules,
// centrality of the diagonal, Hall-Witt instances, antisymmetry mod nabla).
struct IdentityReport {
    struct Item {
        std::string name;
        int samples = 0;
        int failures = 0;
    };
    std::vector<Item> items;
    bool all_passed() const;
    std::string to_string() const;
};
IdentityReport check_nu_identities(const NuRealization& nu, int samples, unsigned seed = 1);

// Power-commutator expansion for class <= 5:
// [x^n, y] = [x,y]^n [x,y,x]^C(n,2) [x,y,x,x]^C(n,3) [x,y,x,x,x]^C(n,4)
//            [x,y,x,[x,y]]^{n(n-1)(2n-1)/6}
bool verify_power_commutator_identity(const PcPresentation& g, const ExponentVector& x,
                                      const ExponentVector& y, long long n);

} // namespace pgx
