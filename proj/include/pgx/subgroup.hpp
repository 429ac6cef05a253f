#pragma once

#include "pgx/pcpres.hpp"

#include <optional>
#include <vector>

namespace pgx {

// Subgroup of a pc-presented group, held as an echelonized induced generating
// sequence: slot leading indices strictly increase and each leading exponent
// is normalized to a divisor of the relative order at its level.
struct Subgroup {
    const PcPresentation* parent = nullptr;
    std::vector<ExponentVector> igs;   // ascending leading index
    Int order = 1;

    bool trivial() const { return igs.empty(); }
    int leading_of(std::size_t slot) const { return igs[slot].leading(); }
    // Relative index of slot k over the deeper part of the chain.
    Exp slot_index(std::size_t slot) const;
};

struct SiftResult {
    ExponentVector remainder;          // identity iff member
    std::vector<Exp> coeffs;           // exponent per slot, 0 <= c < slot_index
};

Subgroup subgroup_closure(const PcPresentation& pres, std::vector<ExponentVector> gens);
Subgroup normal_closure(const PcPresentation& pres, std::vector<ExponentVector> gens);
Subgroup whole_group(const PcPresentation& pres);
Subgroup trivial_subgroup(const PcPresentation& pres);

SiftResult sift(const PcPresentation& pres, const Subgroup& h, ExponentVector x);
bool contains(const PcPresentation& pres, const Subgroup& h, const ExponentVector& x);
bool subgroup_leq(const PcPresentation& pres, const Subgroup& a, const Subgroup& b);
bool is_normal(const PcPresentation& pres, const Subgroup& h);

// Canonical coset representative of x modulo h (normal form of the transversal).
ExponentVector coset_reduce(const PcPresentation& pres, const Subgroup& h, ExponentVector x);

// Consistent pc presentation on the igs of h, plus the igs elements serving
// as the new generators (in order).
struct InducedPresentation {
    PcPresentation pres;
    std::vector<ExponentVector> gens_in_parent;
};
InducedPresentation induced_presentation(const PcPresentation& pres, const Subgroup& h);

// G/nsub; throws unless nsub is normal.  Also returns the images of the
// parent's pc generators in the quotient.
struct QuotientResult {
    PcPresentation pres;
    std::vector<ExponentVector> gen_images;
    std::vector<int> surviving_levels;  // parent pc index behind each quotient generator
};
QuotientResult quotient_by(const PcPresentation& pres, const Subgroup& nsub);

// Checks that pc-generator images define a homomorphism src -> dst (every
// defining relation maps to the identity); returns a failure message or nullopt.
std::optional<std::string> homomorphism_failure(const PcPresentation& src,
                                                const PcPresentation& dst,
                                                const std::vector<ExponentVector>& images);

ExponentVector apply_hom(const PcPresentation& src, const PcPresentation& dst,
                         const std::vector<ExponentVector>& images, const ExponentVector& x);

// Kernel of the homomorphism given by generator images; throws if the images
// violate a relation.
Subgroup kernel_of(const PcPresentation& src, const PcPresentation& dst,
                   const std::vector<ExponentVector>& images);

// Invariants of sub/(modulo * [sub, sub]) via an integer Smith normal form of
// the relation matrix on sub's induced generators.
AbelianInvariants abelian_invariants(const PcPresentation& pres, const Subgroup& sub,
                                     const Subgroup* modulo = nullptr);

} // namespace pgx
