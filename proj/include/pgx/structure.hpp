#pragma once

#include "pgx/subgroup.hpp"

#include <string>
#include <vector>

namespace pgx {

struct CharacteristicSubgroups {
    Subgroup derived;
    std::vector<Subgroup> lower_central;  // gamma_2, gamma_3, ... down to trivial
    Subgroup center;
    Subgroup frattini;
    int nilpotency_class = 1;
};

Subgroup derived_subgroup(const PcPresentation& g);
std::vector<Subgroup> lower_central_series(const PcPresentation& g);  // gamma_2, ...
int nilpotency_class(const PcPresentation& g);
Subgroup center(const PcPresentation& g);
Subgroup frattini_subgroup(const PcPresentation& g);
CharacteristicSubgroups characteristic_subgroups(const PcPresentation& g);

// Agemo subgroup <x^p : x in h> of a p-group; needs class(g) < p or an
// enumerable order.
Subgroup agemo(const PcPresentation& g, const Subgroup& h);

// p-exponent e with exp(G) = p^e, plus |G^{p^k}| for k = 1..e.
struct PowerStructure {
    unsigned exponent_log = 0;
    std::vector<Int> agemo_orders;
};
PowerStructure power_structure(const PcPresentation& g);

// Identification signature: equal groups give equal fingerprints, and within
// the answer set of this problem domain the converse is used as the matching
// policy (reported ambiguity aside).
struct StructureFingerprint {
    Int order = 1;
    Int exponent = 1;
    int nilpotency_class = 0;
    AbelianInvariants abelianization;
    Int derived_order = 1;
    AbelianInvariants center_invariants;
    std::vector<Int> power_orders;  // |G^{p^k}|, k >= 1

    bool operator==(const StructureFingerprint&) const = default;
    std::string to_string() const;
};

StructureFingerprint fingerprint(const PcPresentation& g);

// All elements, mixed-radix order; only for small groups.
std::vector<ExponentVector> enumerate_elements(const PcPresentation& g);

// All elements of a subgroup as staircase products; only for small subgroups.
std::vector<ExponentVector> subgroup_elements(const PcPresentation& g, const Subgroup& h);

// Multiset of element orders, as (order, count); brute force.
std::vector<std::pair<Int, long long>> element_order_statistics(const PcPresentation& g);

long long conjugacy_class_count(const PcPresentation& g);

// Lower exponent-p central series lambda_2, lambda_3, ... down to trivial.
std::vector<Subgroup> lower_exponent_p_series(const PcPresentation& g);

// Exhaustive isomorphism test by backtracking over generator images; intended
// for fixture-sized groups (order a few hundred).
bool brute_isomorphic(const PcPresentation& a, const PcPresentation& b);

} // namespace pgx
