#pragma once

#include "pgx/structure.hpp"

#include <vector>

namespace pgx {

// Setting for class-2 groups with G/G' and G' elementary abelian: V = G/G',
// W = G' as F_p spaces, the commutator pairing and the p-th power map.
struct BEContext {
    long long p = 0;
    int dimV = 0, dimW = 0;
    // pairing[i][j] = coordinates of [g_i, g_j] in W; antisymmetric
    std::vector<std::vector<std::vector<long long>>> pairing;
    // powmap[i] = coordinates of g_i^p in W
    std::vector<std::vector<long long>> powmap;
    bool within_stated_hypothesis = false;  // |V| = p^3, |W| = p^2
};

struct BESubspaces {
    int dimX1 = 0, dimX2 = 0, dimX = 0;
    int dimN = 0;        // dim (V (x) W) / X
    int dimKerRho = 0;   // dim ker(rho : V ^ V -> W)
};

BEContext be_setup(const PcPresentation& g, long long p);
BESubspaces be_X_dimensions(const BEContext& ctx);

// M = Z_{p^2}^r x Z_p^{(dimN - r) + (dimKerRho - r)} where r is the rank of
// sigma restricted to ker rho, landing in N.
AbelianInvariants be_multiplier(const BEContext& ctx);

} // namespace pgx
