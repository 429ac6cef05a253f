#pragma once

#include "pgx/pcpres.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pgx {

// Residue data entering the presentations as exponents: nu = smallest
// positive non-quadratic residue mod p, zeta = smallest primitive root.
struct ResidueParams {
    long long p = 0;
    long long nu = 0;
    long long zeta = 0;
};
ResidueParams residue_params(long long p);

struct ParamSpec {
    std::string name;
    bool is_range = true;
    IntExpr lo, hi;                 // is_range
    std::vector<IntExpr> values;    // !is_range
};

struct FamilySpec {
    std::string name;               // e.g. "Phi4(221)d_r"
    int isoclinism = 0;             // 2..10
    int order_exponent = 0;         // 3, 4 or 5
    long long min_p = 5;
    std::optional<ParamSpec> param;
    std::vector<std::pair<std::string, IntExpr>> lets;  // evaluated mod p in order
    std::string body;               // presentation text with symbolic exponents
    std::string source_file;
};

struct CatalogEntry {
    const FamilySpec* family = nullptr;
    SymbolEnv assignment;           // parameter binding (possibly empty)
    std::string display_name;       // "Phi4(221)d_r[r=1]"
};

class Catalog {
public:
    // Loads family files listed in <dir>/catalog/index.txt; dir defaults to
    // the built-in data directory, overridable with PGX_CATALOG_DIR.
    explicit Catalog(std::string dir = "");

    const std::vector<FamilySpec>& families() const { return families_; }
    const FamilySpec* find(const std::string& name) const;

    // Deterministic, duplicate-free enumeration of all groups of order
    // p^order_exponent valid at p (catalog file order, then parameter order).
    std::vector<CatalogEntry> list(int order_exponent, long long p) const;

    // Instantiates and validates (consistency + advertised order).
    PcPresentation instantiate(const CatalogEntry& e, long long p) const;
    // Resolves "Phi4(221)d_r[r=2]" style references; a missing assignment
    // picks the first parameter value.
    CatalogEntry resolve(const std::string& ref, long long p) const;

    // Fixture presentations for orders 32 / 243, keyed by the small-group ids
    // used in the expected tables.
    PcPresentation fixture_group(int order, int id) const;
    std::vector<int> fixture_ids(int order) const;
    // Auxiliary named fixture groups (the order-729 wedge targets).
    PcPresentation fixture_named(const std::string& name) const;

    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
    std::vector<FamilySpec> families_;
};

// Shared read-only catalog instance.
const Catalog& catalog();

} // namespace pgx
