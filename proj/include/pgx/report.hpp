#pragma once

#include "pgx/be.hpp"
#include "pgx/catalog.hpp"
#include "pgx/gamma.hpp"
#include "pgx/nu.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pgx {

// Full pipeline output for one group.
struct GroupResult {
    std::string name;
    long long p = 0;
    Int order = 1;
    int g_class = 1;
    AbelianInvariants gab;
    AbelianInvariants gamma_gab;
    AbelianInvariants multiplier;
    GroupDescriptor wedge;
    GroupDescriptor tensor;
    int wedge_rank = 0;           // minimal generator count of the wedge
    bool capable = false;
    AbelianInvariants epicenter;
    std::vector<std::string> epicenter_gens;  // igs words in G's generators
    double seconds = 0;
    int nu_order_exponent = 0;
    int nu_class = 0;
    QuotientTrace trace;
};

GroupResult compute_group_result(const PcPresentation& g, long long p,
                                 const std::string& name,
                                 const PQuotientOptions& opts = {});

// Names from the paper's answer set whose fingerprint matches: catalog groups
// and (catalog or auxiliary fixture) x Z_p^(k) products.  More than one name
// means the fingerprint policy is ambiguous for this value.
std::vector<std::string> identify_group(const StructureFingerprint& fp, long long p);

// One expected cell: an abelian group (divisors resolved at a given p) or a
// named nonabelian group times an elementary factor.
struct ExpectedCell {
    std::string named;             // "" for plain abelian cells
    std::vector<int> exponents;    // symbolic mode: p-power exponents
    std::vector<Int> divisors;     // plain mode: literal divisors
    bool symbolic = true;

    static ExpectedCell parse(const std::string& text, bool symbolic);
    AbelianInvariants abelian_at(long long p) const;
    std::string show() const;
};

bool cell_matches(const ExpectedCell& want, const GroupDescriptor& got, long long p,
                  std::string* why);

struct VerdictRow {
    std::string group;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct VerdictReport {
    std::string scope;
    std::vector<VerdictRow> rows;
    int passed = 0, failed = 0, skipped = 0;
    bool ok() const { return failed == 0; }
    void add(VerdictRow row);
};

VerdictReport verify_table1(long long p);
VerdictReport verify_table2(long long p);
VerdictReport verify_theorem_p3p4(long long p);
VerdictReport verify_fixture_table(int order);      // 32 -> table3, 243 -> table4
VerdictReport verify_be_cross(long long p);

// Expected-table access for table generation and the fixture matcher.
struct ExpectedRow {
    std::string key;               // family name or fixture id
    std::string when;              // "-" or parameter condition
    std::vector<std::string> cells;
};
std::vector<ExpectedRow> load_expected(const std::string& table);
// Selects the row for a parameterized catalog entry (evaluating `when`).
const ExpectedRow* match_row(const std::vector<ExpectedRow>& rows,
                             const CatalogEntry& e, long long p);

} // namespace pgx
