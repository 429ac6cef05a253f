#pragma once

#include "pgx/fppres.hpp"
#include "pgx/pcpres.hpp"

#include <chrono>
#include <optional>
#include <vector>

namespace pgx {

struct PQuotientOptions {
    int max_class = 24;       // cap on exponent-p class steps
    int max_gens = 200;       // ceiling on the quotient's pc generator count
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Per-class progress of the quotient computation.  order_exponent is
// log_p |G_k|; terminal means the last extension step added no generators,
// so the result is the full maximal p-quotient.
struct QuotientTrace {
    struct Row {
        int pclass;
        int order_exponent;
        int generator_count;
    };
    std::vector<Row> rows;
    bool terminal = false;

    std::string to_log() const;
};

struct PQuotientResult {
    PcPresentation pc;                        // consistent, all relative orders p
    std::vector<ExponentVector> fp_images;    // epimorphism fp generator -> element
    QuotientTrace trace;
};

// Largest quotient of exponent-p class <= max_class of the group presented by
// fp that is a finite p-group; advances class by class until stable.
PQuotientResult p_quotient(const FpPresentation& fp, long long p,
                           const PQuotientOptions& opts = {});

// Images of src's pc generators under the homomorphism determined by images
// of the fp generators src was computed from (uses the generator definitions
// recorded by p_quotient).
std::vector<ExponentVector> images_from_definitions(
    const PcPresentation& src, const PcPresentation& dst,
    const std::vector<ExponentVector>& fp_gen_images);

// Re-read a pc presentation as a finite presentation (defining relators).
FpPresentation to_fp_presentation(const PcPresentation& g);

// p-covering group of a standardized pc group (one produced by p_quotient, so
// generator definitions are on record).  New central order-p generators span
// the p-multiplicator; parent_gens tells where they start.
struct PCoverResult {
    PcPresentation cover;
    int parent_gens = 0;
};
PCoverResult p_cover(const PcPresentation& standard_pc, long long p);

// Serialize back to the presentation text grammar.
std::string to_presentation_text(const PcPresentation& g);

} // namespace pgx
