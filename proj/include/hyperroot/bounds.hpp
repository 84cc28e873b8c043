#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperroot/multiplicity.hpp"
#include "hyperroot/qseries.hpp"

namespace hyperroot {

// Conjectured multiplicity bounds for symmetric generalized Cartan matrices
// (all simple roots of squared length 2).  Throughout, the bound argument is
// 1 - (alpha|alpha)/2; an odd or negative argument raises OddNormError.
//
// `d` is the dimension of the ambient hyperbolic lattice.  It defaults to
// the rank (d = 0 means "use the rank") but stays overridable because the
// two can genuinely differ; the caller decides.

// p^(d-2)(1 - (alpha|alpha)/2), the partition bound.  Requires d >= 3.
Int frenkel_bound(const GCM& g, const RootVector& alpha, int d = 0);

// p^(d-1)(1 - (alpha|alpha)/2) - p^(d-1)(-(alpha|alpha)/2).  Requires
// d >= 3 and (alpha|alpha) <= 0.
Int borcherds_bound(const GCM& g, const RootVector& alpha, int d = 0);

// p_sigma(1 - (alpha|alpha)/2): the eta-quotient bound, specific to the
// rank-3 algebra behind the "F" preset (WrongAlgebraError otherwise).  Only
// the generic branch is evaluated; vectors whose norm is divisible by 46
// could fall under the sharper lattice branch, which callers can flag via
// niemann_second_branch_possible.
Int niemann_bound(const GCM& g, const RootVector& alpha);

bool niemann_second_branch_possible(long long norm);

struct BoundRow {
    RootVector alpha;
    long long norm = 0;  // (alpha|alpha)
    Int mult;
    Int frenkel;
    Int borcherds;
    std::optional<Int> niemann;        // present only for the "F" preset
    bool second_branch_possible = false;  // 46 | norm: lattice branch untested
    bool saturated = false;  // mult == frenkel
    bool violated = false;   // mult > frenkel
};

struct BoundReport {
    std::string gcm_id;
    int d = 0;
    long long height_bound = 0;
    std::vector<BoundRow> rows;  // positive imaginary roots, (height, lex) order
    std::size_t violations = 0;
    std::size_t saturations = 0;

    std::string to_json() const;
    std::string to_csv() const;
};

// Compare Peterson multiplicities of every positive imaginary root of
// height <= H against the bounds above.  The engine overload reuses a warm
// multiplicity table.
BoundReport check_frenkel(const GCM& g, long long H, int d = 0);
BoundReport check_frenkel(PetersonEngine& engine, long long H, int d = 0);

}  // namespace hyperroot
