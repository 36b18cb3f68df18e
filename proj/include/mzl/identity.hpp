#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mzl/cell.hpp"
#include "mzl/groth.hpp"
#include "mzl/jets.hpp"
#include "mzl/resolution.hpp"
#include "mzl/series.hpp"

namespace mzl {

/// Contact series over a split jet space with blocks of dimension d1 and
/// d2: the T^n coefficient is the measure of the level-n jets whose second
/// block has positive order and whose block orders sum to more than n.
RationalSeries u_series(std::int64_t d1, std::int64_t d2, const std::string& var = "T");

/// -lim at T -> infinity of the coefficientwise product of u_series(d1, d2)
/// with z, checked against the closed form L^{d1} * (-lim z); disagreement
/// is a mismatch. z must be a one-variable series with zero constant term
/// and a finite limit.
GrothElement u_part(std::int64_t d1, std::int64_t d2, const RationalSeries& z);

struct WData {
    MultiResolutionData res;
    Cell theta;   // over (beta, alpha), one auxiliary weight
    Cell region;  // over (n, m)
};

/// L^d times the gap between the flat and the m-shifted weighting of the
/// region intersected with { 1 <= m <= n }. A nonzero gap is a mismatch.
GrothElement w_cancellation(const WData& w, std::int64_t d);

struct IdentityInstance {
    std::int64_t d1 = 1;
    std::int64_t d2 = 1;
    std::int64_t d3 = 0;
    ResolutionData res_f;       // over the full space of dimension d1+d2+d3
    RelabelTable table;         // strata of res_f -> strata of res_ftilde
    ResolutionData res_ftilde;  // over the last block; empty when d3 = 0
    // The function itself, over d1+d2+d3 coordinates; every monomial must
    // have matching total degree in the first and the second block.
    std::optional<PolySpec> poly;
};

struct IdentityReport {
    GrothElement lhs;  // relabeled and summed value at infinity of res_f
    GrothElement rhs;  // L^{d1} times the local value at infinity of res_ftilde
    bool symbolic_match = false;
    std::vector<bool> spec_match;  // one verdict per specialization
    bool ok = false;
};

/// Compares the two sides symbolically and under each specialization.
/// Numeric when q is set, polynomial in L otherwise. A mismatch is reported
/// in the verdicts, not thrown.
IdentityReport identity_check(const IdentityInstance& inst,
                              const std::vector<Specialization>& specs = {});

}  // namespace mzl
