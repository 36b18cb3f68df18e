#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mzl/cell.hpp"
#include "mzl/groth.hpp"
#include "mzl/series.hpp"

namespace mzl {

/// Exceptional divisor with the order of the function (N) and the shifted
/// jacobian multiplicity (nu) along it.
struct Divisor {
    std::string id;
    std::int64_t N = 1;
    std::int64_t nu = 1;
};

/// Divisor data for a tuple of functions (f, f_1, ..., f_m): orders of each
/// along the divisor, plus nu.
struct MultiDivisor {
    std::string id;
    std::int64_t Nf = 0;
    std::vector<std::int64_t> Nfi;
    std::int64_t nu = 1;
};

/// Open stratum of a simple normal-crossing configuration: the divisors it
/// lies on, the class of its canonical cyclic cover, the cover order m, the
/// stratum label and whether it sits over the chosen base point.
struct Stratum {
    std::vector<std::string> I;
    GrothElement cover_class;
    std::int64_t m = 1;
    std::string base_label;
    bool over_point = false;
};

struct ResolutionData {
    std::int64_t ambient_dim = 1;
    std::vector<Divisor> divisors;
    std::vector<Stratum> strata;
};

struct MultiResolutionData {
    std::int64_t ambient_dim = 1;
    std::size_t nfuncs = 0;  // number of auxiliary functions f_1..f_m
    std::vector<MultiDivisor> divisors;
    std::vector<Stratum> strata;
};

void resolution_validate(const ResolutionData& r);
void resolution_validate(const MultiResolutionData& r);

/// The contact-order series sum_I (L-1)^{|I|-1} [cover_I] prod_i
/// L^{-nu_i} T^{N_i} / (1 - L^{-nu_i} T^{N_i}). With local=true only strata
/// over the base point are summed.
RationalSeries zeta_from_resolution(const ResolutionData& r, bool local,
                                    const std::string& var = "T");

/// -lim_{T -> infinity} of a contact-order series.
GrothElement nearby_cycles(const RationalSeries& z);

/// Multivariable contact series in T0 (order of f) and T1..Tr (alpha
/// weights), restricted by theta over (beta, alpha): beta_i is the order of
/// f_i. Assembled through lattice cells, an auxiliary variable carrying the
/// measure weight, and the substitution of L^-1 for it.
RationalSeries zeta_multi(const MultiResolutionData& r, const Cell& theta,
                          std::size_t rvars);

struct WeightPair {
    LinearForm ell;  // over (n, alpha), strictly positive off the origin
    LinearForm eps;  // over (n, alpha), nonnegative
};

/// Limit at T -> infinity of sum_{(n,alpha) in Delta} mu(A_{n,alpha})
/// L^{-eps(n,alpha)} T^{ell(n,alpha)}. Every alternate weight pair must give
/// the same value; disagreement is reported as a mismatch.
GrothElement prop45_limit(const MultiResolutionData& r, const Cell& theta,
                          const Cell& delta, const WeightPair& w,
                          const std::vector<WeightPair>& alternates = {});

}  // namespace mzl
