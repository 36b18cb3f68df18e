#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "mzl/linalg.hpp"
#include "mzl/series.hpp"

namespace mzl {

/// coeffs . x + constant, an affine form over the ambient coordinates.
struct LinearForm {
    std::vector<std::int64_t> coeffs;
    std::int64_t constant = 0;
};

Int form_eval(const LinearForm& f, const IVec& x);

/// Conjunction of affine conditions cutting a subset out of N^dim. The
/// orthant constraints x_i >= 0 are implicit.
struct Cell {
    std::size_t dim = 0;
    std::vector<LinearForm> eq;  // form = 0
    std::vector<LinearForm> ge;  // form >= 0
    struct Cong {                // form = r (mod d)
        LinearForm form;
        std::int64_t r = 0;
        std::int64_t d = 1;
    };
    std::vector<Cong> cong;
};

void cell_validate(const Cell& c);

/// One shifted free monoid of lattice points: the set
///   { shift + p + sum n_i * gens[i] : p in ppoints, n in N^k }.
/// ppoints lists the points of the fundamental domain within the solution
/// lattice; open_facets records which generator sides were taken strictly
/// when the domain was half-opened.
struct HalfOpenPiece {
    IVec shift;
    IMat gens;     // rows, linearly independent
    IMat ppoints;  // rows, offsets relative to shift
    std::set<std::size_t> open_facets;
};

/// Disjoint decomposition of the lattice-point set of c into shifted free
/// monoids. Empty when c has no points.
std::vector<HalfOpenPiece> cell_decompose(const Cell& c);

/// Generating function sum_{x in c} x1^{x_1}...xN^{x_N} as a rational series
/// in variables x1..xN.
RationalSeries cell_gf(const Cell& c);

/// Push a lattice generating function along x -> L^{-eps(x)} T^{ell(x)}.
/// ell has one affine form per output variable; the total T-degree must be
/// strictly positive on every generator and every nonzero supported point.
RationalSeries gf_specialize(const RationalSeries& g, const std::vector<LinearForm>& ell,
                             const LinearForm& eps, std::vector<std::string> tvars);

/// Exhaustive scan oracle: all points of c with coordinate sum <= bound.
std::vector<std::vector<std::int64_t>> cell_enumerate(const Cell& c, std::int64_t bound);

}  // namespace mzl
