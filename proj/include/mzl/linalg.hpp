#pragma once

#include <cstddef>
#include <vector>

#include "mzl/bigint.hpp"

namespace mzl {

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;  // row-major, rectangular

Int idot(const IVec& a, const IVec& b);
IVec matvec(const IMat& rows, const IVec& x);
IMat transpose(const IMat& a);
std::size_t irank(IMat a);
IVec primitive(IVec v);  // divide by the gcd of the entries, fix sign of 0

/// General integer solution of A x = b: x0 plus the kernel lattice.
struct IntSolve {
    bool feasible = false;
    IVec x0;
    IMat kernel;  // rows form a basis of {x : A x = 0}
};
IntSolve solve_integer(const IMat& A, const IVec& b, std::size_t ncols);

/// Basis (as rows) of the lattice {x in Z^ncols : A x = 0}.
IMat kernel_basis(const IMat& A, std::size_t ncols);

/// Basis (as rows) of span(rows) intersected with Z^dim: the saturation.
IMat saturation_basis(const IMat& rows, std::size_t dim);

/// Coordinates of v in a basis given as rows; false if v is outside the
/// lattice the rows generate.
bool lattice_coords(const IMat& basis_rows, const IVec& v, IVec& coords);

Int det(IMat a);           // Bareiss, square input
IMat adjugate(const IMat& a);  // adj(A) * A = det(A) * I

/// Column-style Hermite form of a square nonsingular matrix: lower
/// triangular, positive diagonal. Used for fundamental-domain transversals.
IMat hermite_lower(const IMat& a);

/// floor(num/den) and ceil(num/den) for exact rationals, any signs, den != 0.
Int floor_div(const Int& num, const Int& den);
Int ceil_div(const Int& num, const Int& den);

}  // namespace mzl
