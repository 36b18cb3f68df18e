#include "mzl/linalg.hpp"

#include <algorithm>

#include "mzl/error.hpp"

namespace mzl {

Int idot(const IVec& a, const IVec& b) {
    expect(a.size() == b.size(), errc::internal, "dot: length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IVec matvec(const IMat& rows, const IVec& x) {
    IVec r;
    r.reserve(rows.size());
    for (const auto& row : rows) r.push_back(idot(row, x));
    return r;
}

IMat transpose(const IMat& a) {
    if (a.empty()) return {};
    IMat r(a[0].size(), IVec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
    return r;
}

std::size_t irank(IMat a) {
    std::size_t rank = 0;
    if (a.empty()) return 0;
    std::size_t ncols = a[0].size();
    for (std::size_t col = 0; col < ncols && rank < a.size(); ++col) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][col] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[rank], a[piv]);
        for (std::size_t i = rank + 1; i < a.size(); ++i) {
            if (a[i][col] == 0) continue;
            Int f1 = a[rank][col], f2 = a[i][col];
            for (std::size_t j = col; j < ncols; ++j) a[i][j] = a[i][j] * f1 - a[rank][j] * f2;
        }
        ++rank;
    }
    return rank;
}

IVec primitive(IVec v) {
    Int g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

namespace {

// Column echelon form by unimodular column operations: H = A * U.
// pivots lists (row, col) pairs; pivot columns come first and have positive
// leading entries.
struct Hnf {
    IMat H;
    IMat U;  // square ncols
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
};

Hnf hnf(const IMat& A, std::size_t ncols) {
    Hnf r;
    r.H = A;
    for (auto& row : r.H) row.resize(ncols, Int(0));
    r.U.assign(ncols, IVec(ncols, Int(0)));
    for (std::size_t i = 0; i < ncols; ++i) r.U[i][i] = 1;

    auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (auto& row : r.H) row[dst] -= q * row[src];
        for (auto& row : r.U) row[dst] -= q * row[src];
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (auto& row : r.H) std::swap(row[a], row[b]);
        for (auto& row : r.U) std::swap(row[a], row[b]);
    };
    auto col_neg = [&](std::size_t c) {
        for (auto& row : r.H) row[c] = -row[c];
        for (auto& row : r.U) row[c] = -row[c];
    };

    std::size_t p = 0;
    for (std::size_t row = 0; row < r.H.size() && p < ncols; ++row) {
        for (;;) {
            std::size_t jmin = ncols;
            for (std::size_t j = p; j < ncols; ++j) {
                if (r.H[row][j] == 0) continue;
                if (jmin == ncols ||
                    abs(r.H[row][j]) < abs(r.H[row][jmin]))
                    jmin = j;
            }
            if (jmin == ncols) break;  // row is zero past p
            bool lone = true;
            for (std::size_t j = p; j < ncols; ++j) {
                if (j == jmin || r.H[row][j] == 0) continue;
                lone = false;
                Int q = r.H[row][j] / r.H[row][jmin];
                col_sub(j, jmin, q);
            }
            if (lone) {
                col_swap(p, jmin);
                if (r.H[row][p] < 0) col_neg(p);
                r.pivots.emplace_back(row, p);
                ++p;
                break;
            }
        }
    }
    return r;
}

}  // namespace

IntSolve solve_integer(const IMat& A, const IVec& b, std::size_t ncols) {
    IntSolve s;
    if (A.empty()) {
        s.feasible = true;
        s.x0.assign(ncols, Int(0));
        s.kernel.assign(ncols, IVec(ncols, Int(0)));
        for (std::size_t i = 0; i < ncols; ++i) s.kernel[i][i] = 1;
        return s;
    }
    expect(A.size() == b.size(), errc::internal, "solve: rhs length mismatch");
    Hnf h = hnf(A, ncols);
    IVec y(ncols, Int(0));
    for (const auto& [row, col] : h.pivots) {
        Int val = b[row];
        for (std::size_t c = 0; c < col; ++c) val -= h.H[row][c] * y[c];
        if (val % h.H[row][col] != 0) return s;  // infeasible
        y[col] = val / h.H[row][col];
    }
    IVec x0(ncols, Int(0));
    for (std::size_t i = 0; i < ncols; ++i)
        for (std::size_t c = 0; c < ncols; ++c) x0[i] += h.U[i][c] * y[c];
    if (matvec(A, x0) != b) return s;  // some non-pivot row inconsistent
    s.feasible = true;
    s.x0 = std::move(x0);
    for (std::size_t c = h.pivots.size(); c < ncols; ++c) {
        IVec k(ncols);
        for (std::size_t i = 0; i < ncols; ++i) k[i] = h.U[i][c];
        s.kernel.push_back(std::move(k));
    }
    return s;
}

IMat kernel_basis(const IMat& A, std::size_t ncols) {
    return solve_integer(A, IVec(A.size(), Int(0)), ncols).kernel;
}

IMat saturation_basis(const IMat& rows, std::size_t dim) {
    IMat w = kernel_basis(rows, dim);
    if (w.empty()) {
        IMat id(dim, IVec(dim, Int(0)));
        for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;
        return id;
    }
    return kernel_basis(w, dim);
}

bool lattice_coords(const IMat& basis_rows, const IVec& v, IVec& coords) {
    IntSolve s = solve_integer(transpose(basis_rows), v, basis_rows.size());
    if (!s.feasible) return false;
    coords = std::move(s.x0);
    return true;
}

Int det(IMat a) {
    std::size_t n = a.size();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

IMat adjugate(const IMat& a) {
    std::size_t n = a.size();
    IMat adj(n, IVec(n));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            IMat minor;
            minor.reserve(n - 1);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                IVec row;
                row.reserve(n - 1);
                for (std::size_t c = 0; c < n; ++c)
                    if (c != j) row.push_back(a[r][c]);
                minor.push_back(std::move(row));
            }
            Int m = det(std::move(minor));
            adj[j][i] = ((i + j) % 2) ? -m : m;
        }
    }
    return adj;
}

IMat hermite_lower(const IMat& a) {
    Hnf h = hnf(a, a.size());
    expect(h.pivots.size() == a.size(), errc::internal, "hermite: singular input");
    return h.H;
}

Int floor_div(const Int& num, const Int& den) {
    expect(den != 0, errc::internal, "floor_div by zero");
    Int q = num / den, r = num % den;
    if (r != 0 && ((num < 0) != (den < 0))) q -= 1;
    return q;
}

Int ceil_div(const Int& num, const Int& den) {
    return -floor_div(-num, den);
}

}  // namespace mzl
