#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mzl/groth.hpp"

namespace mzl {

using MultiIndex = std::vector<std::int64_t>;

std::int64_t total_degree(const MultiIndex& m);

/// One denominator generator L^a T^b, standing for 1/(1 - L^a T^b).
/// b has one entry per series variable, all >= 0, not all zero.
struct GeomFactor {
    std::int64_t a = 0;
    MultiIndex b;

    auto operator<=>(const GeomFactor&) const = default;
};

/// Finite sum of terms coeff * L^a0 * T^b0 / prod(1 - L^a T^b) plus a
/// polynomial part, closed under ring operations. Terms with equal shape are
/// merged, so zero really is the empty series.
class RationalSeries {
public:
    struct Term {
        GrothElement coeff;
        std::int64_t a0 = 0;
        MultiIndex b0;                // entries >= 0
        std::vector<GeomFactor> den;  // sorted, multiset semantics
    };

    explicit RationalSeries(std::vector<std::string> vars);

    static RationalSeries constant(std::vector<std::string> vars, GrothElement c);
    /// L^a T^b / (1 - L^a T^b)
    static RationalSeries geometric(std::vector<std::string> vars, GeomFactor f);
    /// T/(1-T), the Hadamard unity
    static RationalSeries unity(const std::string& var);

    std::size_t arity() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }

    void add_term(GrothElement coeff, std::int64_t a0, MultiIndex b0,
                  std::vector<GeomFactor> den);
    void add_poly(MultiIndex m, GrothElement c);

    std::vector<Term> terms() const;
    const std::map<MultiIndex, GrothElement>& poly_part() const { return poly_; }
    bool is_zero() const { return terms_.empty() && poly_.empty(); }

    RationalSeries operator+(const RationalSeries& o) const;
    RationalSeries operator-(const RationalSeries& o) const;
    RationalSeries operator*(const RationalSeries& o) const;
    RationalSeries operator-() const;
    RationalSeries scale(const GrothElement& c) const;
    RationalSeries& operator+=(const RationalSeries& o);

    std::string str() const;

private:
    struct TermKey {
        std::int64_t a0 = 0;
        MultiIndex b0;
        std::vector<GeomFactor> den;

        auto operator<=>(const TermKey&) const = default;
    };

    std::vector<std::string> vars_;
    std::map<TermKey, GrothElement> terms_;
    std::map<MultiIndex, GrothElement> poly_;

    void require_same_vars(const RationalSeries& o) const;
};

/// Exact coefficients of every monomial of total degree <= order.
std::map<MultiIndex, GrothElement> rs_expand(const RationalSeries& p, std::int64_t order);

/// Value at T -> infinity of the underlying rational function, computed from
/// leading T-coefficients of the normalized fraction. Errors with
/// errc::divergent when the function grows.
GrothElement rs_limit(const RationalSeries& p);

/// Image of one variable under substitution: L^c times the monomial T^d in
/// the surviving variables.
struct MonoImage {
    std::int64_t c = 0;
    MultiIndex d;
};

/// Substitute monomials for a subset of the variables. Every denominator
/// factor must keep a nonzero T-degree.
RationalSeries rs_substitute(const RationalSeries& p,
                             const std::map<std::string, MonoImage>& subst);

/// Exact equality of the underlying formal series (cross-multiplication).
bool rs_eq(const RationalSeries& p, const RationalSeries& q);

/// Coefficientwise product, computed through the lattice-cell backend.
RationalSeries rs_hadamard(const RationalSeries& p, const RationalSeries& q);

}  // namespace mzl
