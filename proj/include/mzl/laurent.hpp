#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "mzl/bigint.hpp"

namespace mzl {

/// Laurent polynomial in one symbol L with Int coefficients.
/// Zero coefficients are never stored, so map equality is structural equality.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long long c) {  // NOLINT: implicit by design, constants appear everywhere
        if (c != 0) coeffs_[0] = c;
    }
    explicit LaurentPoly(const Int& c) {
        if (c != 0) coeffs_[0] = c;
    }

    static LaurentPoly L(std::int64_t exp, Int coeff = 1);  // coeff * L^exp

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    /// c * L^k for some k; these are the units of the ring.
    bool is_monomial() const { return coeffs_.size() == 1; }

    const std::map<std::int64_t, Int>& coeffs() const { return coeffs_; }
    Int coeff(std::int64_t exp) const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly pow(std::uint64_t e) const;

    bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
    bool operator<(const LaurentPoly& o) const { return coeffs_ < o.coeffs_; }

    /// Exact evaluation at L = q (q > 0); negative exponents give honest rationals.
    Rat eval(const Int& q) const;

    std::string str() const;

private:
    void set(std::int64_t exp, Int c);
    std::map<std::int64_t, Int> coeffs_;
};

}  // namespace mzl
