#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mzl/laurent.hpp"

namespace mzl {

/// An opaque geometric class with a finite cyclic symmetry order and an
/// optional base stratum label. Symbols compare by all three fields.
///
/// The reserved name "1" is the unit carrier: with no base label it is the
/// multiplicative unit and is canonicalized away; with a base label it tags an
/// otherwise symbol-free class as living over that stratum.
struct ClassSymbol {
    std::string name;
    std::int64_t mu = 1;   // order of the cyclic action, >= 1
    std::string base;      // empty = absolute class

    bool is_unit_carrier() const { return name == "1"; }
    /// Canonical roots-of-unity class: name "mu<k>" with mu == k.
    bool is_canonical_mu() const;

    auto operator<=>(const ClassSymbol&) const = default;
};

using Monomial = std::vector<ClassSymbol>;  // kept sorted

/// Element of the free commutative algebra on class symbols over Z[L, L^-1].
class GrothElement {
public:
    GrothElement() = default;
    GrothElement(long long c) : GrothElement(LaurentPoly(c)) {}  // NOLINT
    GrothElement(LaurentPoly scalar);                            // NOLINT
    static GrothElement symbol(ClassSymbol s, LaurentPoly coeff = LaurentPoly(1));
    static GrothElement L_power(std::int64_t e) { return GrothElement(LaurentPoly::L(e)); }

    bool is_zero() const { return terms_.empty(); }
    /// Nonzero only when the element is a pure Laurent polynomial in L.
    std::optional<LaurentPoly> as_scalar() const;

    const std::map<Monomial, LaurentPoly>& terms() const { return terms_; }

    GrothElement operator-() const;
    GrothElement operator+(const GrothElement& o) const;
    GrothElement operator-(const GrothElement& o) const;
    GrothElement operator*(const GrothElement& o) const;
    GrothElement& operator+=(const GrothElement& o);
    GrothElement& operator-=(const GrothElement& o);
    GrothElement& operator*=(const GrothElement& o);
    GrothElement pow(std::uint64_t e) const;

    bool operator==(const GrothElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const GrothElement& o) const { return !(*this == o); }
    bool operator<(const GrothElement& o) const { return terms_ < o.terms_; }

    /// All distinct symbols occurring in the element (carriers included).
    std::vector<ClassSymbol> symbols() const;

    void add_term(Monomial m, LaurentPoly c);  // canonicalizes

    std::string str() const;

private:
    std::map<Monomial, LaurentPoly> terms_;
};

/// Assignment of values to symbols, optionally followed by L -> q evaluation.
/// Lookup tries the exact symbol first, then the label-stripped one, then for
/// canonical mu_k symbols with q set and q = 1 (mod k) the count k.
struct Specialization {
    std::optional<Int> q;
    std::map<ClassSymbol, LaurentPoly> values;

    void set(ClassSymbol s, LaurentPoly v) { values[std::move(s)] = std::move(v); }
};

/// Substitute symbol values; stays in Z[L, L^-1]. Every symbol must resolve.
LaurentPoly specialize_poly(const GrothElement& e, const Specialization& s);

/// Substitute symbol values and evaluate L at q exactly. Requires s.q.
Rat specialize_value(const GrothElement& e, const Specialization& s);

/// Attach a base label to every term of an absolute element.
GrothElement with_base(const GrothElement& e, const std::string& label);

/// Relabeling map for one stratum: images with multiplying factors.
/// An empty image list sends the stratum's classes to zero.
using RelabelTable = std::map<std::string, std::vector<std::pair<std::string, GrothElement>>>;

/// Fiber the labeled terms of e along the table; unlabeled terms pass through.
/// Mixed labels within one monomial are rejected.
GrothElement pullback_relabel(const GrothElement& e, const RelabelTable& table);

/// Forget base labels (sum the classes over the strata they live on).
GrothElement pushforward_forget(const GrothElement& e);

}  // namespace mzl
