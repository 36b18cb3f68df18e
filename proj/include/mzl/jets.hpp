#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mzl/bigint.hpp"
#include "mzl/groth.hpp"
#include "mzl/resolution.hpp"

// Brute-force arc counting over small finite fields. Everything here works
// with truncated arcs: a jet of level n in d variables is a tuple of d
// polynomials over F_q, each cut off after t^n. Counts are streamed, never
// materialized, and all routines are deterministic regardless of thread
// count.

namespace mzl {

// Arithmetic in F_q for q a prime power. Primes use plain modular
// arithmetic; prime powers use precomputed log/antilog tables over a
// generator, with addition done digit-wise in base p. Elements are encoded
// as integers in [0, q) whose base-p digits are the coordinates in the
// F_p-basis 1, x, x^2, ...
class Fq {
public:
    explicit Fq(std::int64_t q);

    std::int64_t q() const { return q_; }
    std::int64_t p() const { return p_; }
    int degree() const { return e_; }

    std::uint16_t add(std::uint16_t a, std::uint16_t b) const {
        return e_ == 1 ? static_cast<std::uint16_t>((a + b) % p_) : addt_[a * q_ + b];
    }
    std::uint16_t sub(std::uint16_t a, std::uint16_t b) const {
        return e_ == 1 ? static_cast<std::uint16_t>((a + p_ - b) % p_) : addt_[a * q_ + negt_[b]];
    }
    std::uint16_t neg(std::uint16_t a) const {
        return e_ == 1 ? static_cast<std::uint16_t>((p_ - a) % p_) : negt_[a];
    }
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
        if (e_ == 1) return static_cast<std::uint16_t>((std::int64_t(a) * b) % p_);
        if (a == 0 || b == 0) return 0;
        return expt_[logt_[a] + logt_[b]];
    }
    std::uint16_t inv(std::uint16_t a) const;
    std::uint16_t pow(std::uint16_t a, std::int64_t e) const;
    // Embeds an integer constant through the prime field.
    std::uint16_t from_int(std::int64_t c) const {
        std::int64_t r = c % p_;
        return static_cast<std::uint16_t>(r < 0 ? r + p_ : r);
    }

private:
    std::int64_t q_ = 0, p_ = 0;
    int e_ = 1;
    std::vector<std::uint16_t> addt_, negt_, expt_;
    std::vector<std::int32_t> logt_;
};

// A polynomial in d variables with integer coefficients, kept as an
// explicit monomial list. Exponents are nonnegative and coefficients
// nonzero; poly_validate enforces both.
struct PolySpec {
    struct Mono {
        std::vector<std::int64_t> exps;
        std::int64_t coeff = 1;
    };
    std::int64_t d = 1;
    std::vector<Mono> monomials;
};

void poly_validate(const PolySpec& f);

// Arc-side conditions. All polynomials live in a shared context list and
// are referenced by index; every context entry must have the condition's
// arity. Orders are taken in F_q[t]/t^{n+1} where n is the report level: a
// truncation that is identically zero is assigned order n+1.
enum class ord_rel { eq, ge, gt };

// Linear comparison  sum_j c_j * ord(G_j)  rel  bound, where each G_j is a
// set of context polynomials and ord(G_j) is the minimum order over the
// set.
struct OrdLin {
    std::vector<std::pair<std::vector<std::size_t>, std::int64_t>> terms;
    ord_rel rel = ord_rel::ge;
    std::int64_t bound = 0;
};

// ord(poly) == r (mod mod).
struct OrdCong {
    std::size_t poly = 0;
    std::int64_t r = 0;
    std::int64_t mod = 1;
};

struct ArcCondition {
    std::int64_t d = 1;
    // f(arc) == t^order modulo t^{order+1}, leading coefficient exactly 1.
    struct Contact {
        std::size_t poly = 0;
        std::int64_t order = 1;
    };
    std::optional<Contact> contact;
    std::vector<OrdLin> ord;
    std::vector<OrdCong> cong;
    // Coordinates of the base point forced to zero: arc(0)_i = 0.
    std::vector<std::size_t> base_zero;
    // Arcs are always taken in affine space; descriptions of arcs on a
    // singular ambient variety are rejected as unsupported.
    bool smooth_ambient = true;
};

void condition_validate(const std::vector<PolySpec>& ctx, const ArcCondition& cond);

struct JetCountReport {
    std::int64_t q = 0;
    std::int64_t n = 0;
    Int count;
    Rat measure;  // count * q^{-(n+1)d}
};

// Node budget for the enumeration, overridable with MZL_BUDGET.
std::int64_t default_budget();

// Counts level-n jets satisfying cond. budget < 0 means default_budget().
JetCountReport count_jets(const std::vector<PolySpec>& ctx, const ArcCondition& cond,
                          std::int64_t n, std::int64_t q, std::int64_t budget = -1);

// Plain odometer over all q^{(n+1)d} jets, checking the condition on each.
// Slow; kept as the reference the pruned engine is tested against.
Int count_jets_reference(const std::vector<PolySpec>& ctx, const ArcCondition& cond,
                         std::int64_t n, std::int64_t q, std::int64_t budget = -1);

struct IntegralReport {
    Rat value;                                        // sum over fibers up to the cap
    Rat tail;                                         // bound on everything beyond the cap
    std::int64_t cap = 0;
    std::vector<std::pair<std::int64_t, Rat>> fibers; // (order, fiber measure)
};

// Sum of q^{-ord} over the arcs satisfying cond, where ord is the order of
// context polynomial weight along the arc: sum_{n <= cap} mu(ord = n) q^{-n}
// plus a geometric bound on the rest. Each fiber's count is probed one
// level up before its measure is trusted.
IntegralReport jet_integral(const std::vector<PolySpec>& ctx, const ArcCondition& cond,
                            std::size_t weight, std::int64_t q, std::int64_t cap,
                            std::int64_t budget = -1);

struct StabilityReport {
    std::vector<std::pair<std::int64_t, Int>> counts;  // (level, count)
    bool stable = true;
    std::int64_t first_failure = -1;  // level m where count(m+1) != q^d count(m)
};

// Counts the condition at levels m0..m1 and checks consecutive ratios.
StabilityReport stability_probe(const std::vector<PolySpec>& ctx, const ArcCondition& cond,
                                std::int64_t q, std::int64_t m0, std::int64_t m1);

struct CompareRow {
    std::int64_t n = 0;
    Rat from_series;  // specialized coefficient times q^{nd}
    Int from_arcs;
    bool match = false;
};

struct CompareReport {
    std::vector<CompareRow> rows;
    bool all_match = true;
};

// Checks zeta_from_resolution(r) against direct arc counts: for each
// 1 <= n <= n_max the T^n coefficient, specialized at q and scaled by
// q^{nd}, must equal the number of level-n jets with contact order n.
CompareReport compare_zeta(const ResolutionData& r, const PolySpec& f, std::int64_t n_max,
                           std::int64_t q, const Specialization& spec,
                           std::int64_t budget = -1);

}  // namespace mzl
