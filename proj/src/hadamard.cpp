#include <algorithm>

#include "mzl/cell.hpp"
#include "mzl/error.hpp"
#include "mzl/series.hpp"

namespace mzl {

namespace {

// coefficientwise product of the pure-fraction parts, computed exactly:
// pairs (k, j) of denominator multiplicities with equal T-multidegree form a
// lattice cell; its generating function, pushed to (L, T), is the Hadamard
// product of the two terms.
RationalSeries terms_hadamard(const RationalSeries::Term& tp, const RationalSeries::Term& tq,
                              const std::vector<std::string>& vars) {
    std::size_t r = vars.size();
    std::size_t s = tp.den.size(), u = tq.den.size();
    Cell c;
    c.dim = s + u;
    for (std::size_t t = 0; t < r; ++t) {
        LinearForm f;
        for (const auto& g : tp.den) f.coeffs.push_back(g.b[t]);
        for (const auto& g : tq.den) f.coeffs.push_back(-g.b[t]);
        f.constant = tp.b0[t] - tq.b0[t];
        c.eq.push_back(std::move(f));
    }
    std::vector<LinearForm> ell;
    for (std::size_t t = 0; t < r; ++t) {
        LinearForm f;
        for (const auto& g : tp.den) f.coeffs.push_back(g.b[t]);
        f.coeffs.resize(s + u, 0);
        f.constant = tp.b0[t];
        ell.push_back(std::move(f));
    }
    LinearForm eps;
    for (const auto& g : tp.den) eps.coeffs.push_back(-g.a);
    for (const auto& g : tq.den) eps.coeffs.push_back(-g.a);
    eps.constant = -(tp.a0 + tq.a0);

    auto spec = gf_specialize(cell_gf(c), ell, eps, vars);
    return spec.scale(tp.coeff * tq.coeff);
}

// expansion of the fraction part only, at the exponents in support
std::map<MultiIndex, GrothElement> fraction_coeffs(const RationalSeries& p,
                                                   const std::map<MultiIndex, GrothElement>& support) {
    std::map<MultiIndex, GrothElement> out;
    if (support.empty()) return out;
    RationalSeries frac(p.vars());
    for (const auto& t : p.terms()) frac.add_term(t.coeff, t.a0, t.b0, t.den);
    if (frac.is_zero()) return out;
    std::int64_t order = 0;
    for (const auto& [m, c] : support) order = std::max(order, total_degree(m));
    auto exp = rs_expand(frac, order);
    for (const auto& [m, c] : support) {
        auto it = exp.find(m);
        if (it != exp.end()) out.emplace(m, it->second);
    }
    return out;
}

}  // namespace

RationalSeries rs_hadamard(const RationalSeries& p, const RationalSeries& q) {
    expect(p.vars() == q.vars(), errc::input, "series variable lists differ");
    RationalSeries out(p.vars());
    for (const auto& tp : p.terms())
        for (const auto& tq : q.terms()) out += terms_hadamard(tp, tq, p.vars());
    // finite pieces: anything meeting a polynomial part is a pointwise product
    auto pc = fraction_coeffs(p, q.poly_part());
    for (const auto& [m, c] : q.poly_part()) {
        auto it = pc.find(m);
        if (it != pc.end()) out.add_poly(m, it->second * c);
    }
    auto qc = fraction_coeffs(q, p.poly_part());
    for (const auto& [m, c] : p.poly_part()) {
        auto it = qc.find(m);
        if (it != qc.end()) out.add_poly(m, c * it->second);
    }
    for (const auto& [m, c] : p.poly_part()) {
        auto it = q.poly_part().find(m);
        if (it != q.poly_part().end()) out.add_poly(m, c * it->second);
    }
    return out;
}

}  // namespace mzl
