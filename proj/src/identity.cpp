#include "mzl/identity.hpp"

#include "mzl/error.hpp"

namespace mzl {

RationalSeries u_series(std::int64_t d1, std::int64_t d2, const std::string& var) {
    expect(d1 >= 1 && d2 >= 1, errc::input, "block dimensions must be positive");
    // Lattice wedge 1 <= m <= n, where m is the order of the second block
    // and level-n jets with block orders (m', n - m), m' >= m, carry weight
    // L^{-((n-m) d1 + m d2)} each.
    Cell wedge;
    wedge.dim = 2;
    wedge.ge.push_back({{0, 1}, -1});
    wedge.ge.push_back({{1, -1}, 0});
    LinearForm ell{{1, 0}, 0};
    LinearForm eps{{d1, d2 - d1}, 0};
    RationalSeries u =
        gf_specialize(cell_gf(wedge), {ell}, eps, {var}).scale(GrothElement::L_power(d2) - 1);
    // jets whose second block vanishes to the full window depth
    u.add_term(GrothElement::L_power(d1), -d2, {1}, {{-d2, {1}}});
    return u;
}

GrothElement u_part(std::int64_t d1, std::int64_t d2, const RationalSeries& z) {
    expect(z.arity() == 1, errc::input, "series must be one-variable");
    for (const auto& [idx, c] : rs_expand(z, 0))
        expect(c.is_zero(), errc::input, "series must have zero constant term");
    GrothElement zlim = rs_limit(z);
    RationalSeries u = u_series(d1, d2, z.vars()[0]);
    GrothElement got = rs_limit(rs_hadamard(u, z));
    GrothElement want = zlim * GrothElement::L_power(d1);
    expect(got == want, errc::mismatch, "tangential part disagrees with its closed form");
    return got * GrothElement(-1);
}

GrothElement w_cancellation(const WData& w, std::int64_t d) {
    expect(d >= 0, errc::input, "dimension must be nonnegative");
    expect(w.region.dim == 2, errc::input,
           "region must be over the contact order and one auxiliary weight");
    Cell delta = w.region;
    delta.ge.push_back({{0, 1}, -1});
    delta.ge.push_back({{1, -1}, 0});
    WeightPair flat{LinearForm{{1, 0}, 0}, LinearForm{{0, 0}, 0}};
    WeightPair shifted{LinearForm{{1, 0}, 0}, LinearForm{{0, 1}, 0}};
    GrothElement a = prop45_limit(w.res, w.theta, delta, flat);
    GrothElement b = prop45_limit(w.res, w.theta, delta, shifted);
    GrothElement gap = (a - b) * GrothElement::L_power(d);
    expect(gap.is_zero(), errc::mismatch, "W part fails to cancel");
    return gap;
}

namespace {

void validate_instance(const IdentityInstance& inst) {
    expect(inst.d1 >= 1 && inst.d2 >= 1 && inst.d3 >= 0, errc::input,
           "block dimensions out of range");
    resolution_validate(inst.res_f);
    expect(inst.res_f.ambient_dim == inst.d1 + inst.d2 + inst.d3, errc::input,
           "resolution dimension disagrees with the blocks");
    if (inst.d3 >= 1) {
        resolution_validate(inst.res_ftilde);
        expect(inst.res_ftilde.ambient_dim == inst.d3, errc::input,
               "reduced resolution dimension disagrees with the last block");
    } else {
        expect(inst.res_ftilde.divisors.empty() && inst.res_ftilde.strata.empty(), errc::input,
               "reduced resolution must be empty when the last block is trivial");
    }
    if (!inst.poly) return;
    poly_validate(*inst.poly);
    expect(inst.poly->d == inst.d1 + inst.d2 + inst.d3, errc::input,
           "polynomial arity disagrees with the blocks");
    for (const auto& m : inst.poly->monomials) {
        std::int64_t dx = 0, dy = 0;
        for (std::int64_t i = 0; i < inst.d1; ++i) dx += m.exps[static_cast<std::size_t>(i)];
        for (std::int64_t i = inst.d1; i < inst.d1 + inst.d2; ++i)
            dy += m.exps[static_cast<std::size_t>(i)];
        expect(dx == dy, errc::input, "monomial fails block homogeneity");
    }
}

}  // namespace

IdentityReport identity_check(const IdentityInstance& inst,
                              const std::vector<Specialization>& specs) {
    validate_instance(inst);
    GrothElement sf = nearby_cycles(zeta_from_resolution(inst.res_f, false));
    IdentityReport rep;
    rep.lhs = pushforward_forget(pullback_relabel(sf, inst.table));
    if (inst.d3 >= 1) {
        GrothElement st = nearby_cycles(zeta_from_resolution(inst.res_ftilde, true));
        // Both sides are compared as absolute classes, so strip any stratum
        // labels the downstairs resolution carries.
        rep.rhs = pushforward_forget(st * GrothElement::L_power(inst.d1));
    }
    rep.symbolic_match = (rep.lhs == rep.rhs);
    rep.ok = rep.symbolic_match;
    for (const auto& sp : specs) {
        bool m;
        if (sp.q)
            m = specialize_value(rep.lhs, sp) == specialize_value(rep.rhs, sp);
        else
            m = specialize_poly(rep.lhs, sp) == specialize_poly(rep.rhs, sp);
        rep.spec_match.push_back(m);
        rep.ok = rep.ok && m;
    }
    return rep;
}

}  // namespace mzl
