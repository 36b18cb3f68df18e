#include "mzl/resolution.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "mzl/error.hpp"

namespace mzl {

namespace {

void check_stratum_shape(const Stratum& st, const std::set<std::string>& ids) {
    expect(!st.I.empty(), errc::input, "stratum with no divisors");
    std::set<std::string> seen;
    for (const auto& id : st.I) {
        expect(ids.count(id) != 0, errc::input,
               "stratum references unknown divisor " + id);
        expect(seen.insert(id).second, errc::input,
               "stratum lists divisor " + id + " twice");
    }
    expect(st.m >= 1, errc::input, "cover order must be >= 1");
    for (const auto& sym : st.cover_class.symbols()) {
        if (sym.is_unit_carrier()) continue;
        expect(sym.mu == st.m, errc::input,
               "cover symbol order disagrees with the stratum");
    }
}

void check_cover_order(const Stratum& st, std::int64_t g) {
    if (g == 0)
        expect(st.m == 1, errc::input,
               "cover order must be 1 on strata where the function is a unit");
    else
        expect(st.m == g, errc::input,
               "cover order disagrees with the gcd of the contact orders");
}

GrothElement stratum_coeff(const Stratum& st) {
    GrothElement c = st.cover_class;
    const GrothElement lm1 = GrothElement::L_power(1) - GrothElement(1);
    for (std::size_t i = 1; i < st.I.size(); ++i) c *= lm1;
    return c;
}

/// Place a form written over a sub-block of coordinates into ambient dim,
/// coordinate i of the source landing at pos[i].
LinearForm embed_form(const LinearForm& f, const std::vector<std::size_t>& pos,
                      std::size_t dim) {
    expect(f.coeffs.size() <= pos.size(), errc::input, "form arity mismatch");
    LinearForm out;
    out.coeffs.assign(dim, 0);
    out.constant = f.constant;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) out.coeffs[pos[i]] = f.coeffs[i];
    return out;
}

Int eval_block(const LinearForm& f, const std::vector<Int>& vals, bool with_constant) {
    Int acc = with_constant ? Int(f.constant) : Int(0);
    for (std::size_t i = 0; i < f.coeffs.size() && i < vals.size(); ++i)
        acc += Int(f.coeffs[i]) * vals[i];
    return acc;
}

struct StratumCell {
    Cell cell;
    std::size_t nk = 0;       // leading k-block size
    std::size_t beta0 = 0;    // offset of the beta block
    std::size_t alpha0 = 0;   // offset of the alpha block
    std::size_t npos = 0;     // position of the contact order n
    std::vector<std::int64_t> nu;  // per k coordinate
};

/// Coordinates (k_1..k_s, beta_1..beta_m, alpha_1..alpha_r, n) with
/// k_j >= 1, n >= 1, n and beta pinned to the k-block, theta on (beta, alpha).
StratumCell build_stratum_cell(const MultiResolutionData& r,
                               const std::map<std::string, const MultiDivisor*>& byid,
                               const Stratum& st, const Cell& theta,
                               std::size_t rvars) {
    const std::size_t s = st.I.size();
    const std::size_t m = r.nfuncs;
    StratumCell out;
    out.nk = s;
    out.beta0 = s;
    out.alpha0 = s + m;
    out.npos = s + m + rvars;
    Cell& c = out.cell;
    c.dim = s + m + rvars + 1;

    std::vector<const MultiDivisor*> divs;
    for (const auto& id : st.I) divs.push_back(byid.at(id));
    for (const auto* d : divs) out.nu.push_back(d->nu);

    LinearForm order;
    order.coeffs.assign(c.dim, 0);
    for (std::size_t j = 0; j < s; ++j) order.coeffs[j] = divs[j]->Nf;
    order.coeffs[out.npos] = -1;
    c.eq.push_back(order);
    for (std::size_t i = 0; i < m; ++i) {
        LinearForm bi;
        bi.coeffs.assign(c.dim, 0);
        for (std::size_t j = 0; j < s; ++j) bi.coeffs[j] = divs[j]->Nfi[i];
        bi.coeffs[out.beta0 + i] = -1;
        c.eq.push_back(bi);
    }

    for (std::size_t j = 0; j < s; ++j) {
        LinearForm kj;
        kj.coeffs.assign(c.dim, 0);
        kj.coeffs[j] = 1;
        kj.constant = -1;
        c.ge.push_back(kj);
    }
    LinearForm npos;
    npos.coeffs.assign(c.dim, 0);
    npos.coeffs[out.npos] = 1;
    npos.constant = -1;
    c.ge.push_back(npos);

    std::vector<std::size_t> tpos(m + rvars);
    for (std::size_t i = 0; i < m + rvars; ++i) tpos[i] = s + i;
    for (const auto& f : theta.eq) c.eq.push_back(embed_form(f, tpos, c.dim));
    for (const auto& f : theta.ge) c.ge.push_back(embed_form(f, tpos, c.dim));
    for (const auto& g : theta.cong)
        c.cong.push_back({embed_form(g.form, tpos, c.dim), g.r, g.d});
    return out;
}

}  // namespace

void resolution_validate(const ResolutionData& r) {
    expect(r.ambient_dim >= 1, errc::input, "ambient dimension must be >= 1");
    std::set<std::string> ids;
    for (const auto& d : r.divisors) {
        expect(!d.id.empty(), errc::input, "divisor with empty id");
        expect(ids.insert(d.id).second, errc::input, "duplicate divisor id " + d.id);
        expect(d.N >= 1, errc::input, "contact order must be >= 1 on " + d.id);
        expect(d.nu >= 1, errc::input, "jacobian weight must be >= 1 on " + d.id);
    }
    std::map<std::string, std::int64_t> order;
    for (const auto& d : r.divisors) order[d.id] = d.N;
    for (const auto& st : r.strata) {
        check_stratum_shape(st, ids);
        std::int64_t g = 0;
        for (const auto& id : st.I) g = std::gcd(g, order[id]);
        check_cover_order(st, g);
    }
}

void resolution_validate(const MultiResolutionData& r) {
    expect(r.ambient_dim >= 1, errc::input, "ambient dimension must be >= 1");
    std::set<std::string> ids;
    for (const auto& d : r.divisors) {
        expect(!d.id.empty(), errc::input, "divisor with empty id");
        expect(ids.insert(d.id).second, errc::input, "duplicate divisor id " + d.id);
        expect(d.Nf >= 0, errc::input, "contact order must be >= 0 on " + d.id);
        expect(d.Nfi.size() == r.nfuncs, errc::input,
               "order vector arity mismatch on " + d.id);
        for (auto n : d.Nfi)
            expect(n >= 0, errc::input, "contact order must be >= 0 on " + d.id);
        expect(d.nu >= 1, errc::input, "jacobian weight must be >= 1 on " + d.id);
    }
    std::map<std::string, std::int64_t> order;
    for (const auto& d : r.divisors) order[d.id] = d.Nf;
    for (const auto& st : r.strata) {
        check_stratum_shape(st, ids);
        std::int64_t g = 0;
        for (const auto& id : st.I) g = std::gcd(g, order[id]);
        check_cover_order(st, g);
    }
}

RationalSeries zeta_from_resolution(const ResolutionData& r, bool local,
                                    const std::string& var) {
    resolution_validate(r);
    std::map<std::string, const Divisor*> byid;
    for (const auto& d : r.divisors) byid[d.id] = &d;

    RationalSeries z({var});
    for (const auto& st : r.strata) {
        if (local && !st.over_point) continue;
        std::vector<GeomFactor> den;
        std::int64_t a0 = 0;
        std::int64_t b0 = 0;
        for (const auto& id : st.I) {
            const Divisor* d = byid.at(id);
            den.push_back({-d->nu, {d->N}});
            a0 -= d->nu;
            b0 += d->N;
        }
        z.add_term(stratum_coeff(st), a0, {b0}, std::move(den));
    }
    return z;
}

GrothElement nearby_cycles(const RationalSeries& z) { return -rs_limit(z); }

RationalSeries zeta_multi(const MultiResolutionData& r, const Cell& theta,
                          std::size_t rvars) {
    resolution_validate(r);
    expect(theta.dim == r.nfuncs + rvars, errc::input, "theta arity mismatch");
    if (theta.dim > 0) cell_validate(theta);
    std::map<std::string, const MultiDivisor*> byid;
    for (const auto& d : r.divisors) byid[d.id] = &d;

    std::vector<std::string> tvars;
    for (std::size_t i = 0; i <= rvars; ++i) tvars.push_back("T" + std::to_string(i));
    std::vector<std::string> full = tvars;
    full.push_back("S");

    RationalSeries out(tvars);
    for (const auto& st : r.strata) {
        StratumCell sc = build_stratum_cell(r, byid, st, theta, rvars);
        RationalSeries g = cell_gf(sc.cell);

        std::vector<LinearForm> ell(rvars + 2);
        for (auto& f : ell) f.coeffs.assign(sc.cell.dim, 0);
        ell[0].coeffs[sc.npos] = 1;
        for (std::size_t i = 0; i < rvars; ++i) ell[1 + i].coeffs[sc.alpha0 + i] = 1;
        for (std::size_t j = 0; j < sc.nk; ++j) ell[rvars + 1].coeffs[j] = sc.nu[j];
        LinearForm eps;
        eps.coeffs.assign(sc.cell.dim, 0);

        RationalSeries spec = gf_specialize(g, ell, eps, full);
        RationalSeries sub = rs_substitute(spec, {{"S", MonoImage{-1, {}}}});
        out += sub.scale(stratum_coeff(st));
    }
    return out;
}

namespace {

void check_weights(const RationalSeries& g, const StratumCell& sc,
                   std::size_t rvars, const WeightPair& w) {
    auto project = [&](const MultiIndex& v) {
        std::vector<Int> na(1 + rvars, Int(0));
        if (sc.npos < v.size()) na[0] = v[sc.npos];
        for (std::size_t i = 0; i < rvars; ++i)
            if (sc.alpha0 + i < v.size()) na[1 + i] = v[sc.alpha0 + i];
        return na;
    };
    auto nonzero = [](const std::vector<Int>& na) {
        for (const auto& x : na)
            if (x != 0) return true;
        return false;
    };
    auto check_point = [&](const MultiIndex& v) {
        auto na = project(v);
        if (!nonzero(na)) return;
        expect(eval_block(w.ell, na, true) > 0, errc::input,
               "degree weight must be positive on the region");
        expect(eval_block(w.eps, na, true) >= 0, errc::input,
               "measure weight must be nonnegative on the region");
    };
    auto check_dir = [&](const MultiIndex& v) {
        auto na = project(v);
        if (!nonzero(na)) return;
        expect(eval_block(w.ell, na, false) > 0, errc::input,
               "degree weight must be positive on the region");
        expect(eval_block(w.eps, na, false) >= 0, errc::input,
               "measure weight must be nonnegative on the region");
    };
    for (const auto& t : g.terms()) {
        check_point(t.b0);
        for (const auto& f : t.den) check_dir(f.b);
    }
    for (const auto& [mono, c] : g.poly_part()) check_point(mono);
}

}  // namespace

GrothElement prop45_limit(const MultiResolutionData& r, const Cell& theta,
                          const Cell& delta, const WeightPair& w,
                          const std::vector<WeightPair>& alternates) {
    resolution_validate(r);
    expect(delta.dim >= 1, errc::input, "region must include the contact order");
    const std::size_t rvars = delta.dim - 1;
    expect(theta.dim == r.nfuncs + rvars, errc::input, "theta arity mismatch");
    if (theta.dim > 0) cell_validate(theta);
    cell_validate(delta);
    std::map<std::string, const MultiDivisor*> byid;
    for (const auto& d : r.divisors) byid[d.id] = &d;

    auto compute = [&](const WeightPair& wp) {
        expect(wp.ell.coeffs.size() <= delta.dim, errc::input, "weight arity mismatch");
        expect(wp.eps.coeffs.size() <= delta.dim, errc::input, "weight arity mismatch");
        RationalSeries total({"T"});
        for (const auto& st : r.strata) {
            StratumCell sc = build_stratum_cell(r, byid, st, theta, rvars);
            // (n, alpha) coordinates inside the stratum cell
            std::vector<std::size_t> napos(1 + rvars);
            napos[0] = sc.npos;
            for (std::size_t i = 0; i < rvars; ++i) napos[1 + i] = sc.alpha0 + i;
            Cell c = sc.cell;
            for (const auto& f : delta.eq) c.eq.push_back(embed_form(f, napos, c.dim));
            for (const auto& f : delta.ge) c.ge.push_back(embed_form(f, napos, c.dim));
            for (const auto& g : delta.cong)
                c.cong.push_back({embed_form(g.form, napos, c.dim), g.r, g.d});

            RationalSeries g = cell_gf(c);
            check_weights(g, sc, rvars, wp);

            LinearForm ell = embed_form(wp.ell, napos, c.dim);
            LinearForm eps = embed_form(wp.eps, napos, c.dim);
            for (std::size_t j = 0; j < sc.nk; ++j) eps.coeffs[j] += sc.nu[j];
            RationalSeries spec = gf_specialize(g, {ell}, eps, {"T"});
            total += spec.scale(stratum_coeff(st));
        }
        return rs_limit(total);
    };

    GrothElement base = compute(w);
    for (const auto& alt : alternates)
        expect(compute(alt) == base, errc::mismatch,
               "limit depends on the weight choice");
    return base;
}

}  // namespace mzl
