#include "support.hpp"

#include <random>

#include "mzl/error.hpp"
#include "mzl/identity.hpp"

using namespace mzl;

namespace {

GrothElement L(std::int64_t e) { return GrothElement::L_power(e); }

GrothElement mu_class(std::int64_t k) {
    return GrothElement::symbol({"mu" + std::to_string(k), k, ""});
}

PolySpec proj(std::int64_t d, std::size_t i) {
    PolySpec f;
    f.d = d;
    std::vector<std::int64_t> e(static_cast<std::size_t>(d), 0);
    e[i] = 1;
    f.monomials = {{e, 1}};
    return f;
}

// ord of the second block positive, block orders summing past n
ArcCondition tangent_cond(std::int64_t d1, std::int64_t d2, std::int64_t n) {
    ArcCondition c;
    c.d = d1 + d2;
    std::vector<std::size_t> bx, by;
    for (std::int64_t i = 0; i < d1; ++i) bx.push_back(static_cast<std::size_t>(i));
    for (std::int64_t i = d1; i < d1 + d2; ++i) by.push_back(static_cast<std::size_t>(i));
    OrdLin oy;
    oy.terms = {{by, 1}};
    oy.rel = ord_rel::gt;
    oy.bound = 0;
    OrdLin osum;
    osum.terms = {{bx, 1}, {by, 1}};
    osum.rel = ord_rel::gt;
    osum.bound = n;
    c.ord = {oy, osum};
    return c;
}

IdentityInstance xy_instance() {
    IdentityInstance inst;
    inst.d1 = 1;
    inst.d2 = 1;
    inst.d3 = 0;
    inst.res_f.ambient_dim = 2;
    inst.res_f.divisors = {{"E1", 1, 1}, {"E2", 1, 1}};
    inst.res_f.strata = {{{"E1"}, with_base(L(1) - 1, "sx"), 1, "sx", false},
                         {{"E2"}, with_base(L(1) - 1, "sy"), 1, "sy", false},
                         {{"E1", "E2"}, with_base(GrothElement(1), "o"), 1, "o", true}};
    inst.table = {{"sx", {{"sx", GrothElement(1)}}}, {"sy", {}}, {"o", {{"o", GrothElement(1)}}}};
    PolySpec f;
    f.d = 2;
    f.monomials = {{{1, 1}, 1}};
    inst.poly = f;
    return inst;
}

IdentityInstance quadric_instance() {
    IdentityInstance inst;
    inst.d1 = 1;
    inst.d2 = 1;
    inst.d3 = 1;
    inst.res_f.ambient_dim = 3;
    inst.res_f.divisors = {{"E", 2, 3}, {"Q", 1, 1}};
    GrothElement exc = L(1) * mu_class(2) + L(2) - L(1);
    inst.res_f.strata = {{{"E"}, with_base(exc, "o"), 2, "o", true},
                         {{"E", "Q"}, with_base(L(1) + 1, "o"), 1, "o", true},
                         {{"Q"}, with_base(L(1) - 1, "qa"), 1, "qa", false},
                         {{"Q"}, with_base(L(2) - L(1), "qb"), 1, "qb", false}};
    inst.table = {{"o", {{"o", GrothElement(1)}}}, {"qa", {{"qa", GrothElement(1)}}}, {"qb", {}}};
    inst.res_ftilde.ambient_dim = 1;
    inst.res_ftilde.divisors = {{"Z", 2, 1}};
    inst.res_ftilde.strata = {{{"Z"}, mu_class(2), 2, "o", true}};
    PolySpec f;
    f.d = 3;
    f.monomials = {{{1, 1, 0}, 1}, {{0, 0, 2}, 1}};
    inst.poly = f;
    return inst;
}

}  // namespace

TEST_CASE("tangential series coefficients") {
    RationalSeries u = u_series(1, 1);
    auto c = rs_expand(u, 2);
    CHECK(c.at({1}) == GrothElement(2) - L(-1));
    CHECK(c.at({2}) == L(-1) * 3 - L(-2) * 2);
}

TEST_CASE("tangential series limit is the first block weight") {
    CHECK(rs_limit(u_series(1, 1)) == -L(1));
    CHECK(rs_limit(u_series(1, 2)) == -L(1));
    CHECK(rs_limit(u_series(2, 1)) == -L(2));
    CHECK(rs_limit(u_series(3, 2)) == -L(3));
}

TEST_CASE("tangential series coefficients count jets") {
    Specialization sp;
    sp.q = Int(3);
    for (auto [d1, d2] : {std::pair<std::int64_t, std::int64_t>{1, 1}, {1, 2}}) {
        std::vector<PolySpec> ctx;
        for (std::int64_t i = 0; i < d1 + d2; ++i)
            ctx.push_back(proj(d1 + d2, static_cast<std::size_t>(i)));
        RationalSeries u = u_series(d1, d2);
        auto coeffs = rs_expand(u, 3);
        for (std::int64_t n = 1; n <= 3; ++n) {
            GrothElement scaled = coeffs.at({n}) * L(n * (d1 + d2));
            Rat want = specialize_value(scaled, sp);
            Int got = count_jets(ctx, tangent_cond(d1, d2, n), n, 3).count;
            CAPTURE(d1);
            CAPTURE(d2);
            CAPTURE(n);
            CHECK(want == Rat(got));
        }
    }
    CHECK(count_jets({proj(2, 0), proj(2, 1)}, tangent_cond(1, 1, 2), 2, 3).count == 63);
}

TEST_CASE("tangential part of a squared coordinate") {
    ResolutionData r;
    r.ambient_dim = 1;
    r.divisors = {{"Z", 2, 1}};
    r.strata = {{{"Z"}, mu_class(2), 2, "o", true}};
    RationalSeries z = zeta_from_resolution(r, true);
    GrothElement u = u_part(1, 1, z);
    CHECK(u == L(1) * mu_class(2));
}

TEST_CASE("tangential part law on random convergent series") {
    std::mt19937 rng(424242);
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    for (int trial = 0; trial < 50; ++trial) {
        RationalSeries z({"T"});
        int nterms = pick(1, 2);
        for (int t = 0; t < nterms; ++t) {
            GrothElement coeff = L(pick(-2, 2)) * pick(1, 3);
            if (pick(0, 2) == 0) coeff = coeff * mu_class(2);
            std::vector<GeomFactor> den;
            std::int64_t bsum = 0;
            int nf = pick(1, 2);
            for (int f = 0; f < nf; ++f) {
                std::int64_t b = pick(1, 3);
                den.push_back({pick(-3, -1), {b}});
                bsum += b;
            }
            std::int64_t b0 = pick(0, 1) ? bsum : std::max<std::int64_t>(1, bsum - 1);
            z.add_term(coeff, pick(-3, 0), {b0}, den);
        }
        std::int64_t d1 = pick(1, 3), d2 = pick(1, 3);
        CAPTURE(trial);
        GrothElement u = u_part(d1, d2, z);
        CHECK(u == rs_limit(z) * L(d1) * GrothElement(-1));
    }
}

TEST_CASE("tangential part rejects bad input") {
    RationalSeries with_const({"T"});
    with_const.add_term(GrothElement(1), 0, {0}, {{-1, {1}}});
    CHECK_THROWS_AS(u_part(1, 1, with_const), error);

    RationalSeries two_vars({"T0", "T1"});
    CHECK_THROWS_AS(u_part(1, 1, two_vars), error);
}

TEST_CASE("shifted weighting cancels on a single divisor") {
    WData w;
    w.res.ambient_dim = 1;
    w.res.nfuncs = 0;
    w.res.divisors = {{"E", 1, {}, 1}};
    w.res.strata = {{{"E"}, GrothElement(1), 1, "o", true}};
    w.theta.dim = 1;
    w.region.dim = 2;
    CHECK(w_cancellation(w, 1).is_zero());
}

TEST_CASE("shifted weighting cancels with no strata") {
    WData w;
    w.res.ambient_dim = 2;
    w.res.nfuncs = 0;
    w.res.divisors = {{"E", 1, {}, 1}};
    w.theta.dim = 1;
    w.region.dim = 2;
    CHECK(w_cancellation(w, 2).is_zero());
}

TEST_CASE("shifted weighting cancels on random data") {
    std::mt19937 rng(99);
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    for (int trial = 0; trial < 10; ++trial) {
        WData w;
        w.res.ambient_dim = pick(1, 2);
        w.res.nfuncs = 0;
        int nd = pick(1, 2);
        for (int i = 0; i < nd; ++i)
            w.res.divisors.push_back({"E" + std::to_string(i),
                                      static_cast<std::int64_t>(pick(1, 3)), {},
                                      static_cast<std::int64_t>(pick(1, 3))});
        for (int mask = 1; mask < (1 << nd); ++mask) {
            if (pick(0, 1) == 0) continue;
            Stratum st;
            std::int64_t g = 0;
            for (int i = 0; i < nd; ++i) {
                if (!(mask & (1 << i))) continue;
                st.I.push_back(w.res.divisors[static_cast<std::size_t>(i)].id);
                g = std::gcd(g, w.res.divisors[static_cast<std::size_t>(i)].Nf);
            }
            st.m = g == 0 ? 1 : g;
            GrothElement cls = L(pick(-1, 2)) * pick(1, 3);
            if (st.m > 1 && pick(0, 1))
                cls = cls * GrothElement::symbol({"X" + std::to_string(mask), st.m, ""});
            st.cover_class = cls;
            st.over_point = true;
            w.res.strata.push_back(st);
        }
        w.theta.dim = 1;
        w.region.dim = 2;
        switch (pick(0, 2)) {
            case 0:
                break;  // full wedge
            case 1:
                w.region.ge.push_back({{1, -2}, 0});  // n >= 2m
                break;
            default:
                w.region.ge.push_back({{-1, 3}, 0});  // n <= 3m
                break;
        }
        CAPTURE(trial);
        CHECK(w_cancellation(w, pick(0, 3)).is_zero());
    }
}

TEST_CASE("identity holds for a product of two lines") {
    IdentityInstance inst = xy_instance();
    Specialization sp;
    sp.q = Int(3);
    IdentityReport rep = identity_check(inst, {sp});
    CHECK(rep.lhs.is_zero());
    CHECK(rep.rhs.is_zero());
    CHECK(rep.symbolic_match);
    REQUIRE(rep.spec_match.size() == 1);
    CHECK(rep.spec_match[0]);
    CHECK(rep.ok);
}

TEST_CASE("identity holds for the quadric cone") {
    IdentityInstance inst = quadric_instance();
    Specialization sp;
    sp.q = Int(5);
    sp.set({"mu2", 2, ""}, LaurentPoly(2));
    IdentityReport rep = identity_check(inst, {sp});
    CHECK(rep.lhs == L(1) * mu_class(2));
    CHECK(rep.rhs == L(1) * mu_class(2));
    CHECK(rep.symbolic_match);
    CHECK(rep.ok);
    CHECK(specialize_value(rep.lhs, sp) == Rat(10));
}

TEST_CASE("corrupted relabeling is reported, not thrown") {
    IdentityInstance inst = quadric_instance();
    inst.table["qa"] = {};
    Specialization sp;
    sp.q = Int(5);
    sp.set({"mu2", 2, ""}, LaurentPoly(2));
    IdentityReport rep = identity_check(inst, {sp});
    CHECK_FALSE(rep.symbolic_match);
    REQUIRE(rep.spec_match.size() == 1);
    CHECK_FALSE(rep.spec_match[0]);
    CHECK_FALSE(rep.ok);
}

TEST_CASE("instance validation") {
    IdentityInstance inst = xy_instance();
    inst.poly->monomials[0].exps = {2, 1};  // breaks block homogeneity
    CHECK_THROWS_AS(identity_check(inst), error);

    inst = xy_instance();
    inst.res_ftilde.divisors = {{"Z", 1, 1}};  // nonempty with d3 = 0
    CHECK_THROWS_AS(identity_check(inst), error);

    inst = quadric_instance();
    inst.res_ftilde.ambient_dim = 2;
    CHECK_THROWS_AS(identity_check(inst), error);
}
