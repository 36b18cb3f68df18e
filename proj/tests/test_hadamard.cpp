#include "support.hpp"

#include <random>

#include "mzl/series.hpp"

using namespace mzl;

namespace {

RationalSeries geom1(std::int64_t a, std::int64_t b) {
    return RationalSeries::geometric({"T"}, GeomFactor{a, {b}});
}

RationalSeries random_series(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 2), nfac(1, 3), da(-4, 4), db(1, 4),
        dc(-3, 3);
    RationalSeries p({"T"});
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        std::vector<GeomFactor> den;
        std::int64_t b0 = 0;
        int nf = nfac(rng);
        for (int i = 0; i < nf; ++i) {
            GeomFactor f{da(rng), {db(rng)}};
            b0 += f.b[0];
            den.push_back(std::move(f));
        }
        GrothElement c(dc(rng));
        if (c.is_zero()) c = GrothElement(1);
        p.add_term(c, da(rng), {std::max<std::int64_t>(1, b0 - 2)}, std::move(den));
    }
    return p;
}

// convergent and with zero constant term: a sum of generator products
RationalSeries random_convergent(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 2), nfac(1, 2), da(-3, 3), db(1, 3),
        dc(-3, 3);
    RationalSeries p({"T"});
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        RationalSeries term = RationalSeries::constant({"T"}, GrothElement(1));
        int nf = nfac(rng);
        for (int i = 0; i < nf; ++i) term = term * geom1(da(rng), db(rng));
        GrothElement c(dc(rng));
        if (c.is_zero()) c = GrothElement(1);
        p += term.scale(c);
    }
    return p;
}

}  // namespace

TEST_CASE("unity and closed forms") {
    auto u = RationalSeries::unity("T");
    for (auto [a, b] : {std::pair<int, int>{-1, 1}, {2, 3}, {0, 2}}) {
        auto p = geom1(a, b);
        CHECK(rs_eq(rs_hadamard(p, u), p));
        CHECK(rs_eq(rs_hadamard(u, p), p));
    }
    // L^a T/(1-L^a T) * L^b T/(1-L^b T) pointwise is L^(a+b) T/(1-L^(a+b) T)
    CHECK(rs_eq(rs_hadamard(geom1(2, 1), geom1(-3, 1)), geom1(-1, 1)));
    // a two-factor series against unity
    RationalSeries p({"T"});
    p.add_term(GrothElement(1), 0, {2}, {GeomFactor{0, {2}}, GeomFactor{0, {1}}});
    CHECK(rs_eq(rs_hadamard(p, u), p));
}

TEST_CASE("polynomial parts multiply pointwise") {
    RationalSeries p({"T"});
    p.add_poly({0}, GrothElement(5));
    p.add_poly({2}, GrothElement::L_power(1));
    auto q = geom1(-1, 1);  // L^-n at T^n, plus constant 0
    auto h = rs_hadamard(p, q);
    auto e = rs_expand(h, 5);
    CHECK(e.size() == 1);
    CHECK(e.at({2}) == GrothElement::L_power(-1));
    auto h2 = rs_hadamard(q, p);
    CHECK(rs_eq(h, h2));

    auto c1 = RationalSeries::constant({"T"}, GrothElement(3));
    auto c2 = RationalSeries::constant({"T"}, GrothElement(2)) + RationalSeries::unity("T");
    auto hc = rs_hadamard(c1, c2);
    auto ec = rs_expand(hc, 3);
    CHECK(ec.size() == 1);
    CHECK(ec.at({0}) == GrothElement(6));
}

TEST_CASE("property: Hadamard matches coefficientwise products") {
    std::mt19937 rng(550);
    for (int i = 0; i < 50; ++i) {
        auto p = random_series(rng);
        auto q = random_series(rng);
        auto h = rs_hadamard(p, q);
        auto ep = rs_expand(p, 40);
        auto eq = rs_expand(q, 40);
        auto eh = rs_expand(h, 40);
        std::map<MultiIndex, GrothElement> want;
        for (const auto& [m, c] : ep) {
            auto it = eq.find(m);
            if (it == eq.end()) continue;
            GrothElement v = c * it->second;
            if (!v.is_zero()) want.emplace(m, std::move(v));
        }
        CHECK(eh == want);
    }
}

TEST_CASE("property: limit turns Hadamard into a signed product") {
    std::mt19937 rng(551);
    for (int i = 0; i < 100; ++i) {
        auto p = random_convergent(rng);
        auto q = random_convergent(rng);
        auto h = rs_hadamard(p, q);
        CHECK(rs_limit(h) == -(rs_limit(p) * rs_limit(q)));
    }
}

TEST_CASE("property: commutative and associative") {
    std::mt19937 rng(552);
    std::uniform_int_distribution<int> da(-2, 2), db(1, 2), dn(1, 2);
    auto small = [&] {
        RationalSeries p({"T"});
        std::vector<GeomFactor> den;
        std::int64_t b0 = 0;
        int nf = dn(rng);
        for (int i = 0; i < nf; ++i) {
            GeomFactor f{da(rng), {db(rng)}};
            b0 += f.b[0];
            den.push_back(std::move(f));
        }
        p.add_term(GrothElement(1), da(rng), {b0}, std::move(den));
        return p;
    };
    for (int i = 0; i < 12; ++i) {
        auto p = small();
        auto q = small();
        auto r = small();
        auto pq = rs_hadamard(p, q);
        CHECK(rs_eq(pq, rs_hadamard(q, p)));
        CHECK(rs_eq(rs_hadamard(pq, r), rs_hadamard(p, rs_hadamard(q, r))));
    }
}
