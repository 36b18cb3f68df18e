#include "mzl/series.hpp"

#include <algorithm>
#include <sstream>

#include "mzl/error.hpp"

namespace mzl {

std::int64_t total_degree(const MultiIndex& m) {
    std::int64_t s = 0;
    for (auto v : m) s += v;
    return s;
}

namespace {

bool all_zero(const MultiIndex& m) {
    return std::all_of(m.begin(), m.end(), [](std::int64_t v) { return v == 0; });
}

void check_index(const MultiIndex& m, std::size_t arity, const char* what) {
    expect(m.size() == arity, errc::input, std::string(what) + ": arity mismatch");
    for (auto v : m)
        expect(v >= 0, errc::input, std::string(what) + ": negative T-exponent");
}

MultiIndex add_index(const MultiIndex& x, const MultiIndex& y) {
    MultiIndex r = x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
    return r;
}

using Poly = std::map<MultiIndex, GrothElement>;  // T-monomial -> coefficient

void poly_add(Poly& p, const MultiIndex& m, const GrothElement& c) {
    if (c.is_zero()) return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

// p * (1 - L^a T^b)
Poly mul_factor(const Poly& p, const GeomFactor& f) {
    Poly r = p;
    GrothElement la = GrothElement::L_power(f.a);
    for (const auto& [m, c] : p) poly_add(r, add_index(m, f.b), -(c * la));
    return r;
}

}  // namespace

RationalSeries::RationalSeries(std::vector<std::string> vars) : vars_(std::move(vars)) {
    expect(!vars_.empty(), errc::input, "series needs at least one variable");
}

RationalSeries RationalSeries::constant(std::vector<std::string> vars, GrothElement c) {
    RationalSeries r(std::move(vars));
    r.add_poly(MultiIndex(r.arity(), 0), std::move(c));
    return r;
}

RationalSeries RationalSeries::geometric(std::vector<std::string> vars, GeomFactor f) {
    RationalSeries r(std::move(vars));
    MultiIndex b0 = f.b;
    std::int64_t a0 = f.a;
    r.add_term(GrothElement(1), a0, std::move(b0), {std::move(f)});
    return r;
}

RationalSeries RationalSeries::unity(const std::string& var) {
    return geometric({var}, GeomFactor{0, {1}});
}

void RationalSeries::add_term(GrothElement coeff, std::int64_t a0, MultiIndex b0,
                              std::vector<GeomFactor> den) {
    if (coeff.is_zero()) return;
    check_index(b0, arity(), "numerator");
    for (const auto& f : den) {
        check_index(f.b, arity(), "denominator factor");
        expect(!all_zero(f.b), errc::input, "denominator factor with zero T-degree");
    }
    std::sort(den.begin(), den.end());
    if (den.empty()) {
        add_poly(std::move(b0), std::move(coeff) * GrothElement::L_power(a0));
        return;
    }
    TermKey key{a0, std::move(b0), std::move(den)};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), std::move(coeff));
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void RationalSeries::add_poly(MultiIndex m, GrothElement c) {
    check_index(m, arity(), "polynomial part");
    poly_add(poly_, m, c);
}

std::vector<RationalSeries::Term> RationalSeries::terms() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.push_back(Term{c, k.a0, k.b0, k.den});
    return out;
}

void RationalSeries::require_same_vars(const RationalSeries& o) const {
    expect(vars_ == o.vars_, errc::input, "series variable lists differ");
}

RationalSeries RationalSeries::operator+(const RationalSeries& o) const {
    RationalSeries r = *this;
    r += o;
    return r;
}

RationalSeries& RationalSeries::operator+=(const RationalSeries& o) {
    require_same_vars(o);
    for (const auto& [k, c] : o.terms_) add_term(c, k.a0, k.b0, k.den);
    for (const auto& [m, c] : o.poly_) add_poly(m, c);
    return *this;
}

RationalSeries RationalSeries::operator-() const {
    RationalSeries r(vars_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    for (const auto& [m, c] : poly_) r.poly_.emplace(m, -c);
    return r;
}

RationalSeries RationalSeries::operator-(const RationalSeries& o) const {
    return *this + (-o);
}

RationalSeries RationalSeries::operator*(const RationalSeries& o) const {
    require_same_vars(o);
    RationalSeries r(vars_);
    for (const auto& [k1, c1] : terms_) {
        for (const auto& [k2, c2] : o.terms_) {
            std::vector<GeomFactor> den = k1.den;
            den.insert(den.end(), k2.den.begin(), k2.den.end());
            r.add_term(c1 * c2, k1.a0 + k2.a0, add_index(k1.b0, k2.b0), std::move(den));
        }
        for (const auto& [m, c] : o.poly_)
            r.add_term(c1 * c, k1.a0, add_index(k1.b0, m), k1.den);
    }
    for (const auto& [m1, c1] : poly_) {
        for (const auto& [k2, c2] : o.terms_)
            r.add_term(c1 * c2, k2.a0, add_index(m1, k2.b0), k2.den);
        for (const auto& [m2, c2] : o.poly_) r.add_poly(add_index(m1, m2), c1 * c2);
    }
    return r;
}

RationalSeries RationalSeries::scale(const GrothElement& c) const {
    RationalSeries r(vars_);
    for (const auto& [k, v] : terms_) r.add_term(v * c, k.a0, k.b0, k.den);
    for (const auto& [m, v] : poly_) r.add_poly(m, v * c);
    return r;
}

std::map<MultiIndex, GrothElement> rs_expand(const RationalSeries& p, std::int64_t order) {
    expect(order >= 0, errc::input, "negative expansion order");
    Poly out;
    for (const auto& [m, c] : p.poly_part())
        if (total_degree(m) <= order) poly_add(out, m, c);
    for (const auto& t : p.terms()) {
        std::int64_t budget = order - total_degree(t.b0);
        if (budget < 0) continue;
        // expand prod 1/(1 - L^a T^b) up to total degree <= budget
        std::map<MultiIndex, LaurentPoly> acc;
        acc.emplace(MultiIndex(p.arity(), 0), LaurentPoly(1));
        for (const auto& f : t.den) {
            std::int64_t step = total_degree(f.b);
            std::map<MultiIndex, LaurentPoly> next;
            for (const auto& [m, c] : acc) {
                MultiIndex cur = m;
                std::int64_t deg = total_degree(m);
                for (std::int64_t k = 0; deg + k * step <= budget; ++k) {
                    if (k > 0) cur = add_index(cur, f.b);
                    LaurentPoly v = c * LaurentPoly::L(k * f.a);
                    auto it = next.find(cur);
                    if (it == next.end())
                        next.emplace(cur, std::move(v));
                    else
                        it->second += v;
                }
            }
            acc = std::move(next);
        }
        GrothElement pre = t.coeff * GrothElement::L_power(t.a0);
        for (const auto& [m, c] : acc)
            poly_add(out, add_index(m, t.b0), pre * GrothElement(c));
    }
    return out;
}

namespace {

struct NumForm {
    Poly num;
    std::vector<GeomFactor> den;  // sorted multiset
};

// Common-denominator form: num / prod(1 - L^a T^b) over den.
NumForm normalize(const RationalSeries& p) {
    auto terms = p.terms();
    std::map<GeomFactor, std::size_t> mult;
    for (const auto& t : terms) {
        std::map<GeomFactor, std::size_t> mine;
        for (const auto& f : t.den) ++mine[f];
        for (const auto& [f, k] : mine) mult[f] = std::max(mult[f], k);
    }
    NumForm r;
    for (const auto& [f, k] : mult)
        for (std::size_t i = 0; i < k; ++i) r.den.push_back(f);
    for (const auto& t : terms) {
        Poly part;
        poly_add(part, t.b0, t.coeff * GrothElement::L_power(t.a0));
        std::map<GeomFactor, std::size_t> mine;
        for (const auto& f : t.den) ++mine[f];
        for (const auto& [f, k] : mult) {
            std::size_t have = mine.count(f) ? mine.at(f) : 0;
            for (std::size_t i = have; i < k; ++i) part = mul_factor(part, f);
        }
        for (const auto& [m, c] : part) poly_add(r.num, m, c);
    }
    if (!p.poly_part().empty()) {
        Poly part = p.poly_part();
        for (const auto& f : r.den) part = mul_factor(part, f);
        for (const auto& [m, c] : part) poly_add(r.num, m, c);
    }
    return r;
}

Poly mul_many(Poly p, const std::vector<GeomFactor>& fs) {
    for (const auto& f : fs) p = mul_factor(p, f);
    return p;
}

}  // namespace

GrothElement rs_limit(const RationalSeries& p) {
    expect(p.arity() == 1, errc::input, "limit needs a univariate series");
    NumForm n = normalize(p);
    if (n.num.empty()) return GrothElement();
    std::int64_t deg_num = n.num.rbegin()->first[0];
    std::int64_t deg_den = 0, sum_a = 0;
    for (const auto& f : n.den) {
        deg_den += f.b[0];
        sum_a += f.a;
    }
    expect(deg_num <= deg_den, errc::divergent, "series diverges at T -> infinity");
    if (deg_num < deg_den) return GrothElement();
    // leading coefficient of the denominator is (-1)^s L^{sum_a}, a unit
    GrothElement lead = n.num.rbegin()->second * GrothElement::L_power(-sum_a);
    return (n.den.size() % 2) ? -lead : lead;
}

RationalSeries rs_substitute(const RationalSeries& p,
                             const std::map<std::string, MonoImage>& subst) {
    const auto& vars = p.vars();
    std::vector<std::string> kept;
    std::vector<std::size_t> kept_idx;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!subst.count(vars[i])) {
            kept.push_back(vars[i]);
            kept_idx.push_back(i);
        }
    }
    std::map<std::string, MonoImage> images = subst;
    for (auto& [v, img] : images) {
        expect(std::find(vars.begin(), vars.end(), v) != vars.end(), errc::input,
               "substituted variable " + v + " not in series");
        if (img.d.empty()) img.d.assign(kept.size(), 0);  // plain L^c image
        expect(img.d.size() == kept.size(), errc::input,
               "substitution image for " + v + ": arity mismatch");
        for (auto e : img.d)
            expect(e >= 0, errc::input, "substitution image with negative exponent");
    }
    expect(!kept.empty(), errc::input, "substitution must leave a variable");

    auto map_mono = [&](std::int64_t a, const MultiIndex& b) {
        std::pair<std::int64_t, MultiIndex> r{a, MultiIndex(kept.size(), 0)};
        for (std::size_t j = 0; j < kept_idx.size(); ++j) r.second[j] = b[kept_idx[j]];
        for (std::size_t i = 0; i < vars.size(); ++i) {
            auto it = images.find(vars[i]);
            if (it == images.end() || b[i] == 0) continue;
            r.first += b[i] * it->second.c;
            for (std::size_t j = 0; j < kept.size(); ++j)
                r.second[j] += b[i] * it->second.d[j];
        }
        return r;
    };

    RationalSeries out(kept);
    for (const auto& t : p.terms()) {
        auto [a0, b0] = map_mono(t.a0, t.b0);
        std::vector<GeomFactor> den;
        den.reserve(t.den.size());
        for (const auto& f : t.den) {
            auto [a, b] = map_mono(f.a, f.b);
            expect(!all_zero(b), errc::divergent, "non-convergent substitution");
            den.push_back(GeomFactor{a, std::move(b)});
        }
        out.add_term(t.coeff, a0, std::move(b0), std::move(den));
    }
    for (const auto& [m, c] : p.poly_part()) {
        auto [a, b] = map_mono(0, m);
        out.add_poly(std::move(b), c * GrothElement::L_power(a));
    }
    return out;
}

bool rs_eq(const RationalSeries& p, const RationalSeries& q) {
    expect(p.vars() == q.vars(), errc::input, "series variable lists differ");
    NumForm a = normalize(p), b = normalize(q);
    // cancel the common multiset of factors before cross-multiplying
    std::vector<GeomFactor> extra_a, extra_b;
    auto ia = a.den.begin();
    auto ib = b.den.begin();
    while (ia != a.den.end() && ib != b.den.end()) {
        if (*ia == *ib) {
            ++ia;
            ++ib;
        } else if (*ia < *ib) {
            extra_a.push_back(*ia++);
        } else {
            extra_b.push_back(*ib++);
        }
    }
    extra_a.insert(extra_a.end(), ia, a.den.end());
    extra_b.insert(extra_b.end(), ib, b.den.end());
    return mul_many(std::move(a.num), extra_b) == mul_many(std::move(b.num), extra_a);
}

namespace {

std::string mono_str(const std::vector<std::string>& vars, std::int64_t a,
                     const MultiIndex& b) {
    std::ostringstream os;
    bool any = false;
    if (a != 0) {
        os << "L";
        if (a != 1) os << "^" << a;
        any = true;
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] == 0) continue;
        if (any) os << "*";
        os << vars[i];
        if (b[i] != 1) os << "^" << b[i];
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

}  // namespace

std::string RationalSeries::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    for (const auto& [m, c] : poly_) {
        sep();
        os << "(" << c.str() << ")";
        if (!all_zero(m)) os << "*" << mono_str(vars_, 0, m);
    }
    for (const auto& [k, c] : terms_) {
        sep();
        os << "(" << c.str() << ")*" << mono_str(vars_, k.a0, k.b0) << " / (";
        for (const auto& f : k.den) os << "(1 - " << mono_str(vars_, f.a, f.b) << ")";
        os << ")";
    }
    return os.str();
}

}  // namespace mzl
