#include "mzl/groth.hpp"

#include <algorithm>
#include <sstream>

#include "mzl/error.hpp"

namespace mzl {

bool ClassSymbol::is_canonical_mu() const {
    if (name.size() < 3 || name.compare(0, 2, "mu") != 0) return false;
    std::int64_t k = 0;
    for (std::size_t i = 2; i < name.size(); ++i) {
        char c = name[i];
        if (c < '0' || c > '9') return false;
        k = k * 10 + (c - '0');
        if (k > mu) return false;  // cheap overflow guard, mu bounds the answer
    }
    return k == mu && k >= 1;
}

namespace {

// Drop unit carriers unless one is needed to hold a base label, and keep the
// monomial sorted. Labeled carriers are redundant next to any symbol sharing
// their label.
Monomial canonical_monomial(Monomial m) {
    std::sort(m.begin(), m.end());
    Monomial out;
    std::vector<ClassSymbol> carriers;
    for (auto& s : m) {
        if (s.is_unit_carrier()) {
            expect(s.mu == 1, errc::input, "unit carrier with nontrivial action");
            if (!s.base.empty()) carriers.push_back(s);
        } else {
            expect(s.mu >= 1, errc::input, "symbol with non-positive action order");
            out.push_back(std::move(s));
        }
    }
    for (auto& c : carriers) {
        bool covered = std::any_of(out.begin(), out.end(),
                                   [&](const ClassSymbol& s) { return s.base == c.base; });
        if (!covered) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

GrothElement::GrothElement(LaurentPoly scalar) {
    if (!scalar.is_zero()) terms_.emplace(Monomial{}, std::move(scalar));
}

GrothElement GrothElement::symbol(ClassSymbol s, LaurentPoly coeff) {
    GrothElement e;
    e.add_term(Monomial{std::move(s)}, std::move(coeff));
    return e;
}

std::optional<LaurentPoly> GrothElement::as_scalar() const {
    if (terms_.empty()) return LaurentPoly();
    if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
    return std::nullopt;
}

void GrothElement::add_term(Monomial m, LaurentPoly c) {
    if (c.is_zero()) return;
    Monomial key = canonical_monomial(std::move(m));
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GrothElement GrothElement::operator-() const {
    GrothElement r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

GrothElement& GrothElement::operator+=(const GrothElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

GrothElement& GrothElement::operator-=(const GrothElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

GrothElement GrothElement::operator+(const GrothElement& o) const {
    GrothElement r = *this;
    r += o;
    return r;
}

GrothElement GrothElement::operator-(const GrothElement& o) const {
    GrothElement r = *this;
    r -= o;
    return r;
}

GrothElement GrothElement::operator*(const GrothElement& o) const {
    GrothElement r;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            Monomial m = m1;
            m.insert(m.end(), m2.begin(), m2.end());
            r.add_term(std::move(m), c1 * c2);
        }
    }
    return r;
}

GrothElement& GrothElement::operator*=(const GrothElement& o) {
    *this = *this * o;
    return *this;
}

GrothElement GrothElement::pow(std::uint64_t e) const {
    GrothElement r(1);
    GrothElement b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::vector<ClassSymbol> GrothElement::symbols() const {
    std::vector<ClassSymbol> out;
    for (const auto& [m, c] : terms_)
        for (const auto& s : m) out.push_back(s);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::string symbol_str(const ClassSymbol& s) {
    std::string r = "[" + s.name;
    if (s.mu != 1 && !s.is_canonical_mu()) r += ";mu=" + std::to_string(s.mu);
    r += "]";
    if (!s.base.empty()) r += "@" + s.base;
    return r;
}

}  // namespace

std::string GrothElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string cs = c.str();
        bool neg = false;
        if (!cs.empty() && cs[0] == '-' && c.is_monomial()) {
            neg = true;
            cs = cs.substr(1);
        }
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool wrap = !c.is_monomial() && !m.empty();
        bool unit_coeff = (cs == "1") && !m.empty();
        if (!unit_coeff) os << (wrap ? "(" + cs + ")" : cs);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i || !unit_coeff) os << "*";
            os << symbol_str(m[i]);
        }
    }
    return os.str();
}

namespace {

LaurentPoly lookup_symbol(const ClassSymbol& s, const Specialization& sp) {
    if (s.is_unit_carrier()) return LaurentPoly(1);
    auto it = sp.values.find(s);
    if (it != sp.values.end()) return it->second;
    if (!s.base.empty()) {
        ClassSymbol bare = s;
        bare.base.clear();
        it = sp.values.find(bare);
        if (it != sp.values.end()) return it->second;
    }
    if (s.is_canonical_mu() && sp.q) {
        // Points of mu_k over F_q: k when the full group of k-th roots of
        // unity lives in F_q, which is exactly q = 1 (mod k).
        if ((*sp.q - 1) % s.mu == 0) return LaurentPoly(Int(s.mu));
        fail(errc::unsupported, "no value for " + symbol_str(s) + " at this q");
    }
    fail(errc::input, "unspecialized symbol " + symbol_str(s));
}

}  // namespace

LaurentPoly specialize_poly(const GrothElement& e, const Specialization& s) {
    LaurentPoly out;
    for (const auto& [m, c] : e.terms()) {
        LaurentPoly t = c;
        for (const auto& sym : m) t *= lookup_symbol(sym, s);
        out += t;
    }
    return out;
}

Rat specialize_value(const GrothElement& e, const Specialization& s) {
    expect(s.q.has_value(), errc::input, "specialize_value needs q");
    return specialize_poly(e, s).eval(*s.q);
}

GrothElement with_base(const GrothElement& e, const std::string& label) {
    expect(!label.empty(), errc::input, "empty base label");
    GrothElement out;
    for (const auto& [m, c] : e.terms()) {
        Monomial lm;
        lm.reserve(m.size());
        for (auto s : m) {
            expect(s.base.empty() || s.base == label, errc::input,
                   "relabeling already-based symbol " + symbol_str(s));
            s.base = label;
            lm.push_back(std::move(s));
        }
        if (lm.empty()) lm.push_back(ClassSymbol{"1", 1, label});
        GrothElement t;
        t.add_term(std::move(lm), c);
        out += t;
    }
    return out;
}

GrothElement pullback_relabel(const GrothElement& e, const RelabelTable& table) {
    GrothElement out;
    for (const auto& [m, c] : e.terms()) {
        std::string label;
        for (const auto& s : m) {
            if (s.base.empty()) continue;
            expect(label.empty() || label == s.base, errc::input,
                   "monomial spans strata " + label + " and " + s.base);
            label = s.base;
        }
        if (label.empty()) {
            GrothElement t;
            t.add_term(m, c);
            out += t;
            continue;
        }
        auto it = table.find(label);
        expect(it != table.end(), errc::input, "no pullback row for stratum " + label);
        for (const auto& [image, factor] : it->second) {
            Monomial rm;
            rm.reserve(m.size());
            for (auto s : m) {
                s.base = image;
                rm.push_back(std::move(s));
            }
            GrothElement t;
            t.add_term(std::move(rm), c);
            out += t * factor;
        }
    }
    return out;
}

GrothElement pushforward_forget(const GrothElement& e) {
    GrothElement out;
    for (const auto& [m, c] : e.terms()) {
        Monomial fm;
        fm.reserve(m.size());
        for (auto s : m) {
            s.base.clear();
            fm.push_back(std::move(s));
        }
        GrothElement t;
        t.add_term(std::move(fm), c);
        out += t;
    }
    return out;
}

}  // namespace mzl
