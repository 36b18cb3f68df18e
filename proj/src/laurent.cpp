#include "mzl/laurent.hpp"

#include <sstream>

namespace mzl {

LaurentPoly LaurentPoly::L(std::int64_t exp, Int coeff) {
    LaurentPoly p;
    if (coeff != 0) p.coeffs_[exp] = std::move(coeff);
    return p;
}

bool LaurentPoly::is_one() const {
    return coeffs_.size() == 1 && coeffs_.begin()->first == 0 && coeffs_.begin()->second == 1;
}

Int LaurentPoly::coeff(std::int64_t exp) const {
    auto it = coeffs_.find(exp);
    return it == coeffs_.end() ? Int(0) : it->second;
}

void LaurentPoly::set(std::int64_t exp, Int c) {
    if (c == 0)
        coeffs_.erase(exp);
    else
        coeffs_[exp] = std::move(c);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (auto& [e, c] : o.coeffs_) set(e, coeff(e) + c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (auto& [e, c] : o.coeffs_) set(e, coeff(e) - c);
    return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r += o;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r -= o;
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (auto& [e1, c1] : coeffs_)
        for (auto& [e2, c2] : o.coeffs_) r.set(e1 + e2, r.coeff(e1 + e2) + c1 * c2);
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly LaurentPoly::pow(std::uint64_t e) const {
    LaurentPoly r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Rat LaurentPoly::eval(const Int& q) const {
    Rat total = 0;
    Rat qr(q);
    for (auto& [e, c] : coeffs_) total += Rat(c) * rpow(qr, e);
    return total;
}

std::string LaurentPoly::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // highest power first
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        Int c = it->second;
        if (first) {
            if (c < 0) {
                out << "-";
                c = -c;
            }
        } else {
            out << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        std::int64_t e = it->first;
        if (e == 0) {
            out << c.str();
        } else {
            if (c != 1) out << c.str() << "*";
            out << "L";
            if (e != 1) out << "^" << e;
        }
    }
    return out.str();
}

}  // namespace mzl
