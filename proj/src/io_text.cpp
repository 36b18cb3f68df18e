#include <cctype>
#include <cstdint>
#include <sstream>
#include <utility>

#include "mzl/error.hpp"
#include "mzl/io.hpp"

namespace mzl::io {

namespace {

// ---- lexer ----------------------------------------------------------------

enum class tok {
    integer,
    name,
    plus,
    minus,
    star,
    slash,
    caret,
    lparen,
    rparen,
    lbracket,
    rbracket,
    at,
    colon,
    end
};

struct Lexer {
    const std::string& src;
    std::string where;
    std::size_t pos = 0;
    long line = 1, col = 1;

    tok t = tok::end;
    std::string text;     // for name / integer tokens
    long tline = 1, tcol = 1;  // where the current token starts

    Lexer(const std::string& s, std::string w, long start_line)
        : src(s), where(std::move(w)), line(start_line) {
        next();
    }

    [[noreturn]] void die(const std::string& msg) const {
        fail(errc::input, where + ":" + std::to_string(tline) + ":" + std::to_string(tcol) +
                              ": " + msg);
    }

    void bump(char c) {
        ++pos;
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }

    void next() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {
                while (pos < src.size() && src[pos] != '\n') bump(src[pos]);
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump(c);
            } else {
                break;
            }
        }
        tline = line;
        tcol = col;
        if (pos >= src.size()) {
            t = tok::end;
            text.clear();
            return;
        }
        char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            text.clear();
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                text += src[pos];
                bump(src[pos]);
            }
            t = tok::integer;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            text.clear();
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
                text += src[pos];
                bump(src[pos]);
            }
            t = tok::name;
            return;
        }
        bump(c);
        switch (c) {
            case '+': t = tok::plus; return;
            case '-': t = tok::minus; return;
            case '*': t = tok::star; return;
            case '/': t = tok::slash; return;
            case '^': t = tok::caret; return;
            case '(': t = tok::lparen; return;
            case ')': t = tok::rparen; return;
            case '[': t = tok::lbracket; return;
            case ']': t = tok::rbracket; return;
            case '@': t = tok::at; return;
            case ':': t = tok::colon; return;
            default:
                tline = line;
                tcol = col - 1;
                die(std::string("unexpected character '") + c + "'");
        }
    }
};

std::int64_t to_i64(const std::string& digits, const Lexer& lx) {
    if (digits.size() > 18) lx.die("integer too large for an exponent");
    return std::stoll(digits);
}

// Cyclic order a class name carries on its own: k for "mu<k>", 1 otherwise.
std::int64_t implied_order(const std::string& name) {
    if (name.size() < 3 || name.compare(0, 2, "mu") != 0) return 1;
    for (std::size_t i = 2; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return 1;
    if (name.size() > 20) return 1;
    return std::stoll(name.substr(2));
}

// ---- parser ----------------------------------------------------------------

struct Parser {
    Lexer lx;
    std::vector<std::string> vars;
    bool series_mode;

    Parser(const std::string& src, const std::string& where, long start_line,
           std::vector<std::string> v, bool series)
        : lx(src, where, start_line), vars(std::move(v)), series_mode(series) {}

    RationalSeries constant(GrothElement c) const {
        return RationalSeries::constant(vars, std::move(c));
    }

    RationalSeries var_power(std::size_t j, std::int64_t e) const {
        RationalSeries r(vars);
        MultiIndex m(vars.size(), 0);
        m[j] = e;
        r.add_poly(std::move(m), GrothElement(1));
        return r;
    }

    bool starts_factor() const {
        return lx.t == tok::integer || lx.t == tok::name || lx.t == tok::lbracket ||
               lx.t == tok::lparen;
    }

    std::int64_t parse_exponent() {
        // caller consumed '^'
        bool neg = false;
        if (lx.t == tok::minus) {
            neg = true;
            lx.next();
        }
        if (lx.t != tok::integer) lx.die("expected an integer exponent");
        std::int64_t e = to_i64(lx.text, lx);
        lx.next();
        return neg ? -e : e;
    }

    ClassSymbol parse_class() {
        // caller consumed '['
        ClassSymbol s;
        if (lx.t == tok::name) {
            s.name = lx.text;
        } else if (lx.t == tok::integer && lx.text == "1") {
            s.name = "1";
        } else {
            lx.die("expected a class name");
        }
        lx.next();
        s.mu = implied_order(s.name);
        if (lx.t == tok::colon) {
            lx.next();
            if (lx.t != tok::integer) lx.die("expected a cyclic order after ':'");
            s.mu = to_i64(lx.text, lx);
            lx.next();
        }
        if (lx.t == tok::at) {
            lx.next();
            if (lx.t != tok::name) lx.die("expected a base label after '@'");
            s.base = lx.text;
            lx.next();
        }
        if (lx.t != tok::rbracket) lx.die("expected ']'");
        lx.next();
        if (s.mu < 1) lx.die("cyclic order must be >= 1");
        return s;
    }

    RationalSeries pow_series(const RationalSeries& base, std::int64_t e) {
        if (e < 0) lx.die("negative powers are only defined for L");
        if (e > 64) lx.die("exponent too large");
        RationalSeries r = constant(GrothElement(1));
        for (std::int64_t i = 0; i < e; ++i) r = r * base;
        return r;
    }

    RationalSeries parse_factor() {
        bool neg = false;
        while (lx.t == tok::minus) {
            neg = !neg;
            lx.next();
        }
        RationalSeries v = parse_powered();
        if (neg) v = -v;
        return v;
    }

    RationalSeries parse_powered() {
        if (lx.t == tok::integer) {
            Int c(lx.text);
            lx.next();
            if (lx.t == tok::caret) {
                lx.next();
                std::int64_t e = parse_exponent();
                if (e < 0) lx.die("negative powers are only defined for L");
                if (e > 4096) lx.die("exponent too large");
                Int r = 1;
                for (std::int64_t i = 0; i < e; ++i) r *= c;
                c = r;
            }
            return constant(GrothElement(LaurentPoly(c)));
        }
        if (lx.t == tok::name) {
            std::string name = lx.text;
            lx.next();
            std::int64_t e = 1;
            if (lx.t == tok::caret) {
                lx.next();
                e = parse_exponent();
            }
            if (name == "L") return constant(GrothElement::L_power(e));
            if (series_mode) {
                for (std::size_t j = 0; j < vars.size(); ++j) {
                    if (vars[j] != name) continue;
                    if (e < 0) lx.die("negative power of a series variable");
                    return var_power(j, e);
                }
            }
            lx.die("unknown name '" + name + "' (classes are written in brackets)");
        }
        if (lx.t == tok::lbracket) {
            lx.next();
            ClassSymbol s = parse_class();
            RationalSeries v = constant(GrothElement::symbol(std::move(s)));
            if (lx.t == tok::caret) {
                lx.next();
                return pow_series(v, parse_exponent());
            }
            return v;
        }
        if (lx.t == tok::lparen) {
            lx.next();
            RationalSeries v = parse_expr();
            if (lx.t != tok::rparen) lx.die("expected ')'");
            lx.next();
            if (lx.t == tok::caret) {
                lx.next();
                return pow_series(v, parse_exponent());
            }
            return v;
        }
        lx.die("expected a value");
    }

    // Matches 1 - L^a * V^b with nonzero V-degree; nullopt otherwise.
    static bool as_geom_factor(const RationalSeries& g, GeomFactor& out) {
        if (!g.terms().empty()) return false;
        const auto& p = g.poly_part();
        if (p.size() != 2) return false;
        MultiIndex zero(g.arity(), 0);
        auto one = p.find(zero);
        if (one == p.end() || one->second != GrothElement(1)) return false;
        for (const auto& [b, c] : p) {
            if (b == zero) continue;
            auto scalar = c.as_scalar();
            if (!scalar || !scalar->is_monomial()) return false;
            auto [e, cc] = *scalar->coeffs().begin();
            if (cc != -1) return false;
            out = GeomFactor{e, b};
            return true;
        }
        return false;
    }

    // Appends the factor to the denominator of every piece of s.
    RationalSeries divide(const RationalSeries& s, const GeomFactor& f) {
        RationalSeries out(vars);
        for (const auto& [b, c] : s.poly_part()) out.add_term(c, 0, b, {f});
        for (const auto& t : s.terms()) {
            std::vector<GeomFactor> den = t.den;
            den.push_back(f);
            out.add_term(t.coeff, t.a0, t.b0, std::move(den));
        }
        return out;
    }

    RationalSeries parse_term() {
        RationalSeries v = parse_factor();
        for (;;) {
            if (lx.t == tok::star) {
                lx.next();
                v = v * parse_factor();
            } else if (lx.t == tok::slash) {
                lx.next();
                if (lx.t != tok::lparen) lx.die("expected '(1 - ...)' after '/'");
                lx.next();
                RationalSeries g = parse_expr();
                if (lx.t != tok::rparen) lx.die("expected ')'");
                lx.next();
                std::int64_t e = 1;
                if (lx.t == tok::caret) {
                    lx.next();
                    e = parse_exponent();
                    if (e < 1 || e > 64) lx.die("divisor power out of range");
                }
                GeomFactor f;
                if (!as_geom_factor(g, f))
                    lx.die("divisor must have the form (1 - L^a * T^b)");
                for (std::int64_t i = 0; i < e; ++i) v = divide(v, f);
            } else if (starts_factor()) {
                v = v * parse_factor();
            } else {
                break;
            }
        }
        return v;
    }

    RationalSeries parse_expr() {
        bool neg = false;
        if (lx.t == tok::plus) {
            lx.next();
        } else if (lx.t == tok::minus) {
            lx.next();
            neg = true;
        }
        RationalSeries acc = parse_term();
        if (neg) acc = -acc;
        while (lx.t == tok::plus || lx.t == tok::minus) {
            bool sub = lx.t == tok::minus;
            lx.next();
            RationalSeries t = parse_term();
            acc = sub ? acc - t : acc + t;
        }
        return acc;
    }

    RationalSeries run() {
        RationalSeries v = parse_expr();
        if (lx.t != tok::end) lx.die("trailing input after the expression");
        return v;
    }
};

bool valid_var_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return s != "L";
}

// ---- renderers -------------------------------------------------------------

struct Piece {
    bool neg = false;
    std::string text;
};

std::string join_pieces(const std::vector<Piece>& pieces) {
    if (pieces.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& p : pieces) {
        if (first) {
            out = (p.neg ? "-" : "") + p.text;
            first = false;
        } else {
            out += (p.neg ? " - " : " + ") + p.text;
        }
    }
    return out;
}

std::string render_symbol(const ClassSymbol& s) {
    std::string out = "[" + s.name;
    if (s.mu != implied_order(s.name)) out += ":" + std::to_string(s.mu);
    if (!s.base.empty()) out += "@" + s.base;
    return out + "]";
}

// c * L^e as a factor string, sign split off; empty text means 1.
Piece laurent_monomial_piece(std::int64_t e, const Int& c) {
    Piece p;
    Int m = c;
    if (m < 0) {
        p.neg = true;
        m = -m;
    }
    if (e == 0) {
        if (m != 1) p.text = m.str();
    } else {
        if (m != 1) p.text = m.str() + "*";
        p.text += "L";
        if (e != 1) p.text += "^" + std::to_string(e);
    }
    return p;
}

Piece groth_term_piece(const Monomial& mono, const LaurentPoly& c) {
    std::string syms;
    for (const auto& s : mono) {
        if (!syms.empty()) syms += "*";
        syms += render_symbol(s);
    }
    if (mono.empty()) {
        if (!c.is_monomial()) return {false, "(" + render_text(c) + ")"};
        auto [e, cc] = *c.coeffs().begin();
        Piece p = laurent_monomial_piece(e, cc);
        if (p.text.empty()) p.text = "1";
        return p;
    }
    if (!c.is_monomial()) return {false, "(" + render_text(c) + ")*" + syms};
    auto [e, cc] = *c.coeffs().begin();
    Piece p = laurent_monomial_piece(e, cc);
    p.text = p.text.empty() ? syms : p.text + "*" + syms;
    return p;
}

std::string render_t_monomial(const std::vector<std::string>& vars, const MultiIndex& b) {
    std::string out;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] == 0) continue;
        if (!out.empty()) out += "*";
        out += vars[j];
        if (b[j] != 1) out += "^" + std::to_string(b[j]);
    }
    return out;
}

Piece series_piece(const std::vector<std::string>& vars, const MultiIndex& b,
                   const std::vector<GeomFactor>& den, const GrothElement& coeff) {
    Piece p;
    std::string tpart = render_t_monomial(vars, b);
    const auto& terms = coeff.terms();
    if (terms.size() == 1) {
        Piece cp = groth_term_piece(terms.begin()->first, terms.begin()->second);
        p.neg = cp.neg;
        if (cp.text == "1") cp.text.clear();
        p.text = cp.text;
    } else {
        p.text = "(" + render_text(coeff) + ")";
    }
    if (!tpart.empty()) p.text = p.text.empty() ? tpart : p.text + "*" + tpart;
    if (p.text.empty()) p.text = "1";
    for (const auto& f : den) {
        std::string mono = render_t_monomial(vars, f.b);
        if (f.a != 0) {
            std::string la = "L";
            if (f.a != 1) la += "^" + std::to_string(f.a);
            mono = la + "*" + mono;
        }
        p.text += " / (1 - " + mono + ")";
    }
    return p;
}

}  // namespace

GrothElement parse_groth(const std::string& src, const std::string& where) {
    Parser p(src, where, 1, {"_"}, false);
    RationalSeries v = p.run();
    const auto& poly = v.poly_part();
    if (poly.empty()) return GrothElement(0);
    return poly.begin()->second;
}

RationalSeries parse_series_text(const std::string& src, const std::string& where) {
    std::size_t eol = src.find('\n');
    std::string header = eol == std::string::npos ? src : src.substr(0, eol);
    if (std::size_t hash = header.find('#'); hash != std::string::npos)
        header.erase(hash);
    std::istringstream hs(header);
    std::string kw1, kw2, name;
    hs >> kw1 >> kw2;
    expect(kw1 == "series" && kw2 == "in", errc::input,
           where + ":1:1: expected a 'series in <var>...' header");
    std::vector<std::string> vars;
    while (hs >> name) {
        expect(valid_var_name(name), errc::input,
               where + ":1:1: bad variable name '" + name + "'");
        for (const auto& v : vars)
            expect(v != name, errc::input,
                   where + ":1:1: variable '" + name + "' listed twice");
        vars.push_back(name);
    }
    expect(!vars.empty(), errc::input, where + ":1:1: the header declares no variables");
    std::string body = eol == std::string::npos ? "" : src.substr(eol + 1);
    Parser p(body, where, 2, vars, true);
    if (p.lx.t == tok::end) return RationalSeries(vars);
    return p.run();
}

std::string render_text(const LaurentPoly& p) {
    std::vector<Piece> pieces;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        Piece piece = laurent_monomial_piece(it->first, it->second);
        if (piece.text.empty()) piece.text = "1";
        pieces.push_back(std::move(piece));
    }
    return join_pieces(pieces);
}

std::string render_text(const GrothElement& e) {
    const auto& ts = e.terms();
    // a purely scalar element needs no term-level parentheses
    if (ts.size() == 1 && ts.begin()->first.empty()) {
        const LaurentPoly& c = ts.begin()->second;
        if (!c.is_monomial()) return render_text(c);
    }
    std::vector<Piece> pieces;
    for (const auto& [mono, c] : ts) pieces.push_back(groth_term_piece(mono, c));
    return join_pieces(pieces);
}

std::string render_text(const RationalSeries& s) {
    std::string out = "series in";
    for (const auto& v : s.vars()) out += " " + v;
    out += "\n";

    // merge L^a0 into the coefficient so equal-shape pieces collapse
    std::map<std::pair<MultiIndex, std::vector<GeomFactor>>, GrothElement> norm;
    for (const auto& [b, c] : s.poly_part()) norm[{b, {}}] += c;
    for (const auto& t : s.terms())
        norm[{t.b0, t.den}] += t.coeff * GrothElement::L_power(t.a0);

    bool any = false;
    for (const auto& [key, coeff] : norm) {
        if (coeff.is_zero()) continue;
        Piece p = series_piece(s.vars(), key.first, key.second, coeff);
        out += std::string("  ") + (p.neg ? "- " : "+ ") + p.text + "\n";
        any = true;
    }
    if (!any) out += "  + 0\n";
    return out;
}

}  // namespace mzl::io
