#include "mzl/jets.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>

#include "mzl/error.hpp"
#include "mzl/series.hpp"

#ifdef MZL_HAVE_OPENMP
#include <omp.h>
#endif

namespace mzl {

namespace {

using Word = std::uint16_t;
using Window = std::vector<Word>;
using Jet = std::vector<Window>;  // one window per variable

// ---- small F_p polynomial helpers for table construction ----

std::vector<int> pmul(const std::vector<int>& a, const std::vector<int>& b, std::int64_t p) {
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int>((r[i + j] + std::int64_t(a[i]) * b[j]) % p);
    return r;
}

// Remainder of a modulo monic h.
std::vector<int> pmod(std::vector<int> a, const std::vector<int>& h, std::int64_t p) {
    const std::size_t dh = h.size() - 1;
    while (a.size() > dh) {
        int lead = a.back();
        if (lead) {
            std::size_t off = a.size() - 1 - dh;
            for (std::size_t i = 0; i < h.size(); ++i) {
                std::int64_t v = a[off + i] - std::int64_t(lead) * h[i];
                a[off + i] = static_cast<int>(((v % p) + p) % p);
            }
        }
        a.pop_back();
    }
    return a;
}

bool pis_zero(const std::vector<int>& a) {
    return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

}  // namespace

Fq::Fq(std::int64_t q) : q_(q) {
    expect(q >= 2 && q <= 4096, errc::input, "field size out of range");
    std::int64_t p = 2;
    while (q % p != 0) ++p;
    p_ = p;
    std::int64_t m = q;
    e_ = 0;
    while (m > 1) {
        expect(m % p == 0, errc::input, "field size must be a prime power");
        m /= p;
        ++e_;
    }
    if (e_ == 1) return;

    // Irreducible monic h of degree e: no monic divisor of degree <= e/2.
    std::vector<int> h;
    std::int64_t candidates = 1;
    for (int i = 0; i < e_; ++i) candidates *= p;
    for (std::int64_t code = 0; code < candidates && h.empty(); ++code) {
        std::vector<int> cand(static_cast<std::size_t>(e_) + 1, 0);
        std::int64_t c = code;
        for (int i = 0; i < e_; ++i) {
            cand[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
            c /= p;
        }
        cand[static_cast<std::size_t>(e_)] = 1;
        bool irred = cand[0] != 0;  // a root at zero means a degree-one factor
        for (std::int64_t dcode = p; irred && dcode < candidates; ++dcode) {
            std::vector<int> div;
            std::int64_t dc = dcode;
            while (dc) {
                div.push_back(static_cast<int>(dc % p));
                dc /= p;
            }
            int deg = static_cast<int>(div.size()) - 1;
            if (deg < 1 || deg > e_ / 2) continue;
            if (div.back() != 1) continue;
            if (pis_zero(pmod(cand, div, p))) irred = false;
        }
        if (irred) h = cand;
    }
    expect(!h.empty(), errc::internal, "no irreducible polynomial found");

    auto decode = [&](std::int64_t code) {
        std::vector<int> v(static_cast<std::size_t>(e_), 0);
        for (int i = 0; i < e_; ++i) {
            v[static_cast<std::size_t>(i)] = static_cast<int>(code % p);
            code /= p;
        }
        return v;
    };
    auto encode = [&](const std::vector<int>& v) {
        std::int64_t code = 0;
        for (int i = e_ - 1; i >= 0; --i)
            code = code * p +
                   (static_cast<std::size_t>(i) < v.size() ? v[static_cast<std::size_t>(i)] : 0);
        return code;
    };

    addt_.assign(static_cast<std::size_t>(q_ * q_), 0);
    negt_.assign(static_cast<std::size_t>(q_), 0);
    for (std::int64_t a = 0; a < q_; ++a) {
        auto va = decode(a);
        std::vector<int> vn(static_cast<std::size_t>(e_));
        for (int i = 0; i < e_; ++i)
            vn[static_cast<std::size_t>(i)] =
                static_cast<int>((p - va[static_cast<std::size_t>(i)]) % p);
        negt_[static_cast<std::size_t>(a)] = static_cast<Word>(encode(vn));
        for (std::int64_t b = 0; b < q_; ++b) {
            auto vb = decode(b);
            std::vector<int> vs(static_cast<std::size_t>(e_));
            for (int i = 0; i < e_; ++i)
                vs[static_cast<std::size_t>(i)] = static_cast<int>(
                    (va[static_cast<std::size_t>(i)] + vb[static_cast<std::size_t>(i)]) % p);
            addt_[static_cast<std::size_t>(a * q_ + b)] = static_cast<Word>(encode(vs));
        }
    }

    auto field_mul = [&](std::int64_t a, std::int64_t b) {
        return encode(pmod(pmul(decode(a), decode(b), p), h, p));
    };

    logt_.assign(static_cast<std::size_t>(q_), -1);
    expt_.assign(static_cast<std::size_t>(2 * (q_ - 1)), 0);
    for (std::int64_t g = 2; g < q_; ++g) {
        std::fill(logt_.begin(), logt_.end(), -1);
        std::int64_t x = 1;
        std::int64_t len = 0;
        while (logt_[static_cast<std::size_t>(x)] < 0) {
            logt_[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(len);
            expt_[static_cast<std::size_t>(len)] = static_cast<Word>(x);
            ++len;
            x = field_mul(x, g);
        }
        if (len == q_ - 1) {
            for (std::int64_t i = 0; i < q_ - 1; ++i)
                expt_[static_cast<std::size_t>(q_ - 1 + i)] = expt_[static_cast<std::size_t>(i)];
            return;
        }
    }
    fail(errc::internal, "no generator found for the multiplicative group");
}

std::uint16_t Fq::inv(std::uint16_t a) const {
    expect(a != 0, errc::input, "division by zero in the field");
    if (e_ == 1) return pow(a, p_ - 2);
    return expt_[static_cast<std::size_t>((q_ - 1) - logt_[a])];
}

std::uint16_t Fq::pow(std::uint16_t a, std::int64_t e) const {
    if (e < 0) return pow(inv(a), -e);
    std::uint16_t r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

void poly_validate(const PolySpec& f) {
    expect(f.d >= 1, errc::input, "polynomial arity must be positive");
    for (const auto& m : f.monomials) {
        expect(static_cast<std::int64_t>(m.exps.size()) == f.d, errc::input,
               "monomial arity disagrees with the polynomial");
        expect(m.coeff != 0, errc::input, "zero coefficient in a monomial");
        for (auto e : m.exps) expect(e >= 0, errc::input, "negative exponent in a monomial");
    }
}

void condition_validate(const std::vector<PolySpec>& ctx, const ArcCondition& cond) {
    expect(cond.smooth_ambient, errc::unsupported,
           "arcs on a singular ambient space are not supported");
    expect(cond.d >= 1, errc::input, "condition arity must be positive");
    for (const auto& f : ctx) {
        poly_validate(f);
        expect(f.d == cond.d, errc::input, "context polynomial arity disagrees with the condition");
    }
    auto check_idx = [&](std::size_t i) {
        expect(i < ctx.size(), errc::input, "condition references a missing polynomial");
    };
    if (cond.contact) {
        check_idx(cond.contact->poly);
        expect(cond.contact->order >= 0, errc::input, "contact order must be nonnegative");
    }
    for (const auto& o : cond.ord) {
        expect(!o.terms.empty(), errc::input, "empty order comparison");
        for (const auto& [grp, c] : o.terms) {
            expect(!grp.empty(), errc::input, "empty polynomial group in an order comparison");
            expect(c != 0, errc::input, "zero coefficient in an order comparison");
            for (auto i : grp) check_idx(i);
        }
    }
    for (const auto& c : cond.cong) {
        check_idx(c.poly);
        expect(c.mod >= 1, errc::input, "congruence modulus must be positive");
    }
    for (auto i : cond.base_zero)
        expect(i < static_cast<std::size_t>(cond.d), errc::input,
               "base-point constraint references a missing coordinate");
}

std::int64_t default_budget() {
    if (const char* s = std::getenv("MZL_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(s, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 100000000;
}

namespace {

// ---- truncated window arithmetic ----

void wmul_into(const Fq& F, const Window& a, const Window& b, Window& out) {
    std::fill(out.begin(), out.end(), 0);
    const std::size_t W = out.size();
    for (std::size_t i = 0; i < W && i < a.size(); ++i) {
        if (!a[i]) continue;
        const std::size_t lim = std::min(W - i, b.size());
        for (std::size_t j = 0; j < lim; ++j) {
            if (!b[j]) continue;
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
        }
    }
}

// Window of f(jet), using only the first `levels` coefficients of each
// variable; higher entries of the jet are ignored.
Window eval_window(const Fq& F, const PolySpec& f, const Jet& jet, std::size_t W,
                   std::size_t levels) {
    Window acc(W, 0), term(W, 0), tmp(W, 0), var(W, 0);
    for (const auto& m : f.monomials) {
        Word c = F.from_int(m.coeff);
        if (!c) continue;
        std::fill(term.begin(), term.end(), 0);
        term[0] = c;
        bool dead = false;
        for (std::int64_t i = 0; i < f.d && !dead; ++i) {
            for (std::int64_t e = 0; e < m.exps[static_cast<std::size_t>(i)]; ++e) {
                std::fill(var.begin(), var.end(), 0);
                const std::size_t lim =
                    std::min({W, jet[static_cast<std::size_t>(i)].size(), levels});
                for (std::size_t k = 0; k < lim; ++k)
                    var[k] = jet[static_cast<std::size_t>(i)][k];
                wmul_into(F, term, var, tmp);
                term.swap(tmp);
                if (std::all_of(term.begin(), term.end(), [](Word w) { return w == 0; })) {
                    dead = true;
                    break;
                }
            }
        }
        if (dead) continue;
        for (std::size_t k = 0; k < W; ++k) acc[k] = F.add(acc[k], term[k]);
    }
    return acc;
}

PolySpec derivative(const PolySpec& f, std::int64_t var) {
    PolySpec g;
    g.d = f.d;
    for (const auto& m : f.monomials) {
        if (m.exps[static_cast<std::size_t>(var)] == 0) continue;
        PolySpec::Mono dm = m;
        dm.coeff = m.coeff * m.exps[static_cast<std::size_t>(var)];
        dm.exps[static_cast<std::size_t>(var)] -= 1;
        if (dm.coeff != 0) g.monomials.push_back(std::move(dm));
    }
    return g;
}

// ---- budget bookkeeping shared across threads ----

struct BudgetGuard {
    std::atomic<std::int64_t> used{0};
    std::int64_t cap = 0;
    std::atomic<bool> blown{false};

    bool spend(std::int64_t amount) {
        if (blown.load(std::memory_order_relaxed)) return false;
        if (used.fetch_add(amount, std::memory_order_relaxed) + amount > cap) {
            blown.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }
    void rethrow() const {
        if (blown.load()) fail(errc::budget, "enumeration budget exceeded");
    }
};

// ---- Gaussian elimination over F_q ----
// Each row is [coefficients | rhs]. Returns the number of free unknowns,
// or -1 when the system is inconsistent.
std::int64_t gauss_free_dims(const Fq& F, std::vector<Window>& rows, std::size_t cols) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Word inv = F.inv(rows[rank][col]);
        for (std::size_t j = col; j <= cols; ++j) rows[rank][j] = F.mul(rows[rank][j], inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Word factor = rows[r][col];
            for (std::size_t j = col; j <= cols; ++j)
                rows[r][j] = F.sub(rows[r][j], F.mul(factor, rows[rank][j]));
        }
        ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (rows[r][cols] != 0) return -1;
    return static_cast<std::int64_t>(cols) - static_cast<std::int64_t>(rank);
}

// Coordinates of the base point that are enumerated (not pinned to zero).
std::vector<std::size_t> free_coords(const ArcCondition& cond) {
    std::vector<bool> zero(static_cast<std::size_t>(cond.d), false);
    for (auto i : cond.base_zero) zero[i] = true;
    std::vector<std::size_t> fr;
    for (std::size_t i = 0; i < static_cast<std::size_t>(cond.d); ++i)
        if (!zero[i]) fr.push_back(i);
    return fr;
}

bool advance_digits(std::vector<Word>& digits, std::int64_t q) {
    std::size_t i = 0;
    while (i < digits.size()) {
        if (++digits[i] < q) return true;
        digits[i] = 0;
        ++i;
    }
    return false;
}

// ---- general engine: level-by-level walk with order pruning ----
//
// A coefficient of t^k in f(arc) only involves arc levels <= k, so after
// assigning levels 0..k-1 all window entries below k are final. Contact
// targets are checked as they become final; orders are pruned with
// intervals (an order is either pinned by a nonzero final coefficient or
// lies between the current level and n+1).
struct GeneralEngine {
    const Fq& F;
    const std::vector<PolySpec>& ctx;
    const ArcCondition& cond;
    std::int64_t n;  // report level; windows hold n+1 coefficients
    BudgetGuard& budget;

    std::size_t W() const { return static_cast<std::size_t>(n) + 1; }

    struct Scratch {
        Jet jet;
        std::vector<Window> windows;
        Int count = 0;
    };

    std::int64_t exact_ord(const Window& w) const {
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k]) return static_cast<std::int64_t>(k);
        return n + 1;
    }

    // Order bounds when coefficients below `level` are final.
    std::pair<std::int64_t, std::int64_t> ord_range(const Window& w, std::int64_t level) const {
        for (std::int64_t k = 0; k < level && k <= n; ++k)
            if (w[static_cast<std::size_t>(k)]) return {k, k};
        if (level > n) return {n + 1, n + 1};
        return {level, n + 1};
    }

    bool prune(Scratch& s, std::int64_t level) const {
        if (cond.contact) {
            const Window& w = s.windows[cond.contact->poly];
            const std::int64_t R = cond.contact->order;
            for (std::int64_t j = 0; j < level && j <= std::min(R, n); ++j) {
                Word want = (j == R) ? Word(1) : Word(0);
                if (w[static_cast<std::size_t>(j)] != want) return true;
            }
        }
        for (const auto& o : cond.ord) {
            std::int64_t lo = 0, hi = 0;
            for (const auto& [grp, c] : o.terms) {
                std::int64_t glo = n + 2, ghi = n + 2;
                for (auto pi : grp) {
                    auto [l, h] = ord_range(s.windows[pi], level);
                    glo = std::min(glo, l);
                    ghi = std::min(ghi, h);
                }
                if (c > 0) {
                    lo += c * glo;
                    hi += c * ghi;
                } else {
                    lo += c * ghi;
                    hi += c * glo;
                }
            }
            switch (o.rel) {
                case ord_rel::eq:
                    if (o.bound < lo || o.bound > hi) return true;
                    break;
                case ord_rel::ge:
                    if (hi < o.bound) return true;
                    break;
                case ord_rel::gt:
                    if (hi <= o.bound) return true;
                    break;
            }
        }
        for (const auto& c : cond.cong) {
            auto [l, h] = ord_range(s.windows[c.poly], level);
            if (l == h && (((l - c.r) % c.mod) + c.mod) % c.mod != 0) return true;
        }
        return false;
    }

    bool leaf_ok(Scratch& s) const {
        for (const auto& o : cond.ord) {
            std::int64_t v = 0;
            for (const auto& [grp, c] : o.terms) {
                std::int64_t g = n + 2;
                for (auto pi : grp) g = std::min(g, exact_ord(s.windows[pi]));
                v += c * g;
            }
            bool ok = o.rel == ord_rel::eq   ? v == o.bound
                      : o.rel == ord_rel::ge ? v >= o.bound
                                             : v > o.bound;
            if (!ok) return false;
        }
        for (const auto& c : cond.cong) {
            std::int64_t v = exact_ord(s.windows[c.poly]);
            if ((((v - c.r) % c.mod) + c.mod) % c.mod != 0) return false;
        }
        return true;
    }

    void refresh(Scratch& s, std::int64_t levels) const {
        for (std::size_t i = 0; i < ctx.size(); ++i)
            s.windows[i] = eval_window(F, ctx[i], s.jet, W(), static_cast<std::size_t>(levels));
    }

    // Levels `level`..n, with levels below already assigned.
    void walk(Scratch& s, std::int64_t level) const {
        std::vector<Word> digits(static_cast<std::size_t>(cond.d), 0);
        do {
            for (std::size_t i = 0; i < static_cast<std::size_t>(cond.d); ++i)
                s.jet[i][static_cast<std::size_t>(level)] = digits[i];
            if (!budget.spend(1)) return;
            refresh(s, level + 1);
            if (!prune(s, level + 1)) {
                if (level == n) {
                    if (leaf_ok(s)) ++s.count;
                } else {
                    walk(s, level + 1);
                }
            }
            if (budget.blown.load(std::memory_order_relaxed)) return;
        } while (advance_digits(digits, F.q()));
        for (std::size_t i = 0; i < static_cast<std::size_t>(cond.d); ++i)
            s.jet[i][static_cast<std::size_t>(level)] = 0;
    }

    Int run() const {
        if (cond.contact)
            expect(n >= cond.contact->order, errc::input,
                   "window is shorter than the contact order");
        const auto fr = free_coords(cond);
        std::int64_t blocks = 1;
        for (std::size_t i = 0; i < fr.size(); ++i) {
            blocks *= F.q();
            expect(blocks <= (1 << 20), errc::budget, "level-zero block count too large");
        }
        std::vector<Int> partial(static_cast<std::size_t>(blocks));
#ifdef MZL_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (std::int64_t b = 0; b < blocks; ++b) {
            if (budget.blown.load(std::memory_order_relaxed)) continue;
            Scratch s;
            s.jet.assign(static_cast<std::size_t>(cond.d), Window(W(), 0));
            s.windows.assign(ctx.size(), Window(W(), 0));
            std::int64_t code = b;
            for (std::size_t i = 0; i < fr.size(); ++i) {
                s.jet[fr[i]][0] = static_cast<Word>(code % F.q());
                code /= F.q();
            }
            if (!budget.spend(1)) continue;
            refresh(s, 1);
            if (!prune(s, 1)) {
                if (n == 0) {
                    if (leaf_ok(s)) ++s.count;
                } else {
                    walk(s, 1);
                }
            }
            partial[static_cast<std::size_t>(b)] = s.count;
        }
        budget.rethrow();
        Int total = 0;
        for (const auto& c : partial) total += c;
        return total;
    }
};

// ---- fast engine for pure contact conditions ----
//
// For k >= 1 the t^k coefficient of f(arc) is affine in the level-k
// unknowns with linear part grad f(arc(0)). Over a base point with
// nonvanishing gradient every level therefore contributes exactly q^{d-1}
// solutions and the subtree count is closed-form. Gradient-zero branches
// are walked to K = floor(R/2): there the level-k coefficient does not
// involve the level-k unknowns at all, and beyond K the remaining
// coefficients are jointly affine in the remaining unknowns (two unknowns
// from levels > K multiply into t-degrees beyond R), so one linear solve
// finishes the branch.
struct FastEngine {
    const Fq& F;
    const PolySpec& f;
    const ArcCondition& cond;
    std::int64_t R;  // contact order
    std::int64_t n;  // report level, n >= R
    BudgetGuard& budget;
    std::vector<PolySpec> partials;

    FastEngine(const Fq& F_, const PolySpec& f_, const ArcCondition& c_, std::int64_t R_,
               std::int64_t n_, BudgetGuard& b_)
        : F(F_), f(f_), cond(c_), R(R_), n(n_), budget(b_) {
        for (std::int64_t i = 0; i < f.d; ++i) partials.push_back(derivative(f, i));
    }

    Word target(std::int64_t j) const { return j == R ? Word(1) : Word(0); }

    Int run() const {
        const auto fr = free_coords(cond);
        std::int64_t blocks = 1;
        for (std::size_t i = 0; i < fr.size(); ++i) {
            blocks *= F.q();
            expect(blocks <= (1 << 20), errc::budget, "level-zero block count too large");
        }
        const std::size_t d = static_cast<std::size_t>(f.d);
        const Int free_levels = ipow(Int(F.q()), static_cast<std::uint64_t>(f.d * (n - R)));
        std::vector<Int> partial(static_cast<std::size_t>(blocks));
#ifdef MZL_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
        for (std::int64_t b = 0; b < blocks; ++b) {
            if (budget.blown.load(std::memory_order_relaxed)) continue;
            if (!budget.spend(1)) continue;
            std::vector<Word> base(d, 0);
            std::int64_t code = b;
            for (std::size_t i = 0; i < fr.size(); ++i) {
                base[fr[i]] = static_cast<Word>(code % F.q());
                code /= F.q();
            }
            partial[static_cast<std::size_t>(b)] = count_base(base) * free_levels;
        }
        budget.rethrow();
        Int total = 0;
        for (const auto& c : partial) total += c;
        return total;
    }

    Int count_base(const std::vector<Word>& base) const {
        const std::size_t d = static_cast<std::size_t>(f.d);
        Jet jet(d, Window(static_cast<std::size_t>(R) + 1, 0));
        for (std::size_t i = 0; i < d; ++i) jet[i][0] = base[i];
        Window w0 = eval_window(F, f, jet, 1, 1);
        if (w0[0] != target(0)) return 0;
        if (R == 0) return 1;
        bool smooth = false;
        for (std::size_t i = 0; i < d && !smooth; ++i) {
            Window g = eval_window(F, partials[i], jet, 1, 1);
            if (g[0]) smooth = true;
        }
        if (smooth) return ipow(Int(F.q()), static_cast<std::uint64_t>((f.d - 1) * R));
        Int acc = 0;
        dfs(jet, 1, acc);
        return acc;
    }

    void dfs(Jet& jet, std::int64_t k, Int& acc) const {
        if (!budget.spend(1)) return;
        const std::int64_t K = R / 2;
        Window w =
            eval_window(F, f, jet, static_cast<std::size_t>(k) + 1, static_cast<std::size_t>(k));
        if (w[static_cast<std::size_t>(k)] != target(k)) return;
        if (k > K) {
            acc += tail_solutions(jet, k);
            return;
        }
        std::vector<Word> digits(static_cast<std::size_t>(f.d), 0);
        do {
            for (std::size_t i = 0; i < static_cast<std::size_t>(f.d); ++i)
                jet[i][static_cast<std::size_t>(k)] = digits[i];
            dfs(jet, k + 1, acc);
            if (budget.blown.load(std::memory_order_relaxed)) return;
        } while (advance_digits(digits, F.q()));
        for (std::size_t i = 0; i < static_cast<std::size_t>(f.d); ++i)
            jet[i][static_cast<std::size_t>(k)] = 0;
    }

    // Levels lo..R solved in one affine system; jet holds levels < lo.
    Int tail_solutions(const Jet& jet, std::int64_t lo) const {
        const std::size_t W = static_cast<std::size_t>(R) + 1;
        Window fw = eval_window(F, f, jet, W, static_cast<std::size_t>(lo));
        std::vector<Window> grad(static_cast<std::size_t>(f.d));
        const std::size_t gw = static_cast<std::size_t>(R - lo) + 1;
        for (std::size_t i = 0; i < static_cast<std::size_t>(f.d); ++i)
            grad[i] = eval_window(F, partials[i], jet, gw, static_cast<std::size_t>(lo));
        const std::int64_t levels = R - lo + 1;
        const std::size_t cols = static_cast<std::size_t>(levels * f.d);
        std::vector<Window> rows;
        for (std::int64_t j = lo; j <= R; ++j) {
            Window row(cols + 1, 0);
            for (std::int64_t k = lo; k <= j; ++k) {
                std::size_t off = static_cast<std::size_t>((k - lo) * f.d);
                for (std::size_t i = 0; i < static_cast<std::size_t>(f.d); ++i)
                    row[off + i] = grad[i][static_cast<std::size_t>(j - k)];
            }
            row[cols] = F.sub(target(j), fw[static_cast<std::size_t>(j)]);
            rows.push_back(std::move(row));
        }
        std::int64_t fd = gauss_free_dims(F, rows, cols);
        if (fd < 0) return 0;
        return ipow(Int(F.q()), static_cast<std::uint64_t>(fd));
    }
};

Int count_general(const std::vector<PolySpec>& ctx, const ArcCondition& cond, std::int64_t n,
                  const Fq& F, std::int64_t budget_cap) {
    BudgetGuard guard;
    guard.cap = budget_cap;
    GeneralEngine eng{F, ctx, cond, n, guard};
    return eng.run();
}

std::size_t distinct_base_zero(const ArcCondition& cond) {
    std::vector<bool> zero(static_cast<std::size_t>(cond.d), false);
    for (auto i : cond.base_zero) zero[i] = true;
    return static_cast<std::size_t>(std::count(zero.begin(), zero.end(), true));
}

}  // namespace

JetCountReport count_jets(const std::vector<PolySpec>& ctx, const ArcCondition& cond,
                          std::int64_t n, std::int64_t q, std::int64_t budget) {
    condition_validate(ctx, cond);
    expect(n >= 0, errc::input, "jet level must be nonnegative");
    if (budget < 0) budget = default_budget();
    Fq F(q);
    Int count;
    if (cond.ord.empty() && cond.cong.empty()) {
        if (cond.contact) {
            expect(n >= cond.contact->order, errc::input,
                   "window is shorter than the contact order");
            BudgetGuard guard;
            guard.cap = budget;
            FastEngine eng(F, ctx[cond.contact->poly], cond, cond.contact->order, n, guard);
            count = eng.run();
        } else {
            std::int64_t fixed = static_cast<std::int64_t>(distinct_base_zero(cond));
            count = ipow(Int(q), static_cast<std::uint64_t>((n + 1) * cond.d - fixed));
        }
    } else {
        count = count_general(ctx, cond, n, F, budget);
    }
    JetCountReport rep;
    rep.q = q;
    rep.n = n;
    rep.count = count;
    Int space = ipow(Int(q), static_cast<std::uint64_t>((n + 1) * cond.d));
    expect(count >= 0 && count <= space, errc::internal, "count escapes the jet space");
    rep.measure = Rat(count) / Rat(space);
    return rep;
}

Int count_jets_reference(const std::vector<PolySpec>& ctx, const ArcCondition& cond,
                         std::int64_t n, std::int64_t q, std::int64_t budget) {
    condition_validate(ctx, cond);
    expect(n >= 0, errc::input, "jet level must be nonnegative");
    if (budget < 0) budget = default_budget();
    Int space = ipow(Int(q), static_cast<std::uint64_t>((n + 1) * cond.d));
    expect(space <= budget, errc::budget, "enumeration budget exceeded");
    Fq F(q);
    const std::size_t W = static_cast<std::size_t>(n) + 1;
    const std::size_t d = static_cast<std::size_t>(cond.d);
    std::vector<bool> zero(d, false);
    for (auto i : cond.base_zero) zero[i] = true;

    Jet jet(d, Window(W, 0));
    std::vector<Word> digits(d * W, 0);
    Int count = 0;
    auto eord = [&](const Window& w) {
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k]) return static_cast<std::int64_t>(k);
        return n + 1;
    };
    do {
        bool skip = false;
        for (std::size_t i = 0; i < d && !skip; ++i)
            if (zero[i] && digits[i * W] != 0) skip = true;
        if (skip) continue;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < W; ++k) jet[i][k] = digits[i * W + k];
        std::vector<Window> ws(ctx.size());
        for (std::size_t i = 0; i < ctx.size(); ++i) ws[i] = eval_window(F, ctx[i], jet, W, W);
        bool ok = true;
        if (cond.contact) {
            const Window& w = ws[cond.contact->poly];
            for (std::int64_t j = 0; j <= std::min(n, cond.contact->order) && ok; ++j) {
                Word want = (j == cond.contact->order) ? Word(1) : Word(0);
                if (w[static_cast<std::size_t>(j)] != want) ok = false;
            }
        }
        for (const auto& o : cond.ord) {
            if (!ok) break;
            std::int64_t v = 0;
            for (const auto& [grp, c] : o.terms) {
                std::int64_t g = n + 2;
                for (auto pi : grp) g = std::min(g, eord(ws[pi]));
                v += c * g;
            }
            ok = o.rel == ord_rel::eq   ? v == o.bound
                 : o.rel == ord_rel::ge ? v >= o.bound
                                        : v > o.bound;
        }
        for (const auto& c : cond.cong) {
            if (!ok) break;
            std::int64_t v = eord(ws[c.poly]);
            ok = (((v - c.r) % c.mod) + c.mod) % c.mod == 0;
        }
        if (ok) ++count;
    } while (advance_digits(digits, q));
    return count;
}

IntegralReport jet_integral(const std::vector<PolySpec>& ctx, const ArcCondition& cond,
                            std::size_t weight, std::int64_t q, std::int64_t cap,
                            std::int64_t budget) {
    condition_validate(ctx, cond);
    expect(weight < ctx.size(), errc::input, "weight references a missing polynomial");
    expect(cap >= 0, errc::input, "cap must be nonnegative");
    IntegralReport rep;
    rep.cap = cap;
    rep.value = 0;
    const Int qd = ipow(Int(q), static_cast<std::uint64_t>(cond.d));
    for (std::int64_t n = 0; n <= cap; ++n) {
        ArcCondition fiber = cond;
        OrdLin w;
        w.terms.push_back({{weight}, 1});
        w.rel = ord_rel::eq;
        w.bound = n;
        fiber.ord.push_back(w);
        JetCountReport at = count_jets(ctx, fiber, n, q, budget);
        JetCountReport up = count_jets(ctx, fiber, n + 1, q, budget);
        expect(up.count == at.count * qd, errc::unsupported,
               "fiber is not stable at the probed level");
        rep.fibers.emplace_back(n, at.measure);
        rep.value += at.measure * rpow(Rat(q), -n);
    }
    // Each deeper fiber has measure at most one, so the remainder is
    // bounded by the geometric tail sum_{n > cap} q^{-n}.
    rep.tail = rpow(Rat(q), -cap) / Rat(q - 1);
    return rep;
}

StabilityReport stability_probe(const std::vector<PolySpec>& ctx, const ArcCondition& cond,
                                std::int64_t q, std::int64_t m0, std::int64_t m1) {
    condition_validate(ctx, cond);
    expect(0 <= m0 && m0 <= m1, errc::input, "bad probe range");
    Fq F(q);
    StabilityReport rep;
    for (std::int64_t m = m0; m <= m1; ++m)
        rep.counts.emplace_back(m, count_general(ctx, cond, m, F, default_budget()));
    const Int qd = ipow(Int(q), static_cast<std::uint64_t>(cond.d));
    for (std::size_t i = 0; i + 1 < rep.counts.size(); ++i) {
        if (rep.counts[i + 1].second != rep.counts[i].second * qd) {
            rep.stable = false;
            rep.first_failure = rep.counts[i].first;
            break;
        }
    }
    return rep;
}

CompareReport compare_zeta(const ResolutionData& r, const PolySpec& f, std::int64_t n_max,
                           std::int64_t q, const Specialization& spec, std::int64_t budget) {
    resolution_validate(r);
    poly_validate(f);
    expect(f.d == r.ambient_dim, errc::input,
           "arity of the function disagrees with the resolution");
    expect(n_max >= 1, errc::input, "comparison range must start at one");
    RationalSeries z = zeta_from_resolution(r, false);
    auto coeffs = rs_expand(z, n_max);
    CompareReport rep;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        GrothElement c;
        auto it = coeffs.find(MultiIndex{n});
        if (it != coeffs.end()) c = it->second;
        GrothElement scaled = pushforward_forget(c * GrothElement::L_power(n * f.d));
        Rat want = specialize_value(scaled, spec);
        ArcCondition cond;
        cond.d = f.d;
        cond.contact = ArcCondition::Contact{0, n};
        JetCountReport got = count_jets({f}, cond, n, q, budget);
        CompareRow row;
        row.n = n;
        row.from_series = want;
        row.from_arcs = got.count;
        row.match = (want == Rat(got.count));
        rep.all_match = rep.all_match && row.match;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace mzl
