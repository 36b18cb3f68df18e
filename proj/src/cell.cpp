#include "mzl/cell.hpp"

#include <algorithm>
#include <cstdint>

#include "mzl/error.hpp"

namespace mzl {

Int form_eval(const LinearForm& f, const IVec& x) {
    expect(f.coeffs.size() == x.size(), errc::input, "form length mismatch");
    Int s = f.constant;
    for (std::size_t i = 0; i < x.size(); ++i) s += Int(f.coeffs[i]) * x[i];
    return s;
}

void cell_validate(const Cell& c) {
    expect(c.dim >= 1, errc::input, "cell needs a positive dimension");
    auto chk = [&](const LinearForm& f) {
        expect(f.coeffs.size() == c.dim, errc::input, "form length mismatch");
    };
    for (const auto& f : c.eq) chk(f);
    for (const auto& f : c.ge) chk(f);
    for (const auto& g : c.cong) {
        chk(g.form);
        expect(g.d >= 1, errc::input, "congruence modulus must be positive");
        expect(g.r >= 0 && g.r < g.d, errc::input, "congruence residue out of range");
    }
}

namespace {

// ----- double description ---------------------------------------------------

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= (std::uint64_t(1) << (i % 64)); }

bool bits_subset(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

Bits bits_and(const Bits& a, const Bits& b) {
    Bits r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
    return r;
}

// Extreme rays of {y : rows . y >= 0}, which must be pointed.
IMat dd_rays(const IMat& rows, std::size_t d) {
    // greedily pick d rows of full rank for the initial simplicial cone
    std::vector<std::size_t> used;
    {
        IMat work;
        for (std::size_t i = 0; i < rows.size() && used.size() < d; ++i) {
            work.push_back(rows[i]);
            if (irank(work) == used.size() + 1)
                used.push_back(i);
            else
                work.pop_back();
        }
        expect(used.size() == d, errc::input, "cone is not pointed");
    }
    IMat M;
    for (auto i : used) M.push_back(rows[i]);
    Int D = det(M);
    IMat adj = adjugate(M);
    bool flip = D < 0;

    struct Ray {
        IVec v;
        Bits zero;
    };
    std::size_t nwords = (rows.size() + 63) / 64;
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < d; ++j) {
        IVec v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = flip ? -adj[i][j] : adj[i][j];
        rays.push_back(Ray{primitive(std::move(v)), Bits(nwords, 0)});
    }

    std::vector<std::size_t> order = used;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (std::find(used.begin(), used.end(), i) == used.end()) order.push_back(i);

    for (std::size_t k = 0; k < d; ++k)
        for (auto& r : rays)
            if (idot(rows[order[k]], r.v) == 0) set_bit(r.zero, k);

    for (std::size_t k = d; k < order.size(); ++k) {
        const IVec& h = rows[order[k]];
        std::vector<Int> val;
        val.reserve(rays.size());
        for (const auto& r : rays) val.push_back(idot(h, r.v));

        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i] < 0) continue;
            Ray r = rays[i];
            if (val[i] == 0) set_bit(r.zero, k);
            next.push_back(std::move(r));
        }
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (val[p] <= 0) continue;
            for (std::size_t n = 0; n < rays.size(); ++n) {
                if (val[n] >= 0) continue;
                Bits common = bits_and(rays[p].zero, rays[n].zero);
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o)
                    if (o != p && o != n && bits_subset(common, rays[o].zero))
                        adjacent = false;
                if (!adjacent) continue;
                IVec v(d);
                for (std::size_t i = 0; i < d; ++i)
                    v[i] = val[p] * rays[n].v[i] - val[n] * rays[p].v[i];
                Ray nr{primitive(std::move(v)), std::move(common)};
                set_bit(nr.zero, k);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
    }

    IMat out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ----- triangulation --------------------------------------------------------

// Simplicial generator subsets covering cone(rays), built by coning the
// first ray over the facets that do not contain it.
std::vector<std::vector<std::size_t>> triangulate(const IMat& rays) {
    std::size_t k = irank(rays);
    if (rays.size() == k) {
        std::vector<std::size_t> all(rays.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return {all};
    }
    IMat sat = saturation_basis(rays, rays[0].size());
    IMat coords;
    for (const auto& r : rays) {
        IVec c;
        expect(lattice_coords(sat, r, c), errc::internal, "ray outside saturation");
        coords.push_back(std::move(c));
    }
    IMat normals = dd_rays(coords, k);  // polar cone: facet normals
    std::vector<std::vector<std::size_t>> out;
    for (const auto& h : normals) {
        std::vector<std::size_t> facet;
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (idot(coords[i], h) == 0) facet.push_back(i);
        if (std::find(facet.begin(), facet.end(), 0u) != facet.end()) continue;
        IMat sub;
        for (auto i : facet) sub.push_back(rays[i]);
        for (const auto& simp : triangulate(sub)) {
            std::vector<std::size_t> mapped{0};
            for (auto local : simp) mapped.push_back(facet[local]);
            std::sort(mapped.begin(), mapped.end());
            out.push_back(std::move(mapped));
        }
    }
    return out;
}

// ----- half-open simplicial decomposition of a pointed cone ------------------

struct HomPiece {
    IMat gens;     // subset of the input rays
    IMat ppoints;  // fundamental-domain lattice points
};

std::vector<HomPiece> decompose_cone(const IMat& rays, std::size_t dim) {
    if (rays.empty()) return {};
    std::size_t k = irank(rays);
    IMat sat = saturation_basis(rays, dim);
    IMat coords;
    for (const auto& r : rays) {
        IVec c;
        expect(lattice_coords(sat, r, c), errc::internal, "ray outside saturation");
        coords.push_back(std::move(c));
    }
    auto tris = triangulate(rays);

    struct Simp {
        std::vector<std::size_t> idx;
        IMat M;    // columns = generator coords
        IMat adj;  // adjugate of M
        Int D;     // det of M
        IMat h;    // oriented facet normals: h[i] . g[j] = |D| delta_ij
    };
    std::vector<Simp> simps;
    for (auto& t : tris) {
        Simp s;
        s.idx = t;
        s.M.assign(k, IVec(k));
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t r = 0; r < k; ++r) s.M[r][c] = coords[t[c]][r];
        s.D = det(s.M);
        expect(s.D != 0, errc::internal, "degenerate simplicial cone");
        s.adj = adjugate(s.M);
        s.h = s.adj;
        if (s.D < 0)
            for (auto& row : s.h)
                for (auto& x : row) x = -x;
        simps.push_back(std::move(s));
    }

    // deterministic generic interior point: sum of t^i * ray_i for the first
    // t avoiding every facet hyperplane
    IVec xi;
    for (Int t = 1;; ++t) {
        expect(t <= 100000, errc::internal, "no generic interior vector found");
        IVec cand(k, Int(0));
        Int w = 1;
        for (const auto& c : coords) {
            for (std::size_t i = 0; i < k; ++i) cand[i] += w * c[i];
            w *= t;
        }
        bool good = true;
        for (const auto& s : simps)
            for (const auto& row : s.h)
                if (idot(row, cand) == 0) good = false;
        if (good) {
            xi = std::move(cand);
            break;
        }
    }

    std::vector<HomPiece> out;
    for (const auto& s : simps) {
        std::vector<bool> open(k);
        for (std::size_t i = 0; i < k; ++i) open[i] = idot(s.h[i], xi) < 0;

        IMat H = hermite_lower(s.M);
        // odometer over the transversal box 0 <= y_i < H[i][i]
        IVec y0(k, Int(0));
        IMat ppoints;
        for (;;) {
            // representative of y0's residue class in the half-open domain
            IVec num(k, Int(0));  // mu = num / D
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) num[i] += s.adj[i][j] * y0[j];
            IVec shift(k);
            for (std::size_t i = 0; i < k; ++i)
                shift[i] = open[i] ? ceil_div(num[i], s.D) - 1 : floor_div(num[i], s.D);
            IVec y = y0;
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < k; ++c) y[r] -= s.M[r][c] * shift[c];
            // back to ambient coordinates
            IVec p(dim, Int(0));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < dim; ++j) p[j] += y[i] * sat[i][j];
            ppoints.push_back(std::move(p));

            std::size_t c = 0;
            while (c < k) {
                if (++y0[c] < H[c][c]) break;
                y0[c] = 0;
                ++c;
            }
            if (c == k) break;
        }
        std::sort(ppoints.begin(), ppoints.end());

        IMat gens;
        for (auto i : s.idx) gens.push_back(rays[i]);
        out.push_back(HomPiece{std::move(gens), std::move(ppoints)});
    }
    return out;
}

std::int64_t checked_i64(const Int& v) {
    try {
        return to_i64(v);
    } catch (const std::overflow_error&) {
        fail(errc::internal, "lattice value exceeds 64-bit range");
    }
}

}  // namespace

// ----- cell pipeline ---------------------------------------------------------

std::vector<HalfOpenPiece> cell_decompose(const Cell& c) {
    cell_validate(c);
    std::size_t N = c.dim, K = c.cong.size();

    // integer points satisfying equalities and congruences form an affine
    // lattice x0 + Z-span(pi), found by solving over (x, slack)
    IMat A;
    IVec b;
    for (const auto& f : c.eq) {
        IVec row(N + K, Int(0));
        for (std::size_t i = 0; i < N; ++i) row[i] = f.coeffs[i];
        A.push_back(std::move(row));
        b.push_back(Int(-f.constant));
    }
    for (std::size_t j = 0; j < K; ++j) {
        const auto& g = c.cong[j];
        IVec row(N + K, Int(0));
        for (std::size_t i = 0; i < N; ++i) row[i] = g.form.coeffs[i];
        row[N + j] = -g.d;
        A.push_back(std::move(row));
        b.push_back(Int(g.r - g.form.constant));
    }
    IntSolve sol = solve_integer(A, b, N + K);
    if (!sol.feasible) return {};
    IVec x0(sol.x0.begin(), sol.x0.begin() + N);
    IMat pi;
    for (const auto& kv : sol.kernel) pi.push_back(IVec(kv.begin(), kv.begin() + N));
    std::size_t m = pi.size();

    // homogenized inequality system over (t, lambda)
    std::size_t d = m + 1;
    IMat rows;
    auto add_ineq = [&](const IVec& coeffs, const Int& cst) {
        IVec row(d, Int(0));
        for (std::size_t a = 0; a < m; ++a) row[a] = idot(coeffs, pi[a]);
        row[m] = idot(coeffs, x0) + cst;
        rows.push_back(std::move(row));
    };
    for (const auto& f : c.ge) {
        IVec coeffs(f.coeffs.begin(), f.coeffs.end());
        add_ineq(coeffs, Int(f.constant));
    }
    for (std::size_t i = 0; i < N; ++i) {
        IVec e(N, Int(0));
        e[i] = 1;
        add_ineq(e, Int(0));
    }
    {
        IVec lam(d, Int(0));
        lam[m] = 1;
        rows.push_back(std::move(lam));
    }

    IMat rays = dd_rays(rows, d);
    if (rays.empty()) return {};
    auto hom = decompose_cone(rays, d);

    std::vector<HalfOpenPiece> out;
    auto to_x = [&](const IVec& t) {
        IVec x = x0;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t i = 0; i < N; ++i) x[i] += t[a] * pi[a][i];
        return x;
    };
    auto dir_x = [&](const IVec& t) {
        IVec x(N, Int(0));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t i = 0; i < N; ++i) x[i] += t[a] * pi[a][i];
        return x;
    };

    for (const auto& hp : hom) {
        IMat level0, level1;
        for (const auto& g : hp.gens) {
            if (g[m] == 0)
                level0.push_back(g);
            else if (g[m] == 1)
                level1.push_back(g);
        }
        IMat gens_x;
        for (const auto& g : level0) {
            IVec gx = dir_x(g);
            for (const auto& e : gx)
                expect(e >= 0, errc::internal, "recession direction leaves the orthant");
            gens_x.push_back(std::move(gx));
        }
        for (const auto& p : hp.ppoints) {
            std::vector<IVec> shifts;
            if (p[m] == 1) {
                shifts.push_back(p);
            } else if (p[m] == 0) {
                for (const auto& g : level1) {
                    IVec s = p;
                    for (std::size_t i = 0; i < d; ++i) s[i] += g[i];
                    shifts.push_back(std::move(s));
                }
            }
            for (const auto& sh : shifts) {
                IVec v = to_x(sh);
                for (const auto& e : v)
                    expect(e >= 0, errc::internal, "piece shift leaves the orthant");
                out.push_back(HalfOpenPiece{std::move(v), gens_x,
                                            IMat{IVec(N, Int(0))}, {}});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const HalfOpenPiece& a, const HalfOpenPiece& b) {
        return std::tie(a.shift, a.gens) < std::tie(b.shift, b.gens);
    });
    return out;
}

RationalSeries cell_gf(const Cell& c) {
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= c.dim; ++i) vars.push_back("x" + std::to_string(i));
    RationalSeries out(vars);
    for (const auto& piece : cell_decompose(c)) {
        std::vector<GeomFactor> den;
        for (const auto& g : piece.gens) {
            MultiIndex b(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) b[i] = checked_i64(g[i]);
            den.push_back(GeomFactor{0, std::move(b)});
        }
        for (const auto& p : piece.ppoints) {
            MultiIndex b0(c.dim);
            for (std::size_t i = 0; i < c.dim; ++i)
                b0[i] = checked_i64(piece.shift[i] + p[i]);
            out.add_term(GrothElement(1), 0, std::move(b0), den);
        }
    }
    return out;
}

RationalSeries gf_specialize(const RationalSeries& g, const std::vector<LinearForm>& ell,
                             const LinearForm& eps, std::vector<std::string> tvars) {
    std::size_t N = g.arity(), r = ell.size();
    expect(r >= 1, errc::input, "specialization needs an output variable");
    expect(tvars.size() == r, errc::input, "output variable count mismatch");
    for (const auto& f : ell)
        expect(f.coeffs.size() == N, errc::input, "form length mismatch");
    expect(eps.coeffs.size() == N, errc::input, "form length mismatch");

    auto lin = [&](const LinearForm& f, const MultiIndex& v) {
        Int s = 0;
        for (std::size_t i = 0; i < N; ++i) s += Int(f.coeffs[i]) * v[i];
        return s;
    };
    auto map_point = [&](const MultiIndex& v, bool affine) {
        std::pair<std::int64_t, MultiIndex> out{0, MultiIndex(r)};
        Int total = 0;
        for (std::size_t t = 0; t < r; ++t) {
            Int e = lin(ell[t], v) + (affine ? ell[t].constant : 0);
            expect(e >= 0, errc::input, "specialization gives a negative exponent");
            total += e;
            out.second[t] = checked_i64(e);
        }
        Int a = -(lin(eps, v) + (affine ? eps.constant : 0));
        out.first = checked_i64(a);
        bool zero = std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
        if (!zero)
            expect(total > 0, errc::input,
                   affine ? "specialization has zero T-degree on a supported point"
                          : "specialization has zero T-degree on a generator");
        return out;
    };

    RationalSeries out(std::move(tvars));
    for (const auto& t : g.terms()) {
        auto [a0, b0] = map_point(t.b0, true);
        std::vector<GeomFactor> den;
        for (const auto& f : t.den) {
            auto [a, b] = map_point(f.b, false);
            den.push_back(GeomFactor{a, std::move(b)});
        }
        out.add_term(t.coeff, a0 + t.a0, std::move(b0), std::move(den));
    }
    for (const auto& [m, c] : g.poly_part()) {
        auto [a, b] = map_point(m, true);
        out.add_poly(std::move(b), c * GrothElement::L_power(a));
    }
    return out;
}

std::vector<std::vector<std::int64_t>> cell_enumerate(const Cell& c, std::int64_t bound) {
    cell_validate(c);
    expect(bound >= 0, errc::input, "negative enumeration bound");
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> x(c.dim, 0);
    IVec xi(c.dim, Int(0));
    auto ok = [&] {
        for (const auto& f : c.eq)
            if (form_eval(f, xi) != 0) return false;
        for (const auto& f : c.ge)
            if (form_eval(f, xi) < 0) return false;
        for (const auto& g : c.cong) {
            Int v = form_eval(g.form, xi) - g.r;
            if (v % g.d != 0) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
        if (i == c.dim) {
            if (ok()) out.push_back(x);
            return;
        }
        for (std::int64_t v = 0; v <= left; ++v) {
            x[i] = v;
            xi[i] = v;
            self(self, i + 1, left - v);
        }
        x[i] = 0;
        xi[i] = 0;
    };
    rec(rec, 0, bound);
    return out;
}

}  // namespace mzl
