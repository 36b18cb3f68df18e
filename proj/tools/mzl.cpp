// mzl: command line front end for the motivic zeta library.
//
// Verbs are grouped by domain: ring, series, cone, zeta, jets, identity.
// Every verb reads fixture files (JSON or the text grammar, sniffed by the
// loader), writes one deterministic report to stdout, and exits with
//   0  success
//   1  a verified comparison failed
//   2  malformed input, usage error, or any other failure
// --json switches every report to a JSON object with a "kind" field.
// The dispatcher itself is single threaded; --threads only sizes the
// OpenMP pool used by the jet counter.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "mzl/cell.hpp"
#include "mzl/error.hpp"
#include "mzl/groth.hpp"
#include "mzl/identity.hpp"
#include "mzl/io.hpp"
#include "mzl/jets.hpp"
#include "mzl/resolution.hpp"
#include "mzl/series.hpp"

#ifdef MZL_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

using nlohmann::json;
using namespace mzl;

struct OutputOptions {
    bool json_out = false;
    std::int64_t expand_order = -1;
};

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string monomial_label(const std::vector<std::string>& vars, const MultiIndex& m) {
    std::string out;
    for (std::size_t i = 0; i < vars.size() && i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += vars[i];
        if (m[i] != 1) out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

void emit_groth(const GrothElement& e, const OutputOptions& opt) {
    if (opt.json_out)
        std::cout << io::render_json(e);
    else
        std::cout << io::render_text(e) << "\n";
}

void emit_series(const RationalSeries& s, const OutputOptions& opt) {
    if (opt.json_out && opt.expand_order < 0) {
        std::cout << io::render_json(s);
        return;
    }
    if (opt.json_out) {
        json terms = json::array();
        for (const auto& [m, c] : rs_expand(s, opt.expand_order))
            terms.push_back({{"degrees", m}, {"coeff", io::render_text(c)}});
        print_json({{"kind", "expansion"}, {"order", opt.expand_order}, {"terms", terms}});
        return;
    }
    std::cout << io::render_text(s);
    if (opt.expand_order >= 0)
        for (const auto& [m, c] : rs_expand(s, opt.expand_order))
            std::cout << monomial_label(s.vars(), m) << ": " << io::render_text(c) << "\n";
}

// jets verbs share the context, the field size, and the thread knob
struct JetArgs {
    std::vector<std::string> polys;
    std::string cond_file;
    std::int64_t q = 0;
    std::int64_t budget = -1;
    std::int64_t threads = 0;

    std::vector<PolySpec> context() const {
        std::vector<PolySpec> ctx;
        for (const auto& p : polys) ctx.push_back(io::load_poly(p));
        expect(!ctx.empty(), errc::input, "at least one --poly is required");
        return ctx;
    }

    // the condition file wins; otherwise fall back to the caller's default
    ArcCondition condition(const std::vector<PolySpec>& ctx, ArcCondition fallback) const {
        if (!cond_file.empty()) return io::load_condition(cond_file);
        fallback.d = ctx.front().d;
        return fallback;
    }

    void apply_threads() const {
#ifdef MZL_HAVE_OPENMP
        if (threads > 0) omp_set_num_threads(static_cast<int>(threads));
#endif
    }
};

int run(CLI::App& app, int argc, char** argv) {
    OutputOptions out;
    int exit_code = 0;

    app.fallthrough();
    app.require_subcommand(1);
    app.add_flag("--json", out.json_out, "emit reports as JSON objects");
    app.add_option("--expand-order", out.expand_order,
                   "append exact coefficients up to this total degree to series output");

    // ---- ring ------------------------------------------------------------
    auto* ring = app.add_subcommand("ring", "evaluate and multiply ring elements");
    ring->fallthrough();
    ring->require_subcommand(1);
    {
        auto* eval = ring->add_subcommand("eval", "parse a ring element, print it canonically");
        auto file = std::make_shared<std::string>();
        eval->add_option("file", *file, "ring element (JSON or text)")->required();
        eval->callback([&out, file] { emit_groth(io::load_groth(*file), out); });

        auto* mul = ring->add_subcommand("mul", "multiply two ring elements");
        auto files = std::make_shared<std::pair<std::string, std::string>>();
        mul->add_option("a", files->first, "left factor")->required();
        mul->add_option("b", files->second, "right factor")->required();
        mul->callback([&out, files] {
            emit_groth(io::load_groth(files->first) * io::load_groth(files->second), out);
        });
    }

    // ---- series ----------------------------------------------------------
    auto* series = app.add_subcommand("series", "rational series operations");
    series->fallthrough();
    series->require_subcommand(1);
    {
        auto* expand = series->add_subcommand("expand", "parse a series, print it canonically");
        auto file = std::make_shared<std::string>();
        expand->add_option("file", *file, "series (JSON or text)")->required();
        expand->callback([&out, file] { emit_series(io::load_series(*file), out); });

        auto* limit = series->add_subcommand("limit", "value at T -> infinity");
        auto lfile = std::make_shared<std::string>();
        limit->add_option("file", *lfile, "series (JSON or text)")->required();
        limit->callback([&out, lfile] { emit_groth(rs_limit(io::load_series(*lfile)), out); });

        auto* had = series->add_subcommand("hadamard", "coefficientwise product");
        auto hfiles = std::make_shared<std::pair<std::string, std::string>>();
        had->add_option("a", hfiles->first, "left series")->required();
        had->add_option("b", hfiles->second, "right series")->required();
        had->callback([&out, hfiles] {
            emit_series(rs_hadamard(io::load_series(hfiles->first), io::load_series(hfiles->second)),
                        out);
        });

        auto* eq = series->add_subcommand("eq", "exact equality of two series");
        auto efiles = std::make_shared<std::pair<std::string, std::string>>();
        eq->add_option("a", efiles->first, "left series")->required();
        eq->add_option("b", efiles->second, "right series")->required();
        eq->callback([&out, efiles, &exit_code] {
            bool equal = rs_eq(io::load_series(efiles->first), io::load_series(efiles->second));
            if (out.json_out)
                print_json({{"kind", "verdict"}, {"ok", equal}});
            else
                std::cout << (equal ? "EQUAL" : "DIFFER") << "\n";
            if (!equal) exit_code = 1;
        });

        auto* subst = series->add_subcommand("subst", "substitute monomials for variables");
        auto sfiles = std::make_shared<std::pair<std::string, std::string>>();
        subst->add_option("file", sfiles->first, "series (JSON or text)")->required();
        subst->add_option("map", sfiles->second, "substitution map (kind subst-map)")->required();
        subst->callback([&out, sfiles] {
            emit_series(rs_substitute(io::load_series(sfiles->first), io::load_subst(sfiles->second)),
                        out);
        });
    }

    // ---- cone ------------------------------------------------------------
    auto* cone = app.add_subcommand("cone", "lattice point sets of cells");
    cone->fallthrough();
    cone->require_subcommand(1);
    {
        auto* gf = cone->add_subcommand("gf", "generating function of a cell");
        auto file = std::make_shared<std::string>();
        gf->add_option("cell", *file, "cell (kind cell)")->required();
        gf->callback([&out, file] { emit_series(cell_gf(io::load_cell(*file)), out); });

        auto* en = cone->add_subcommand("enumerate", "list points with coordinate sum <= bound");
        auto args = std::make_shared<std::pair<std::string, std::int64_t>>();
        en->add_option("cell", args->first, "cell (kind cell)")->required();
        en->add_option("--bound", args->second, "coordinate sum bound")->required();
        en->callback([&out, args] {
            auto pts = cell_enumerate(io::load_cell(args->first), args->second);
            if (out.json_out) {
                print_json({{"kind", "points"}, {"bound", args->second}, {"points", pts}});
                return;
            }
            for (const auto& p : pts) {
                std::string line;
                for (auto v : p) line += (line.empty() ? "" : " ") + std::to_string(v);
                std::cout << line << "\n";
            }
            std::cout << "total " << pts.size() << "\n";
        });
    }

    // ---- zeta ------------------------------------------------------------
    auto* zeta = app.add_subcommand("zeta", "contact order series of resolutions");
    zeta->fallthrough();
    struct ZetaArgs {
        std::string res_file, var = "T";
        bool local = false, nearby = false;
    };
    auto zargs = std::make_shared<ZetaArgs>();
    // flag form, kept alongside the spelled out verbs below:
    //   mzl zeta --resolution FILE [--nearby] [--local]
    zeta->add_option("--resolution", zargs->res_file, "resolution (kind resolution)");
    zeta->add_flag("--nearby", zargs->nearby, "print the limit class instead of the series");
    zeta->add_flag("--local", zargs->local, "restrict to strata over the base point");
    zeta->add_option("--var", zargs->var, "series variable name");
    auto emit_zeta = [&out, zargs](const std::string& path) {
        RationalSeries z =
            zeta_from_resolution(io::load_resolution(path), zargs->local, zargs->var);
        if (zargs->nearby) {
            if (out.json_out)
                emit_groth(nearby_cycles(z), out);
            else
                std::cout << "nearby = " << io::render_text(nearby_cycles(z)) << "\n";
        } else {
            emit_series(z, out);
        }
    };
    zeta->callback([zargs, zeta, emit_zeta] {
        if (zeta->get_subcommands().empty()) {
            expect(!zargs->res_file.empty(), errc::input,
                   "zeta needs --resolution FILE or a subcommand");
            emit_zeta(zargs->res_file);
        }
    });
    {
        auto* fromres = zeta->add_subcommand("from-resolution", "series of a resolution");
        auto file = std::make_shared<std::string>();
        fromres->add_option("file", *file, "resolution (kind resolution)")->required();
        fromres->callback([file, emit_zeta] { emit_zeta(*file); });

        auto* multi = zeta->add_subcommand("multi", "multivariable series of a resolution");
        struct MultiArgs {
            std::string res, theta;
            std::int64_t rvars = -1;
        };
        auto margs = std::make_shared<MultiArgs>();
        multi->add_option("file", margs->res, "resolution (kind multi-resolution)")->required();
        multi->add_option("--theta", margs->theta, "weight cell over (beta, alpha)");
        multi->add_option("--rvars", margs->rvars, "number of alpha variables (default nfuncs)");
        multi->callback([&out, margs] {
            MultiResolutionData r = io::load_multi_resolution(margs->res);
            std::size_t rv = margs->rvars >= 0 ? static_cast<std::size_t>(margs->rvars)
                                               : r.divisors.empty() ? 0
                                                                    : r.divisors[0].Nfi.size();
            Cell theta;
            if (!margs->theta.empty())
                theta = io::load_cell(margs->theta);
            else
                theta.dim = static_cast<std::int64_t>(r.divisors.empty() ? 0 : r.divisors[0].Nfi.size() + rv);
            emit_series(zeta_multi(r, theta, rv), out);
        });

        auto* nearby = zeta->add_subcommand("nearby", "limit class of the local series");
        auto nfile = std::make_shared<std::string>();
        nearby->add_option("file", *nfile, "resolution (kind resolution)")->required();
        nearby->callback([&out, nfile, zargs] {
            GrothElement c =
                nearby_cycles(zeta_from_resolution(io::load_resolution(*nfile), zargs->local, zargs->var));
            if (out.json_out)
                emit_groth(c, out);
            else
                std::cout << "nearby = " << io::render_text(c) << "\n";
        });
    }

    // ---- jets ------------------------------------------------------------
    auto* jets = app.add_subcommand("jets", "finite field jet counting oracle");
    jets->fallthrough();
    jets->require_subcommand(1);
    auto jargs = std::make_shared<JetArgs>();
    jets->add_option("--poly", jargs->polys, "context polynomial (repeatable)");
    jets->add_option("--cond", jargs->cond_file, "arc condition (kind condition)");
    jets->add_option("-q,--q", jargs->q, "field size (prime power, used as a prime here)");
    jets->add_option("--budget", jargs->budget, "node budget (default MZL_BUDGET or built-in)");
    jets->add_option("--threads", jargs->threads, "OpenMP threads for the counter");
    {
        auto* count = jets->add_subcommand("count", "count level-n jets under a condition");
        auto n = std::make_shared<std::int64_t>(0);
        count->add_option("-n,--level", *n, "jet level")->required();
        count->callback([&out, jargs, n] {
            expect(jargs->q >= 2, errc::input, "-q is required and must be at least 2");
            auto ctx = jargs->context();
            ArcCondition fallback;
            fallback.contact = ArcCondition::Contact{0, *n};
            ArcCondition cond = jargs->condition(ctx, fallback);
            jargs->apply_threads();
            JetCountReport rep = count_jets(ctx, cond, *n, jargs->q, jargs->budget);
            if (out.json_out) {
                print_json({{"kind", "jet-count"},
                            {"q", rep.q},
                            {"n", rep.n},
                            {"count", rep.count.str()},
                            {"measure", rep.measure.str()}});
            } else {
                std::cout << "count=" << rep.count.str() << "\n";
                std::cout << "measure=" << rep.measure.str() << "\n";
            }
        });

        auto* integral = jets->add_subcommand("integral", "sum of q^-ord over arcs, capped");
        struct IntArgs {
            std::int64_t weight = 0, cap = 0;
        };
        auto iargs = std::make_shared<IntArgs>();
        integral->add_option("--weight", iargs->weight, "index of the weight polynomial");
        integral->add_option("--cap", iargs->cap, "largest order summed exactly")->required();
        integral->callback([&out, jargs, iargs] {
            expect(jargs->q >= 2, errc::input, "-q is required and must be at least 2");
            auto ctx = jargs->context();
            ArcCondition cond = jargs->condition(ctx, ArcCondition{});
            jargs->apply_threads();
            IntegralReport rep = jet_integral(ctx, cond, static_cast<std::size_t>(iargs->weight),
                                              jargs->q, iargs->cap, jargs->budget);
            if (out.json_out) {
                json fibers = json::array();
                for (const auto& [ord, mu] : rep.fibers)
                    fibers.push_back({{"ord", ord}, {"measure", mu.str()}});
                print_json({{"kind", "jet-integral"},
                            {"q", jargs->q},
                            {"cap", rep.cap},
                            {"weight", iargs->weight},
                            {"value", rep.value.str()},
                            {"tail", rep.tail.str()},
                            {"fibers", fibers}});
            } else {
                for (const auto& [ord, mu] : rep.fibers)
                    std::cout << "ord " << ord << ": " << mu.str() << "\n";
                std::cout << "value = " << rep.value.str() << "\n";
                std::cout << "tail <= " << rep.tail.str() << "\n";
            }
        });

        auto* stab = jets->add_subcommand("stability", "check count ratios across levels");
        struct StabArgs {
            std::int64_t m0 = 0, m1 = 0;
        };
        auto sargs = std::make_shared<StabArgs>();
        stab->add_option("--m0", sargs->m0, "first level");
        stab->add_option("--m1", sargs->m1, "last level")->required();
        stab->callback([&out, jargs, sargs] {
            expect(jargs->q >= 2, errc::input, "-q is required and must be at least 2");
            auto ctx = jargs->context();
            ArcCondition fallback;
            fallback.contact = ArcCondition::Contact{0, 1};
            ArcCondition cond = jargs->condition(ctx, fallback);
            jargs->apply_threads();
            StabilityReport rep = stability_probe(ctx, cond, jargs->q, sargs->m0, sargs->m1);
            if (out.json_out) {
                json counts = json::array();
                for (const auto& [level, c] : rep.counts)
                    counts.push_back({{"level", level}, {"count", c.str()}});
                print_json({{"kind", "stability"},
                            {"q", jargs->q},
                            {"counts", counts},
                            {"stable", rep.stable},
                            {"first_failure", rep.first_failure}});
            } else {
                for (const auto& [level, c] : rep.counts)
                    std::cout << "level " << level << ": " << c.str() << "\n";
                if (rep.stable)
                    std::cout << "STABLE\n";
                else
                    std::cout << "UNSTABLE at level " << rep.first_failure << "\n";
            }
        });

        auto* compare = jets->add_subcommand("compare", "series coefficients against jet counts");
        struct CmpArgs {
            std::string res, spec;
            std::int64_t n_max = 0;
        };
        auto cargs = std::make_shared<CmpArgs>();
        compare->add_option("--resolution", cargs->res, "resolution (kind resolution)")->required();
        compare->add_option("-n,--level", cargs->n_max, "largest contact order checked")->required();
        compare->add_option("--spec", cargs->spec, "specialization (kind specialization)");
        compare->callback([&out, jargs, cargs, &exit_code] {
            expect(jargs->q >= 2, errc::input, "-q is required and must be at least 2");
            auto ctx = jargs->context();
            expect(ctx.size() == 1, errc::input, "compare takes exactly one --poly");
            Specialization spec;
            if (!cargs->spec.empty()) spec = io::load_specialization(cargs->spec);
            if (!spec.q) spec.q = jargs->q;
            expect(spec.q && *spec.q == jargs->q, errc::input,
                   "--spec and -q disagree about the field size");
            jargs->apply_threads();
            CompareReport rep = compare_zeta(io::load_resolution(cargs->res), ctx[0], cargs->n_max,
                                             jargs->q, spec, jargs->budget);
            if (out.json_out) {
                json rows = json::array();
                for (const auto& r : rep.rows)
                    rows.push_back({{"n", r.n},
                                    {"series", r.from_series.str()},
                                    {"arcs", r.from_arcs.str()},
                                    {"match", r.match}});
                print_json({{"kind", "compare"},
                            {"q", jargs->q},
                            {"rows", rows},
                            {"all_match", rep.all_match}});
            } else {
                for (const auto& r : rep.rows)
                    std::cout << "n=" << r.n << ": series=" << r.from_series.str()
                              << " arcs=" << r.from_arcs.str() << (r.match ? " ok" : " MISMATCH")
                              << "\n";
                std::cout << (rep.all_match ? "MATCH" : "MISMATCH") << "\n";
            }
            if (!rep.all_match) exit_code = 1;
        });
    }

    // ---- identity ---------------------------------------------------------
    auto* identity = app.add_subcommand("identity", "integral identity checks");
    identity->fallthrough();
    identity->require_subcommand(1);
    {
        auto* upart = identity->add_subcommand("u-part", "weighted diagonal series or its law");
        struct UArgs {
            std::int64_t d1 = 1, d2 = 1;
            std::string zfile, var = "T";
        };
        auto uargs = std::make_shared<UArgs>();
        upart->add_option("--d1", uargs->d1, "first block dimension")->required();
        upart->add_option("--d2", uargs->d2, "second block dimension")->required();
        upart->add_option("z", uargs->zfile, "optional local series to fold in");
        upart->add_option("--var", uargs->var, "series variable name");
        upart->callback([&out, uargs] {
            if (uargs->zfile.empty())
                emit_series(u_series(uargs->d1, uargs->d2, uargs->var), out);
            else
                emit_groth(u_part(uargs->d1, uargs->d2, io::load_series(uargs->zfile)), out);
        });

        auto* wc = identity->add_subcommand("w-cancel", "gap of the shifted weighting");
        struct WArgs {
            std::string file;
            std::int64_t d = 0;
        };
        auto wargs = std::make_shared<WArgs>();
        wc->add_option("file", wargs->file, "weighting data (kind wdata)")->required();
        wc->add_option("--d", wargs->d, "exponent of the L scale factor");
        wc->callback([&out, wargs, &exit_code] {
            GrothElement gap = w_cancellation(io::load_wdata(wargs->file), wargs->d);
            if (out.json_out)
                print_json({{"kind", "verdict"},
                            {"ok", gap.is_zero()},
                            {"gap", io::render_text(gap)}});
            else
                std::cout << "gap = " << io::render_text(gap) << "\n";
            if (!gap.is_zero()) exit_code = 1;
        });

        auto* check = identity->add_subcommand("check", "compare both sides of an instance");
        struct CheckArgs {
            std::string file;
            std::vector<std::string> specs;
        };
        auto kargs = std::make_shared<CheckArgs>();
        check->add_option("file", kargs->file, "instance (kind identity-instance)")->required();
        check->add_option("--spec", kargs->specs, "specialization to test under (repeatable)");
        check->callback([&out, kargs, &exit_code] {
            std::vector<Specialization> specs;
            for (const auto& s : kargs->specs) specs.push_back(io::load_specialization(s));
            IdentityReport rep = identity_check(io::load_instance(kargs->file), specs);
            if (out.json_out) {
                print_json({{"kind", "identity-report"},
                            {"lhs", io::render_text(rep.lhs)},
                            {"rhs", io::render_text(rep.rhs)},
                            {"symbolic_match", rep.symbolic_match},
                            {"spec_match", rep.spec_match},
                            {"ok", rep.ok}});
            } else {
                std::cout << "LHS = " << io::render_text(rep.lhs)
                          << ", RHS = " << io::render_text(rep.rhs) << ", "
                          << (rep.symbolic_match ? "MATCH" : "MISMATCH") << "\n";
                for (std::size_t i = 0; i < rep.spec_match.size(); ++i)
                    std::cout << "spec " << i + 1 << ": " << (rep.spec_match[i] ? "MATCH" : "MISMATCH")
                              << "\n";
            }
            if (!rep.ok) exit_code = 1;
        });
    }

    app.parse(argc, argv);
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"motivic zeta functions, nearby cycles, and their jet counting oracle"};
    app.failure_message(CLI::FailureMessage::help);
    try {
        return run(app, argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const mzl::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == mzl::errc::mismatch ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
