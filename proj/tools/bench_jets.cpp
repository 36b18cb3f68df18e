// Benchmark: pruned OpenMP jet counter against the serial reference odometer.
//
// The reference walks all q^{(n+1)d} jets, so it is only run where that
// space is small; the engine is then timed alone on larger levels, and the
// shared cases double as an agreement check. Exits nonzero on disagreement.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "mzl/jets.hpp"

#ifdef MZL_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

using namespace mzl;

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

PolySpec poly_xy() {
    PolySpec f;
    f.d = 2;
    f.monomials = {{{1, 1}, 1}};
    return f;
}

PolySpec poly_cusp() {
    PolySpec f;
    f.d = 2;
    f.monomials = {{{2, 0}, 1}, {{0, 3}, 1}};
    return f;
}

PolySpec poly_quadric() {
    PolySpec f;
    f.d = 3;
    f.monomials = {{{1, 1, 0}, 1}, {{0, 0, 2}, 1}};
    return f;
}

struct Case {
    std::string name;
    PolySpec f;
    std::int64_t n;
    std::int64_t q;
    bool run_reference;
};

int run() {
    std::vector<Case> cases = {
        {"xy      n=2 q=5", poly_xy(), 2, 5, true},
        {"xy      n=3 q=5", poly_xy(), 3, 5, true},
        {"cusp    n=2 q=7", poly_cusp(), 2, 7, true},
        {"xy+z^2  n=2 q=5", poly_quadric(), 2, 5, true},
        {"xy      n=6 q=5", poly_xy(), 6, 5, false},
        {"cusp    n=5 q=7", poly_cusp(), 5, 7, false},
        {"xy+z^2  n=4 q=5", poly_quadric(), 4, 5, false},
    };

#ifdef MZL_HAVE_OPENMP
    std::cout << "OpenMP enabled, max threads " << omp_get_max_threads() << "\n\n";
#else
    std::cout << "OpenMP not available, engine runs serially\n\n";
#endif

    std::cout << "case                engine_s     reference_s  speedup  count\n";
    int failures = 0;
    for (const auto& c : cases) {
        std::vector<PolySpec> ctx = {c.f};
        ArcCondition cond;
        cond.d = c.f.d;
        cond.contact = ArcCondition::Contact{0, c.n};

        auto t0 = std::chrono::steady_clock::now();
        JetCountReport rep = count_jets(ctx, cond, c.n, c.q);
        auto t1 = std::chrono::steady_clock::now();
        double te = seconds(t0, t1);

        std::cout << c.name << "  " << te;
        if (c.run_reference) {
            auto t2 = std::chrono::steady_clock::now();
            Int ref = count_jets_reference(ctx, cond, c.n, c.q);
            auto t3 = std::chrono::steady_clock::now();
            double tr = seconds(t2, t3);
            std::cout << "  " << tr << "  " << (te > 0 ? tr / te : 0.0);
            if (ref != rep.count) {
                std::cout << "  DISAGREE engine=" << rep.count.str() << " reference=" << ref.str()
                          << "\n";
                ++failures;
                continue;
            }
        } else {
            std::cout << "  -  -";
        }
        std::cout << "  " << rep.count.str() << "\n";
    }

#ifdef MZL_HAVE_OPENMP
    std::cout << "\nthread scaling, xy+z^2 n=3 q=5\n";
    std::vector<PolySpec> ctx = {poly_quadric()};
    ArcCondition cond;
    cond.d = 3;
    cond.contact = ArcCondition::Contact{0, 3};
    for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        auto t0 = std::chrono::steady_clock::now();
        JetCountReport rep = count_jets(ctx, cond, 3, 5);
        auto t1 = std::chrono::steady_clock::now();
        std::cout << "threads " << threads << ": " << seconds(t0, t1) << "s count "
                  << rep.count.str() << "\n";
    }
#endif

    if (failures) {
        std::cout << failures << " case(s) disagree\n";
        return 1;
    }
    std::cout << "all shared cases agree\n";
    return 0;
}

}  // namespace

int main() {
    try {
        return run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
