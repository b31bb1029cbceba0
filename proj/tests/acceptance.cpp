// One line per acceptance criterion: PASS/FAIL, measured quantities, wall time.

#include "fixtures.hpp"
#include "stiffness_oracle.hpp"
#include "mixedlap/barrier.hpp"
#include "mixedlap/errors.hpp"
#include "mixedlap/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace mixedlap;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_seconds, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_seconds) {
        o.passed = false;
        o.detail += "; over time budget";
    }
    if (!o.passed) ++failures;
    std::printf("%s [%2d] %s: %s (%.2f s, budget %.0f s)\n", o.passed ? "PASS" : "FAIL", id, name.c_str(),
                o.detail.c_str(), secs, budget_seconds);
    std::fflush(stdout);
}

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(6);
    o << v;
    return o.str();
}

double spread(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return (*hi - *lo) / *lo;
}

SolveReport solve_unit(double s, int n, const ScalarField& f) {
    return solve_dirichlet(assemble(build_mesh(-1.0, 1.0, n), OperatorParams::make(1, s)), f);
}

}  // namespace

int main() {
    criterion(1, "normalization constant", 10.0, [] {
        double worst = 0.0;
        for (auto [N, ref] : {std::pair{1, fixtures::kCns_1_050}, std::pair{2, fixtures::kCns_2_050}}) {
            worst = std::max(worst, std::abs(normalization_constant(N, 0.5) / ref - 1.0));
        }
        return Outcome{worst <= 1e-8, "max rel err " + fmt(worst)};
    });

    criterion(2, "nonlocal stiffness vs brute-force oracle", 60.0, [] {
        double worst = 0.0;
        int entries = 0;
        for (double s : {0.25, 0.5, 0.75}) {
            const auto params = OperatorParams::make(1, s);
            for (int n : {1, 2, 5, 9, 17}) {
                const Mesh mesh = build_mesh(-1.0, 1.0, n);
                const auto A = nonlocal_stiffness(mesh, params);
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j, ++entries) {
                        const double ref = oracle::oracle_entry(i, j, mesh, params);
                        worst = std::max(worst, std::abs(A(i, j) - ref) / std::abs(ref));
                    }
                }
            }
        }
        return Outcome{worst <= 1e-6, std::to_string(entries) + " entries, max rel err " + fmt(worst)};
    });

    criterion(3, "weak maximum principle, random loads", 120.0, [] {
        std::mt19937_64 rng(42);
        double margin = HUGE_VAL;
        bool ok = true;
        for (double s : {0.25, 0.5, 0.75}) {
            const auto sys = assemble(build_mesh(-1.0, 1.0, 255), OperatorParams::make(1, s));
            for (int k = 0; k < 20; ++k) {
                const auto r = check_weak_mp(solve_dirichlet(sys, random_nonnegative_load(rng, -1.0, 1.0)), 0.0);
                ok = ok && r.passed;
                margin = std::min(margin, r.measured - r.threshold);
            }
        }
        return Outcome{ok, "60 solves, min(u_min - bound) " + fmt(margin)};
    });

    criterion(4, "energy ratio stability, f = 1", 120.0, [] {
        std::vector<double> ratios;
        for (int n : {127, 255, 511}) ratios.push_back(solve_unit(0.5, n, ScalarField::constant(1.0)).ratio_energy);
        const double v = spread(ratios);
        return Outcome{v < 0.10, "ratios " + fmt(ratios[0]) + " " + fmt(ratios[1]) + " " + fmt(ratios[2]) +
                                     ", spread " + fmt(v)};
    });

    for (double s : {0.3, 0.5, 0.6, 0.75, 0.9}) {
        criterion(5, "barrier certificate s=" + fmt(s), 180.0, [s] {
            const BarrierParams p = build_barrier(s);
            bool ok = p.certificate.certified;
            for (double k : p.kappas) ok = ok && k < 0.0;
            for (double c : p.cs) ok = ok && c > 0.0;
            for (std::size_t j = 1; j < p.cs.size(); ++j) {
                const double a = p.ladder.alphas[j];
                ok = ok && p.cs[j] == -p.kappas[j - 1] * p.cs[j - 1] / (a * (a - 1.0));
            }
            // independent grid, offset from the construction grid
            const ScalarField g = gamma_field(p);
            double min_Lg = HUGE_VAL;
            for (int k = 0; k < 200; ++k) {
                const double x = p.ell * (k + 0.37) / 200.0;
                min_Lg = std::min(min_Lg, mixed_apply(g, x, p.op, p.quad));
            }
            double lo = HUGE_VAL;
            double hi = 0.0;
            for (int k = 0; k < 300; ++k) {  // geometric in (0, ell)
                const double x = p.ell * std::pow(1e-6, (k + 0.5) / 300.0);
                lo = std::min(lo, gamma(x, p) / x);
                hi = std::max(hi, gamma(x, p) / x);
            }
            ok = ok && min_Lg >= 1.0 - 1e-4 && lo >= p.c_gamma && hi <= 1.0 / p.c_gamma;
            return Outcome{ok, "d " + fmt(p.d) + ", ell " + fmt(p.ell) + ", min L gamma " + fmt(min_Lg) +
                                   ", gamma/x in [" + fmt(lo) + ", " + fmt(hi) + "], c " + fmt(p.c_gamma)};
        });
    }

    criterion(6, "boundary Lipschitz vs C^s contrast, s=0.75", 300.0, [] {
        const double s = 0.75;
        const auto op = OperatorParams::make(1, s);
        std::vector<SolveReport> mixed;
        SolveReport nonlocal;
        for (int n : {63, 127, 255, 511}) {
            auto sys = assemble(build_mesh(-1.0, 1.0, n), op);
            mixed.push_back(solve_dirichlet(sys, ScalarField::constant(1.0)));
            if (n == 511) {
                sys.local.diag.setZero();
                sys.local.off.setZero();
                nonlocal = solve_dirichlet(sys, ScalarField::constant(1.0));
            }
        }
        const auto r = check_boundary_lipschitz(mixed, 0.1);
        const double em = fit_boundary_exponent(mixed.back(), 0.1);
        const double en = fit_boundary_exponent(nonlocal, 0.1);
        const bool ok = r.passed && std::abs(em - 1.0) <= 0.15 && std::abs(en - s) <= 0.15;
        return Outcome{ok, "mixed exponent " + fmt(em) + ", nonlocal exponent " + fmt(en) + ", Q ratio " +
                               fmt(r.measured)};
    });

    criterion(7, "wrong-sign counterexample, compact support", 120.0, [] {
        bool ok = true;
        std::string d;
        for (double s : {0.1, 0.25, 0.4}) {
            const auto r = counterexample_ces(s);
            ok = ok && r.passed && r.value("min_Lprime_f") > 0.0 && r.value("max_f") < 0.0 &&
                 r.value("weak_mp_min") >= 0.0;
            d += "s=" + fmt(s) + " eps0 " + fmt(r.value("eps0")) + " min L'f " + fmt(r.value("min_Lprime_f")) + "; ";
        }
        return Outcome{ok, d};
    });

    criterion(8, "boundary-only sign conditions, r=2 s=0.5 n=511", 120.0, [] {
        const auto r = counterexample_boundary_only(2.0, 0.5, 511);
        const double res = r.value("relative_residual");
        const bool ok = r.passed && r.value("v_boundary") > 0.0 && r.value("v_min_B1") < 0.0 && res < 10.0 * 1e-10;
        return Outcome{ok, "v(+-1) " + fmt(r.value("v_boundary")) + ", min v " + fmt(r.value("v_min_B1")) +
                               ", residual " + fmt(res)};
    });

    criterion(9, "L-infinity bound, three families", 120.0, [] {
        std::mt19937_64 rng(7);
        const std::vector<std::pair<std::string, ScalarField>> families{
            {"constant", ScalarField::constant(1.0)},
            {"random", random_nonnegative_load(rng, -1.0, 1.0)},
            {"oscillating", ScalarField::line([](double x) { return std::cos(5.0 * x); }, {}, {},
                                              TailModel::compact(1.0))}};
        std::vector<LinfSample> samples;
        for (int n : {127, 255, 511}) {
            const auto sys = assemble(build_mesh(-1.0, 1.0, n), OperatorParams::make(1, 0.5));
            for (const auto& [name, f] : families) samples.push_back(linf_sample(name, solve_dirichlet(sys, f), f, 2.0));
        }
        const auto r = check_linf_bound(samples, 2.0);
        return Outcome{r.passed, "worst spread " + fmt(r.measured)};
    });

    criterion(10, "manufactured-solution residual decreases", 300.0, [] {
        const auto op = OperatorParams::make(1, 0.5);
        const ScalarField u = manufactured_solution();
        const ScalarField f =
            ScalarField::line([u, op](double x) { return mixed_apply(u, x, op); }, {}, {}, TailModel::compact(1.0));
        std::vector<SolveReport> reps;
        for (int n : {63, 127, 255}) reps.push_back(solve_dirichlet(assemble(build_mesh(-1.0, 1.0, n), op), f));
        const auto r = residual_check(reps, f, op, {}, 0.5);
        std::string d;
        for (const auto& [k, v] : r.values) d += k + " " + fmt(v) + " ";
        return Outcome{r.passed, d};
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
