#include "mixedlap/run.hpp"

#include "mixedlap/barrier.hpp"
#include "mixedlap/errors.hpp"
#include "mixedlap/solve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <limits>
#include <sstream>

namespace mixedlap {

namespace {

namespace fs = std::filesystem;

using Job = std::function<VerificationReport()>;

VerificationReport guarded(const std::string& name, const Job& job) {
    try {
        return job();
    } catch (const std::exception& e) {
        VerificationReport r;
        r.check_name = name;
        r.passed = false;
        r.measured = std::numeric_limits<double>::quiet_NaN();
        r.notes = std::string("error: ") + e.what();
        return r;
    }
}

std::string write(const fs::path& dir, const std::string& name, const std::string& contents) {
    const fs::path p = dir / name;
    write_text_file(p.string(), contents);
    return p.string();
}

std::string summary_text(const std::vector<VerificationReport>& reports) {
    std::ostringstream o;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) o << '\n';
        o << format_report(reports[i]);
    }
    const bool all = std::all_of(reports.begin(), reports.end(),
                                 [](const VerificationReport& r) { return r.passed; });
    o << "\nall_passed = " << (all ? "true" : "false") << '\n';
    return o.str();
}

RunOutcome run_solve(const RunConfig& cfg, const fs::path& dir) {
    const auto sys = assemble(build_mesh(cfg.a, cfg.b, cfg.n), OperatorParams::make(1, cfg.s), cfg.quad);
    SolveOptions opts;
    opts.iterative = cfg.iterative;
    const SolveReport rep = solve_dirichlet(sys, make_load(cfg.f, cfg.a, cfg.b), opts);
    std::ostringstream csv;
    write_solution_csv(csv, rep);
    std::ostringstream js;
    write_report_json(js, rep);
    RunOutcome out;
    out.files.push_back(write(dir, "solution.csv", csv.str()));
    out.files.push_back(write(dir, "report.json", js.str()));
    return out;
}

RunOutcome run_barrier(const RunConfig& cfg, const fs::path& dir) {
    const BarrierParams p = build_barrier(cfg.s, cfg.quad);
    RunOutcome out;
    out.files.push_back(write(dir, "certificate.txt", describe(p)));
    out.exit_status = p.certificate.certified ? 0 : 1;
    if (!cfg.dump) return out;
    const ScalarField g = gamma_field(p);
    std::vector<double> xs;
    for (int k = 0; k <= 70; ++k) xs.push_back(-0.5 + 3.5 * k / 70.0);
    for (int k = 0; k < 60; ++k) xs.push_back(1e-4 * p.ell * std::pow(1e4 * p.d / p.ell, k / 59.0));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::ostringstream csv;
    csv << "x,beta,gamma,L_gamma\n" << std::setprecision(17);
    for (double x : xs) {
        double Lg = std::numeric_limits<double>::quiet_NaN();
        try {
            Lg = mixed_apply(g, x, p.op, p.quad);
        } catch (const DomainError&) {
            // on a kink: the operator is not defined pointwise
        }
        csv << x << ',' << beta(x, p) << ',' << gamma(x, p) << ',' << Lg << '\n';
    }
    out.files.push_back(write(dir, "barrier.csv", csv.str()));
    return out;
}

RunOutcome run_counterexample(const RunConfig& cfg, const fs::path& dir) {
    VerificationReport r;
    if (cfg.example == "ces") {
        r = counterexample_ces(cfg.s, cfg.quad);
    } else if (cfg.example == "general") {
        r = counterexample_general(cfg.s, cfg.dim, cfg.quad);
    } else {
        r = counterexample_boundary_only(cfg.r, cfg.s, cfg.n, cfg.quad);
    }
    RunOutcome out;
    out.files.push_back(write(dir, "summary.txt", summary_text({r})));
    out.exit_status = r.passed ? 0 : 1;
    return out;
}

}  // namespace

std::string resolve_output_dir(const RunConfig& config) {
    if (!config.output_dir.empty()) return config.output_dir;
    if (const char* env = std::getenv("MIXEDLAP_OUTPUT_DIR"); env && *env) return env;
    return "mixedlap_out";
}

std::vector<VerificationReport> verification_suite(const RunConfig& cfg) {
    const double s = cfg.s;
    const double a = cfg.a;
    const double b = cfg.b;
    const int n = cfg.n;
    const QuadratureSpec quad = cfg.quad;
    const std::uint64_t seed = cfg.seed;
    const OperatorParams op = OperatorParams::make(1, s);

    std::vector<std::pair<std::string, Job>> jobs;
    jobs.emplace_back("weak_maximum_principle_random_loads", [=] {
        std::mt19937_64 rng(seed);
        const auto sys = assemble(build_mesh(a, b, n), op, quad);
        VerificationReport r;
        r.check_name = "weak_maximum_principle_random_loads";
        r.threshold = 0.0;
        r.measured = std::numeric_limits<double>::infinity();
        std::ostringstream canon;
        for (int k = 0; k < 20; ++k) {
            const auto w = check_weak_mp(solve_dirichlet(sys, random_nonnegative_load(rng, a, b)), 0.0);
            r.measured = std::min(r.measured, w.measured - w.threshold);
            canon << w.inputs_digest;
        }
        r.passed = r.measured >= r.threshold;
        r.inputs_digest = digest(canon.str());
        r.notes = "min over 20 loads of (nodal minimum + 1e-8 (1 + max|u|))";
        return r;
    });
    jobs.emplace_back("strong_maximum_principle_interior", [=] {
        const auto sys = assemble(build_mesh(a, b, n), op, quad);
        return check_strong_mp_contact(solve_dirichlet(sys, ScalarField::constant(1.0)));
    });
    jobs.emplace_back("linf_bound", [=] {
        std::mt19937_64 rng(seed + 1);
        const std::vector<std::pair<std::string, ScalarField>> families{
            {"constant", make_load({LoadKind::constant, 1.0, {}, {}}, a, b)},
            {"random", random_nonnegative_load(rng, a, b)},
            {"quadratic", make_load({LoadKind::polynomial, 0.0, {1.0, 0.0, 1.0}, {}}, a, b)}};
        std::vector<LinfSample> samples;
        for (int m : {n, 2 * n + 1, 4 * n + 3}) {
            const auto sys = assemble(build_mesh(a, b, m), op, quad);
            for (const auto& [name, f] : families) {
                samples.push_back(linf_sample(name, solve_dirichlet(sys, f), f, 2.0));
            }
        }
        return check_linf_bound(samples, 2.0);
    });
    jobs.emplace_back("boundary_lipschitz", [=] {
        std::vector<SolveReport> reps;
        for (int m : {63, 127, 255, 511}) {
            reps.push_back(solve_dirichlet(assemble(build_mesh(-1.0, 1.0, m), op, quad),
                                           ScalarField::constant(1.0)));
        }
        return check_boundary_lipschitz(reps, 0.1);
    });
    jobs.emplace_back("interior_residual", [=] {
        const ScalarField u = manufactured_solution();
        const ScalarField f = ScalarField::line(
            [u, op, quad](double x) { return mixed_apply(u, x, op, quad); }, {}, {},
            TailModel::compact(1.0));
        std::vector<SolveReport> reps;
        for (int m : {31, 63, 127, 255}) {
            reps.push_back(solve_dirichlet(assemble(build_mesh(-1.0, 1.0, m), op, quad), f));
        }
        return residual_check(reps, f, op, quad);
    });
    jobs.emplace_back("counterexample_wrong_sign_compact",
                      [=] { return counterexample_ces(s < 0.5 ? s : 0.25, quad); });
    jobs.emplace_back("counterexample_wrong_sign_exterior",
                      [=] { return counterexample_general(s, 1, quad); });
    jobs.emplace_back("counterexample_boundary_only",
                      [=] { return counterexample_boundary_only(2.0, s, 511, quad); });

    std::vector<std::future<VerificationReport>> futures;
    for (const auto& [name, job] : jobs) {
        futures.push_back(std::async(std::launch::async, guarded, name, job));
    }
    std::vector<VerificationReport> out;
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

RunOutcome run(const RunConfig& config) {
    RunOutcome out;
    try {
        const fs::path dir = resolve_output_dir(config);
        fs::create_directories(dir);
        switch (config.command) {
            case Command::solve: out = run_solve(config, dir); break;
            case Command::barrier: out = run_barrier(config, dir); break;
            case Command::counterexample: out = run_counterexample(config, dir); break;
            case Command::verify: {
                const auto reports = verification_suite(config);
                out.files.push_back(write(dir, "summary.txt", summary_text(reports)));
                const bool all = std::all_of(reports.begin(), reports.end(),
                                             [](const VerificationReport& r) { return r.passed; });
                out.exit_status = all ? 0 : 1;
                break;
            }
        }
    } catch (const std::exception& e) {
        out.exit_status = 1;
        out.error = e.what();
    }
    return out;
}

}  // namespace mixedlap
