#pragma once

#include "mixedlap/barrier.hpp"
#include "mixedlap/solve.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace mixedlap {

struct VerificationReport {
    std::string check_name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string inputs_digest;
    std::string notes;
    /// Auxiliary named quantities (epsilon_0, fitted exponents, ...).
    std::vector<std::pair<std::string, double>> values;

    double value(const std::string& name) const;  // NaN when absent
};

/// Stable hex digest of a canonical input description.
std::string digest(const std::string& canonical);

/// Minimum nodal value against -1e-8 (1 + max|u|).
VerificationReport check_weak_mp(const SolveReport& report, double exterior_min);

/// Guarded contact test: u >= 0, u(x0) ~ 0 and L u >= 0 near x0 force u == 0.
VerificationReport check_strong_mp_contact(const ScalarField& u, const OperatorParams& params,
                                           const QuadratureSpec& quad, double x0);
/// Contrapositive form on a discrete solution: the interior minimum is positive.
VerificationReport check_strong_mp_contact(const SolveReport& report);

struct LinfSample {
    std::string family;
    int n = 0;
    double u_inf = 0.0;
    double f_norm = 0.0;  // ||f||_{L^p}
};

double lp_norm_on_mesh(const ScalarField& f, const Mesh& mesh, double p);
LinfSample linf_sample(const std::string& family, const SolveReport& report, const ScalarField& f,
                       double p);

/// Per family, ||u_h||_inf / ||f||_{L^p} varies by less than 50% across meshes.
VerificationReport check_linf_bound(const std::vector<LinfSample>& samples, double p);

/// Least-squares slope of log|u| against log dist(x, boundary) on nodes within band.
double fit_boundary_exponent(const SolveReport& report, double band);

/// Q(h) = max |u| / dist over the band; the finest Q is at most 1.25 x the median.
VerificationReport check_boundary_lipschitz(const std::vector<SolveReport>& refinements,
                                            double band);

VerificationReport counterexample_ces(double s, const QuadratureSpec& quad = {});
VerificationReport counterexample_general(double s, int dim, const QuadratureSpec& quad = {});
VerificationReport counterexample_boundary_only(double r, double s, int n,
                                                const QuadratureSpec& quad = {});

/// max |L u_h - f| over element midpoints with |x| <= window.
double interior_residual(const SolveReport& report, const ScalarField& f,
                         const OperatorParams& params, const QuadratureSpec& quad,
                         double window = 0.5);
/// (1 - x^2)^3 on (-1, 1), zero outside; C^2 across the boundary.
ScalarField manufactured_solution();

/// Passed iff the interior residual strictly decreases along the refinements.
VerificationReport residual_check(const std::vector<SolveReport>& refinements, const ScalarField& f,
                                  const OperatorParams& params, const QuadratureSpec& quad = {},
                                  double window = 0.5);

/// Continuity index k_{m,N}; empty when m - N/2 <= 0.
std::optional<int> sobolev_index(int m, int N);

/// Nonnegative continuous piecewise-linear load on (a, b) with `knots` random values in [0, 1).
ScalarField random_nonnegative_load(std::mt19937_64& rng, double a, double b, int knots = 9);

/// One record per field, "key = value" lines.
std::string format_report(const VerificationReport& r);

}  // namespace mixedlap
