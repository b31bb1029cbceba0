#include "mixedlap/verify.hpp"

#include "mixedlap/errors.hpp"
#include "mixedlap/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

namespace mixedlap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Quintic smoothstep: 0 for t <= 0, 1 for t >= 1, C^2.
double step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}
double step_d1(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 30.0 * t * t * (1.0 - t) * (1.0 - t);
}
double step_d2(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 60.0 * t - 180.0 * t * t + 120.0 * t * t * t;
}

std::string fmt(double x) {
    std::ostringstream o;
    o << std::setprecision(17) << x;
    return o.str();
}

std::string vector_digest(const std::string& head, const Eigen::VectorXd& v) {
    std::ostringstream o;
    o << head << std::setprecision(17);
    for (Eigen::Index i = 0; i < v.size(); ++i) o << ',' << v(i);
    return digest(o.str());
}

std::string report_digest(const std::string& head, const SolveReport& r) {
    const Mesh& m = r.solution.mesh;
    return vector_digest(head + "|" + fmt(m.a) + "|" + fmt(m.b) + "|" + std::to_string(m.n),
                         r.solution.coeffs);
}

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double dist_to_boundary(const Mesh& m, double x) { return std::min(x - m.a, m.b - x); }

// (x^2 - 1) phi(|x|) with phi = 1 on B_1 and 0 beyond radius 2.
double general_profile(double r) { return (r * r - 1.0) * (1.0 - step(r - 1.0)); }
double general_d1(double r) {
    return 2.0 * r * (1.0 - step(r - 1.0)) - (r * r - 1.0) * step_d1(r - 1.0);
}
double general_d2(double r) {
    const double t = r - 1.0;
    return 2.0 * (1.0 - step(t)) - 4.0 * r * step_d1(t) - (r * r - 1.0) * step_d2(t);
}

// Second-derivative weights of the quintic through t = -2.5 .. 2.5, at t = 0.
const std::array<double, 6>& quintic_weights() {
    static const std::array<double, 6> w = [] {
        Eigen::Matrix<double, 6, 6> V;
        for (int i = 0; i < 6; ++i) {
            const double t = i - 2.5;
            for (int k = 0; k < 6; ++k) V(i, k) = std::pow(t, k);
        }
        const Eigen::Matrix<double, 6, 6> inv = V.inverse();
        std::array<double, 6> out{};
        for (int i = 0; i < 6; ++i) out[i] = 2.0 * inv(2, i);
        return out;
    }();
    return w;
}

}  // namespace

double VerificationReport::value(const std::string& name) const {
    for (const auto& [k, v] : values) {
        if (k == name) return v;
    }
    return kNaN;
}

std::string digest(const std::string& canonical) {
    std::ostringstream o;
    o << std::hex << std::setw(16) << std::setfill('0') << std::hash<std::string>{}(canonical);
    return o.str();
}

VerificationReport check_weak_mp(const SolveReport& report, double exterior_min) {
    VerificationReport r;
    r.check_name = "weak_maximum_principle";
    const auto& u = report.solution.coeffs;
    r.measured = u.size() ? u.minCoeff() : 0.0;
    r.threshold = -1e-8 * (1.0 + max_abs(u));
    r.inputs_digest = report_digest("weak_mp|" + fmt(exterior_min), report);
    if (exterior_min < 0.0) {
        r.notes = "inconclusive: exterior data takes negative values";
        r.passed = false;
        return r;
    }
    r.passed = r.measured >= r.threshold;
    r.values = {{"max_abs_u", max_abs(u)}};
    return r;
}

VerificationReport check_strong_mp_contact(const ScalarField& u, const OperatorParams& params,
                                           const QuadratureSpec& quad, double x0) {
    VerificationReport r;
    r.check_name = "strong_maximum_principle_contact";
    r.threshold = 1e-8;
    const double L = std::max({4.0, 2.0 * u.tail.radius, std::abs(x0) + 2.0});
    constexpr int kSamples = 801;
    double umin = std::numeric_limits<double>::infinity();
    double umax = 0.0;
    std::ostringstream canon;
    canon << "strong_mp|" << params.s << '|' << x0 << std::setprecision(17);
    for (int k = 0; k < kSamples; ++k) {
        const double x = -L + 2.0 * L * k / (kSamples - 1);
        const double v = u(x);
        umin = std::min(umin, v);
        umax = std::max(umax, std::abs(v));
        canon << ',' << v;
    }
    r.inputs_digest = digest(canon.str());
    r.measured = kNaN;
    if (umin < -1e-12) {
        r.notes = "inconclusive: u takes negative values";
        return r;
    }
    if (u(x0) > 1e-12) {
        r.notes = "inconclusive: u(x0) is not a contact point";
        return r;
    }
    double lmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 10; ++k) {
        const double x = x0 - 0.25 + 0.05 * k;
        if (u.kinks.size()) {
            const std::array<double, 1> px{x};
            if (u.distance_to_kinks(px) < 1e-6) continue;
        }
        lmin = std::min(lmin, mixed_apply(u, x, params, quad));
    }
    r.values = {{"min_Lu_near_x0", lmin}};
    if (lmin < -10.0 * quad.tolerance) {
        r.notes = "inconclusive: L u >= 0 fails near x0, not applicable";
        return r;
    }
    r.measured = umax;
    r.passed = umax <= r.threshold;
    r.notes = r.passed ? "contact forces u == 0" : "contact point with nontrivial u";
    return r;
}

VerificationReport check_strong_mp_contact(const SolveReport& report) {
    VerificationReport r;
    r.check_name = "strong_maximum_principle_interior";
    const auto& u = report.solution.coeffs;
    r.measured = u.size() ? u.minCoeff() : 0.0;
    r.threshold = 0.0;
    r.inputs_digest = report_digest("strong_mp_discrete", report);
    r.passed = r.measured > r.threshold;
    r.notes = "no interior contact with zero";
    return r;
}

double lp_norm_on_mesh(const ScalarField& f, const Mesh& mesh, double p) {
    if (!(p >= 1.0)) {
        throw DomainError("L^p norm needs p >= 1");
    }
    const quad::Rule& rule = quad::gauss_legendre_rule(6);
    CompensatedSum sum;
    for (int e = 0; e < mesh.elements(); ++e) {
        const double x0 = mesh.a + e * mesh.h;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double v = f(x0 + 0.5 * (rule.nodes[q] + 1.0) * mesh.h);
            sum.add(0.5 * rule.weights[q] * mesh.h * std::pow(std::abs(v), p));
        }
    }
    return std::pow(sum.value(), 1.0 / p);
}

LinfSample linf_sample(const std::string& family, const SolveReport& report, const ScalarField& f,
                       double p) {
    return {family, report.solution.mesh.n, max_abs(report.solution.coeffs),
            lp_norm_on_mesh(f, report.solution.mesh, p)};
}

VerificationReport check_linf_bound(const std::vector<LinfSample>& samples, double p) {
    VerificationReport r;
    r.check_name = "linf_bound";
    r.threshold = 0.5;
    std::vector<std::string> order;
    std::map<std::string, std::vector<const LinfSample*>> groups;
    std::ostringstream canon;
    canon << "linf|" << p << std::setprecision(17);
    for (const auto& s : samples) {
        canon << '|' << s.family << ',' << s.n << ',' << s.u_inf << ',' << s.f_norm;
        if (!groups.count(s.family)) order.push_back(s.family);
        groups[s.family].push_back(&s);
    }
    r.inputs_digest = digest(canon.str());
    std::ostringstream notes;
    double worst = 0.0;
    int used = 0;
    for (const auto& fam : order) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        int count = 0;
        for (const auto* s : groups[fam]) {
            if (s->f_norm == 0.0) continue;
            const double q = s->u_inf / s->f_norm;
            r.values.emplace_back("ratio_" + fam + "_n" + std::to_string(s->n), q);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
            ++count;
        }
        if (count == 0) {
            notes << "skipped " << fam << " (f = 0); ";
            continue;
        }
        ++used;
        worst = std::max(worst, hi / lo - 1.0);
    }
    r.measured = worst;
    r.passed = used > 0 && worst < r.threshold;
    notes << "max relative spread of ||u||_inf / ||f||_L" << p << " per family";
    r.notes = notes.str();
    return r;
}

double fit_boundary_exponent(const SolveReport& report, double band) {
    const Mesh& m = report.solution.mesh;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (int i = 0; i < m.n; ++i) {
        const double d = dist_to_boundary(m, m.node(i));
        const double u = std::abs(report.solution.coeffs(i));
        if (d > band || u == 0.0) continue;
        const double lx = std::log(d);
        const double ly = std::log(u);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    if (count < 2) return kNaN;
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

VerificationReport check_boundary_lipschitz(const std::vector<SolveReport>& refinements,
                                            double band) {
    if (refinements.empty()) {
        throw DomainError("boundary check needs at least one solve");
    }
    VerificationReport r;
    r.check_name = "boundary_lipschitz";
    r.threshold = 1.25;
    std::ostringstream canon;
    canon << "lipschitz|" << band;
    std::vector<double> Q;
    for (const auto& rep : refinements) {
        const Mesh& m = rep.solution.mesh;
        if (!(band > 0.0) || !(band < 0.25 * m.length())) {
            throw DomainError("band must lie in (0, (b - a)/4)");
        }
        double q = 0.0;
        int count = 0;
        for (int i = 0; i < m.n; ++i) {
            const double d = dist_to_boundary(m, m.node(i));
            if (d > band) continue;
            q = std::max(q, std::abs(rep.solution.coeffs(i)) / d);
            ++count;
        }
        if (count == 0) {
            throw DomainError("no mesh nodes within the boundary band");
        }
        Q.push_back(q);
        r.values.emplace_back("Q_n" + std::to_string(m.n), q);
        canon << '|' << report_digest("", rep);
    }
    r.inputs_digest = digest(canon.str());
    std::vector<double> sorted = Q;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t k = sorted.size();
    const double median = k % 2 ? sorted[k / 2] : 0.5 * (sorted[k / 2 - 1] + sorted[k / 2]);
    r.measured = median > 0.0 ? Q.back() / median : 0.0;
    r.passed = r.measured <= r.threshold;
    const double e = fit_boundary_exponent(refinements.back(), band);
    r.values.emplace_back("growth_exponent", e);
    std::ostringstream notes;
    notes << "finest Q over median Q; fitted growth exponent " << std::setprecision(4) << e;
    if (std::isnan(e)) notes.str("u vanishes in the band; Q = 0");
    r.notes = notes.str();
    return r;
}

VerificationReport counterexample_ces(double s, const QuadratureSpec& quad) {
    if (!(s > 0.0 && s < 0.5)) {
        throw DomainError("the compact-support counterexample needs s in (0, 1/2)");
    }
    VerificationReport r;
    r.check_name = "counterexample_wrong_sign_compact";
    const double c = normalization_constant(1, s);
    const double K = std::pow(2.0, 1.0 - 2.0 * s) * c * (1.0 - s) / (s * (1.0 - 2.0 * s));
    double eps = 0.5;
    while (1.0 - std::pow(eps, 2.0 - 2.0 * s) * K <= 0.0) eps *= 0.5;

    const ScalarField f = ScalarField::line(
        [eps](double x) {
            const double t = x / eps;
            return std::abs(t) <= 1.0 ? t * t - 1.0 : 0.0;
        },
        [eps](double x) { return std::abs(x) < eps ? 2.0 / (eps * eps) : 0.0; }, {-eps, eps},
        TailModel::compact(eps));
    const OperatorParams wrong = OperatorParams::make(1, s, LocalSign::plus);
    double min_L = std::numeric_limits<double>::infinity();
    double max_f = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 101; ++k) {
        const double x = -eps + 2.0 * eps * (k + 1) / 102.0;
        min_L = std::min(min_L, mixed_apply(f, x, wrong, quad));
        max_f = std::max(max_f, f(x));
    }

    // Same data, true operator: the weak maximum principle holds.
    const ScalarField source = ScalarField::line(
        [&f, &wrong, &quad](double x) { return mixed_apply(f, x, wrong, quad); }, {}, {},
        TailModel::compact(eps));
    const auto sys = assemble(build_mesh(-eps, eps, 127), OperatorParams::make(1, s), quad);
    const VerificationReport weak = check_weak_mp(solve_dirichlet(sys, source), 0.0);

    r.measured = min_L;
    r.threshold = 0.0;
    r.passed = min_L > 0.0 && max_f < 0.0 && weak.passed;
    r.inputs_digest = digest("ces|" + fmt(s) + "|" + fmt(quad.tolerance));
    r.values = {{"eps0", eps},
                {"bound_constant", K},
                {"min_Lprime_f", min_L},
                {"max_f", max_f},
                {"f_at_0", f(0.0)},
                {"weak_mp_min", weak.measured}};
    r.notes = std::string("wrong-sign operator: L'f > 0 with f < 0 on (-eps0, eps0); ") +
              (weak.passed ? "true operator keeps u >= 0" : "true operator check failed");
    return r;
}

VerificationReport counterexample_general(double s, int dim, const QuadratureSpec& quad) {
    if (dim < 1 || dim > 3) {
        throw DomainError("dimension must be 1, 2 or 3");
    }
    VerificationReport r;
    r.check_name = "counterexample_wrong_sign_exterior";
    const OperatorParams op = OperatorParams::make(dim, s);
    const OperatorParams wrong = OperatorParams::make(dim, s, LocalSign::plus);
    ScalarField u;
    if (dim == 1) {
        u = ScalarField::line([](double x) { return general_profile(std::abs(x)); },
                              [](double x) { return general_d2(std::abs(x)); },
                              {-2.0, -1.0, 1.0, 2.0}, TailModel::compact(2.0));
    } else {
        const double N = dim;
        u = ScalarField::radial_field(
            dim, general_profile,
            [N](double r) {
                return r > 0.0 ? general_d2(r) + (N - 1.0) / r * general_d1(r) : 2.0 * N;
            },
            {1.0, 2.0}, 2.0);
    }
    std::vector<double> point(dim, 0.0);
    double sup = 0.0;
    for (int k = 0; k < 31; ++k) {
        point[0] = 3.0 * (k + 0.5) / 31.0;
        sup = std::max(sup, std::abs(frac_apply(u, point, op, quad)));
    }
    double eps = 0.5;
    while (2.0 * dim - std::pow(eps, 2.0 - 2.0 * s) * sup <= 0.0) eps *= 0.5;
    const ScalarField ue = dilated(u, eps);

    double min_L = std::numeric_limits<double>::infinity();
    double max_u = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 21; ++k) {
        point[0] = dim == 1 ? -eps + 2.0 * eps * (k + 1) / 22.0 : eps * k / 21.0;
        min_L = std::min(min_L, mixed_apply(ue, point, wrong, quad));
        max_u = std::max(max_u, ue(point));
    }
    r.values = {{"eps0", eps}, {"sup_frac_u", sup}, {"min_Lprime_u", min_L}, {"max_u", max_u}};
    bool positive_side = true;
    if (dim == 1) {
        const ScalarField source = ScalarField::line(
            [&ue, &wrong, &quad](double x) { return mixed_apply(ue, x, wrong, quad); }, {}, {},
            TailModel::compact(eps));
        const auto sys = assemble(build_mesh(-eps, eps, 127), op, quad);
        const VerificationReport weak =
            check_weak_mp(lift_nonhomogeneous(sys, source, ue, quad), 0.0);
        positive_side = weak.passed;
        r.values.emplace_back("weak_mp_min", weak.measured);
        r.notes = positive_side ? "true operator keeps u >= 0 on the same data; "
                                : "true operator check failed; ";
    } else {
        r.notes = "true-operator solve available in dimension 1 only; ";
    }
    r.notes += "wrong-sign operator: L'u > 0 with u < 0 on B(0, eps0)";
    r.measured = min_L;
    r.threshold = 0.0;
    r.passed = min_L > 0.0 && max_u < 0.0 && positive_side;
    r.inputs_digest =
        digest("general|" + fmt(s) + "|" + std::to_string(dim) + "|" + fmt(quad.tolerance));
    return r;
}

VerificationReport counterexample_boundary_only(double r, double s, int n,
                                                const QuadratureSpec& quad) {
    if (!(r > 1.0)) {
        throw DomainError("radius r must exceed 1");
    }
    const double r1 = r + 1.0;
    const double r3 = r + 3.0;
    // -1 on [r+2, r+3], 0 outside (r+1, r+4), smooth ramps between.
    auto phi = [r1, r3](double x) {
        const double a = std::abs(x);
        return -step(a - r1) * (1.0 - step(a - r3));
    };
    auto phi_d2 = [r1, r3](double x) {
        const double a = std::abs(x);
        return -step_d2(a - r1) + step_d2(a - r3);
    };
    const ScalarField bump = ScalarField::line(
        phi, phi_d2, {-r - 4.0, -r3, -r - 2.0, -r1, r1, r + 2.0, r3, r + 4.0},
        TailModel::compact(r + 4.0));
    const OperatorParams op = OperatorParams::make(1, s);
    const auto sys = assemble(build_mesh(-1.0, 1.0, n), op, quad);
    const SolveOptions opts;
    const SolveReport w = lift_nonhomogeneous(sys, ScalarField::zero(), bump, quad, opts);
    const double m = w.solution.coeffs.minCoeff();
    if (!(m < -1e-6)) {
        throw ResolutionError("min of w over B_1 is not resolved below -1e-6; refine the mesh");
    }
    // v = 2 (w - m) + m
    const double v_boundary = std::min(2.0 * phi(-1.0) - m, 2.0 * phi(1.0) - m);
    double v_ring = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 50; ++k) {
        const double x = 1.0 + (r - 1.0) * k / 50.0;
        v_ring = std::min({v_ring, 2.0 * phi(x) - m, 2.0 * phi(-x) - m});
    }
    const double v_min = 2.0 * m - m;
    const double residual = w.load_norm > 0.0 ? w.residual_norm / w.load_norm : 0.0;
    const double residual_limit = 10.0 * opts.tolerance;

    const ScalarField flipped = combine(-1.0, bump, 0.0, ScalarField::zero());
    const VerificationReport weak =
        check_weak_mp(lift_nonhomogeneous(sys, ScalarField::zero(), flipped, quad, opts), 0.0);

    VerificationReport rep;
    rep.check_name = "counterexample_boundary_only";
    rep.measured = v_min;
    rep.threshold = 0.0;
    rep.passed = v_min < 0.0 && v_boundary > 0.0 && v_ring > 0.0 && residual <= residual_limit &&
                 weak.passed;
    rep.values = {{"m", m},
                  {"v_boundary", v_boundary},
                  {"v_ring_inf", v_ring},
                  {"v_min_B1", v_min},
                  {"relative_residual", residual},
                  {"weak_mp_min", weak.measured}};
    rep.inputs_digest = report_digest("boundary_only|" + fmt(r) + "|" + fmt(s), w);
    rep.notes = "v >= 0 on the boundary and on B_r minus B_1, yet min over B_1 of v < 0";
    return rep;
}

double interior_residual(const SolveReport& report, const ScalarField& f,
                         const OperatorParams& params, const QuadratureSpec& quad, double window) {
    const Mesh& m = report.solution.mesh;
    const ScalarField uh = report.solution.as_field();
    auto full = [&](int k) {  // value at a + k h, k = 0 .. n+1
        if (k <= 0 || k >= m.n + 1) return 0.0;
        return report.solution.coeffs(k - 1);
    };
    std::vector<int> elements;
    for (int e = 2; e + 3 <= m.n + 1; ++e) {
        const double mid = m.a + (e + 0.5) * m.h;
        if (std::abs(mid) <= window) elements.push_back(e);
    }
    if (elements.empty()) {
        throw DomainError("no interior stencils inside the residual window");
    }
    const std::size_t stride = (elements.size() + 39) / 40;
    const auto& w = quintic_weights();
    const double local_sign = params.local_sign == LocalSign::minus ? -1.0 : 1.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < elements.size(); i += stride) {
        const int e = elements[i];
        const double mid = m.a + (e + 0.5) * m.h;
        double d2 = 0.0;
        for (int j = 0; j < 6; ++j) d2 += w[j] * full(e - 2 + j);
        d2 /= m.h * m.h;
        const double Lu = local_sign * d2 + frac_apply(uh, mid, params, quad);
        worst = std::max(worst, std::abs(Lu - f(mid)));
    }
    return worst;
}

VerificationReport residual_check(const std::vector<SolveReport>& refinements, const ScalarField& f,
                                  const OperatorParams& params, const QuadratureSpec& quad,
                                  double window) {
    VerificationReport r;
    r.check_name = "interior_residual";
    std::ostringstream canon;
    canon << "residual|" << window;
    std::vector<double> res;
    for (const auto& rep : refinements) {
        res.push_back(interior_residual(rep, f, params, quad, window));
        r.values.emplace_back("residual_n" + std::to_string(rep.solution.mesh.n), res.back());
        canon << '|' << report_digest("", rep);
    }
    r.inputs_digest = digest(canon.str());
    bool decreasing = res.size() >= 2;
    double worst_ratio = 0.0;
    for (std::size_t i = 1; i < res.size(); ++i) {
        if (res[i - 1] == 0.0 && res[i] == 0.0) continue;
        const double q = res[i] / res[i - 1];
        worst_ratio = std::max(worst_ratio, q);
        if (!(res[i] < res[i - 1])) decreasing = false;
    }
    const bool all_zero =
        !res.empty() && std::all_of(res.begin(), res.end(), [](double x) { return x == 0.0; });
    r.measured = all_zero ? 0.0 : worst_ratio;
    r.threshold = 1.0;
    r.passed = all_zero || decreasing;
    r.notes = all_zero ? "residual vanishes identically"
                       : "largest ratio of successive residuals, must stay below 1";
    return r;
}

std::optional<int> sobolev_index(int m, int N) {
    const int twice = 2 * m - N;  // 2 (m - N/2)
    if (twice <= 0) return std::nullopt;
    if (twice % 2 == 0) return twice / 2 - 1;
    return (twice - 1) / 2;
}

ScalarField random_nonnegative_load(std::mt19937_64& rng, double a, double b, int knots) {
    if (knots < 2 || !(b > a)) {
        throw DomainError("random load needs at least two knots on a nonempty interval");
    }
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> vals(knots);
    for (double& v : vals) v = dist(rng);
    const double h = (b - a) / (knots - 1);
    std::vector<double> kinks;
    for (int k = 0; k < knots; ++k) kinks.push_back(a + k * h);
    return ScalarField::line(
        [vals, a, b, h](double x) {
            if (x < a || x > b) return 0.0;
            const double t = (x - a) / h;
            const int k = std::min(static_cast<int>(t), static_cast<int>(vals.size()) - 2);
            const double lam = t - k;
            return (1.0 - lam) * vals[k] + lam * vals[k + 1];
        },
        [](double) { return 0.0; }, std::move(kinks),
        TailModel::compact(std::max(std::abs(a), std::abs(b))));
}

std::string format_report(const VerificationReport& r) {
    std::ostringstream o;
    o << std::setprecision(17);
    o << "check_name = " << r.check_name << '\n';
    o << "passed = " << (r.passed ? "true" : "false") << '\n';
    o << "measured = " << r.measured << '\n';
    o << "threshold = " << r.threshold << '\n';
    o << "inputs_digest = " << r.inputs_digest << '\n';
    o << "notes = " << r.notes << '\n';
    for (const auto& [k, v] : r.values) {
        o << "value." << k << " = " << v << '\n';
    }
    return o.str();
}

ScalarField manufactured_solution() {
    return ScalarField::line(
        [](double x) {
            const double q = 1.0 - x * x;
            return std::abs(x) < 1.0 ? q * q * q : 0.0;
        },
        [](double x) {
            if (std::abs(x) >= 1.0) return 0.0;
            const double q = 1.0 - x * x;
            return -6.0 * q * q + 24.0 * x * x * q;
        },
        {-1.0, 1.0}, TailModel::compact(1.0));
}

}  // namespace mixedlap
