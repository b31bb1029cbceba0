#include "mixedlap/kernel.hpp"

#include "mixedlap/errors.hpp"
#include "mixedlap/quadrature.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace mixedlap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
// Below this the C^2 zone around the evaluation point is considered empty.
constexpr double kMinSmoothRadius = 1e-12;

void check_order(double s) {
    if (!(s > 0.0 && s < 1.0)) {
        std::ostringstream msg;
        msg << "s must lie in (0,1), got " << s;
        throw DomainError(msg.str());
    }
}

double norm(ConstPoint x) {
    double acc = 0.0;
    for (double v : x) {
        acc += v * v;
    }
    return std::sqrt(acc);
}

TailSide scaled_side(const TailSide& side, double factor) {
    TailSide out = side;
    out.constant *= factor;
    for (auto& term : out.powers) {
        term.coeff *= factor;
    }
    return out;
}

TailSide add_sides(const TailSide& a, const TailSide& b) {
    TailSide out;
    out.constant = a.constant + b.constant;
    out.powers = a.powers;
    out.powers.insert(out.powers.end(), b.powers.begin(), b.powers.end());
    return out;
}

TailClass classify(const TailSide& left, const TailSide& right) {
    const bool powers = !left.powers.empty() || !right.powers.empty();
    if (powers) {
        return TailClass::power_growth;
    }
    if (left.constant != 0.0 || right.constant != 0.0) {
        return TailClass::bounded;
    }
    return TailClass::compact_support;
}

}  // namespace

/// |side(R/t)| weight(R/t) R / t^2 with the powers folded in, finite as t -> 0.
double far_tail_integrand(const TailSide& side, double R, double t, double s) {
    const double den = std::pow(t, 1.0 + 2.0 * s) + std::pow(R, 1.0 + 2.0 * s);
    double v = side.constant * R * std::pow(t, 2.0 * s - 1.0);
    for (const auto& term : side.powers) {
        v += term.coeff * std::pow(R, term.exponent + 1.0) *
             std::pow(t, 2.0 * s - 1.0 - term.exponent);
    }
    return std::abs(v) / den;
}

namespace {

/// int_R^inf (z + shift)^p z^{-1-2s} dz for p < 2s and |shift| < R.
double power_tail(double p, double shift, double R, double s) {
    if (p >= 2.0 * s) {
        std::ostringstream msg;
        msg << "tail exponent " << p << " >= 2s = " << 2.0 * s << ": field is not in C_s";
        throw TailDivergenceError(msg.str());
    }
    const double ratio = shift / R;
    double binom = 1.0;
    double ratio_pow = 1.0;
    CompensatedSum sum;
    for (int k = 0; k < 200; ++k) {
        const double term = binom * ratio_pow / (2.0 * s - p + k);
        sum.add(term);
        if (k > 2 && std::abs(term) < 1e-18 * std::abs(sum.value())) {
            break;
        }
        binom *= (p - k) / (k + 1.0);
        ratio_pow *= ratio;
        if (binom == 0.0) {
            break;
        }
    }
    return std::pow(R, p - 2.0 * s) * sum.value();
}

/// Second-difference integral I = int_0^inf (2 u0 - g(z) - g(-z)) z^{-1-2s} dz
/// of a function restricted to a line through the evaluation point.
struct LineProblem {
    LineFunction g;
    double u0 = 0.0;
    double smooth_radius = kInf;
    std::vector<double> breaks;
    double far_radius = 1.0;
    std::function<double(double)> tail;
    std::optional<double> second_derivative;
};

Integral second_difference_integral(const LineProblem& lp, double s, const QuadratureSpec& quad) {
    if (lp.smooth_radius < kMinSmoothRadius) {
        throw DomainError("evaluation point lies on (or within 1e-12 of) a non-smooth point");
    }
    const double exponent = -1.0 - 2.0 * s;
    const double r_in = std::min({quad.inner_radius, 0.5 * lp.smooth_radius, 0.5 * lp.far_radius});
    auto second_diff = [&](double z) { return lp.g(z) + lp.g(-z) - 2.0 * lp.u0; };

    // Inner zone: geometric panels toward z = 0; on the innermost one the
    // second-difference quotient is replaced by d0 + d2 z^2.
    CompensatedSum inner;
    double hi = r_in;
    for (int k = 0; k < quad.panels; ++k) {
        const double lo = 0.5 * hi;
        inner.add(-quad::gauss_legendre20(
            [&](double z) { return second_diff(z) * std::pow(z, exponent); }, lo, hi));
        hi = lo;
    }
    const double q_hi = second_diff(hi) / (hi * hi);
    double d0 = 0.0;
    double d2 = 0.0;
    if (lp.second_derivative) {
        d0 = *lp.second_derivative;
        d2 = (q_hi - d0) / (hi * hi);
    } else {
        const double q_mid = second_diff(0.5 * hi) / (0.25 * hi * hi);
        d0 = (4.0 * q_mid - q_hi) / 3.0;
        d2 = (q_hi - q_mid) / (0.75 * hi * hi);
    }
    inner.add(-d0 * std::pow(hi, 2.0 - 2.0 * s) / (2.0 - 2.0 * s));
    inner.add(-d2 * std::pow(hi, 4.0 - 2.0 * s) / (4.0 - 2.0 * s));

    // Outer zone: panels split at every kink crossing and geometrically.
    std::vector<double> breaks{r_in, lp.far_radius};
    for (double b : lp.breaks) {
        if (b > r_in && b < lp.far_radius) {
            breaks.push_back(b);
        }
    }
    for (double b = 2.0 * r_in; b < lp.far_radius; b *= 2.0) {
        breaks.push_back(b);
    }
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> panels;
    for (double b : breaks) {
        if (panels.empty() || b - panels.back() > 1e-13 * std::max(1.0, b)) {
            panels.push_back(b);
        }
    }
    const double rel_tol = std::clamp(quad.tolerance * 1e-3, 1e-14, 1e-6);
    Integral outer = quad::panels(
        [&](double z) { return -second_diff(z) * std::pow(z, exponent); }, panels, rel_tol);

    Integral total;
    CompensatedSum sum;
    sum.add(inner.value());
    sum.add(outer.value);
    sum.add(lp.tail(lp.far_radius));
    total.value = sum.value();
    total.error = outer.error;
    return total;
}

double frac_apply_line(const ScalarField& u, double x, const OperatorParams& params,
                       const QuadratureSpec& quad) {
    const double s = params.s;
    LineProblem lp;
    lp.g = [&u, x](double t) { return u(x + t); };
    lp.u0 = u(x);
    const std::array<double, 1> px{x};
    lp.smooth_radius = u.distance_to_kinks(px);
    for (double k : u.kinks) {
        lp.breaks.push_back(std::abs(x - k));
    }
    lp.far_radius = std::max({quad.outer_radius, u.tail.radius + std::abs(x), 2.0 * std::abs(x)});
    if (u.has_laplacian()) {
        lp.second_derivative = u.laplacian(px);
    }
    const TailModel& tail = u.tail;
    const double u0 = lp.u0;
    lp.tail = [&tail, u0, x, s](double R) {
        double t = (2.0 * u0 - tail.left.constant - tail.right.constant) * std::pow(R, -2.0 * s) /
                   (2.0 * s);
        for (const auto& term : tail.right.powers) {
            t -= term.coeff * power_tail(term.exponent, x, R, s);
        }
        for (const auto& term : tail.left.powers) {
            t -= term.coeff * power_tail(term.exponent, -x, R, s);
        }
        return t;
    };
    const Integral I = second_difference_integral(lp, s, quad);
    const double result = params.c_ns * I.value;
    const double err = params.c_ns * I.error;
    if (err > quad.tolerance * (1.0 + std::abs(result))) {
        throw AccuracyError("frac_apply: quadrature did not converge", err);
    }
    return result;
}

/// Line integral along direction theta for a field on R^N (compact support).
double directional_integral(const ScalarField& u, ConstPoint x, ConstPoint theta, double u0,
                            double s, const QuadratureSpec& quad, double* error) {
    const std::size_t n = x.size();
    std::vector<double> buf(n);
    LineProblem lp;
    lp.g = [&](double t) {
        for (std::size_t i = 0; i < n; ++i) {
            buf[i] = x[i] + t * theta[i];
        }
        return u.evaluate(buf);
    };
    lp.u0 = u0;
    lp.smooth_radius = u.distance_to_kinks(x);
    double b = 0.0;
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        b += x[i] * theta[i];
        r2 += x[i] * x[i];
    }
    for (double rho : u.kinks) {
        const double disc = b * b - (r2 - rho * rho);
        if (disc >= 0.0) {
            const double root = std::sqrt(disc);
            lp.breaks.push_back(std::abs(-b + root));
            lp.breaks.push_back(std::abs(-b - root));
        }
    }
    lp.far_radius = std::max(quad.outer_radius, u.tail.radius + std::sqrt(r2));
    lp.tail = [u0, s](double R) { return 2.0 * u0 * std::pow(R, -2.0 * s) / (2.0 * s); };
    const Integral I = second_difference_integral(lp, s, quad);
    if (error != nullptr) {
        *error = std::max(*error, I.error);
    }
    return I.value;
}

double frac_apply_multi(const ScalarField& u, ConstPoint x, const OperatorParams& params,
                        const QuadratureSpec& quad) {
    const int dim = params.dim;
    if (dim != 2 && dim != 3) {
        throw DomainError("pointwise evaluation supports dimensions 1, 2 and 3 only");
    }
    if (u.tail.kind != TailClass::compact_support) {
        throw DomainError("multi-dimensional fields must have compact support");
    }
    if (dim == 3 && !u.radial) {
        throw DomainError("three-dimensional evaluation requires a radial field");
    }
    const double u0 = u.evaluate(x);
    const double r = norm(x);
    std::vector<double> e1(dim, 0.0);
    std::vector<double> e2(dim, 0.0);
    if (r > 0.0 && u.radial) {
        for (int i = 0; i < dim; ++i) {
            e1[i] = x[i] / r;
        }
        // any unit vector orthogonal to e1
        const int j = std::abs(e1[0]) < 0.9 ? 0 : 1;
        std::vector<double> t(dim, 0.0);
        t[j] = 1.0;
        double dot = 0.0;
        for (int i = 0; i < dim; ++i) {
            dot += t[i] * e1[i];
        }
        double nn = 0.0;
        for (int i = 0; i < dim; ++i) {
            e2[i] = t[i] - dot * e1[i];
            nn += e2[i] * e2[i];
        }
        for (int i = 0; i < dim; ++i) {
            e2[i] /= std::sqrt(nn);
        }
    } else {
        e1[0] = 1.0;
        e2[1] = 1.0;
    }
    double err = 0.0;
    std::vector<double> theta(dim);
    auto along = [&](double phi) {
        for (int i = 0; i < dim; ++i) {
            theta[i] = std::cos(phi) * e1[i] + std::sin(phi) * e2[i];
        }
        return directional_integral(u, x, theta, u0, params.s, quad, &err);
    };
    double result = 0.0;
    const double rel_tol = std::clamp(quad.tolerance * 1e-2, 1e-12, 1e-6);
    if (u.radial && r == 0.0) {
        const double I = along(0.0);
        result = dim == 2 ? params.c_ns * kPi * I : params.c_ns * 2.0 * kPi * I;
    } else if (dim == 2) {
        // (c/2) over the unit circle; I(theta) = I(-theta).
        const Integral ang = quad::gauss_kronrod(along, 0.0, kPi, rel_tol, 10);
        result = params.c_ns * ang.value;
        err = params.c_ns * (ang.error + kPi * err);
    } else {
        // Axisymmetric about e1: (c/2) * 2 pi * int_0^pi I(phi) sin(phi) dphi.
        const Integral ang = quad::gauss_kronrod(
            [&](double phi) { return along(phi) * std::sin(phi); }, 0.0, 0.5 * kPi, rel_tol, 10);
        result = params.c_ns * 2.0 * kPi * ang.value;
        err = params.c_ns * 2.0 * kPi * (ang.error + err);
    }
    if (err > quad.tolerance * (1.0 + std::abs(result))) {
        throw AccuracyError("frac_apply: angular quadrature did not converge", err);
    }
    return result;
}

}  // namespace

// --- OperatorParams / TailModel / QuadratureSpec --------------------------

OperatorParams OperatorParams::make(int dim, double s, LocalSign sign) {
    if (dim < 1) {
        throw DomainError("dimension must be >= 1");
    }
    check_order(s);
    return OperatorParams{dim, s, sign, normalization_constant(dim, s)};
}

void OperatorParams::validate() const {
    if (dim < 1) {
        throw DomainError("dimension must be >= 1");
    }
    check_order(s);
    if (!(c_ns > 0.0) || !std::isfinite(c_ns)) {
        throw DomainError("normalisation constant must be positive and finite");
    }
}

TailModel TailModel::compact(double radius) {
    TailModel t;
    t.kind = TailClass::compact_support;
    t.radius = radius;
    return t;
}

TailModel TailModel::bounded(double radius, double left_value, double right_value) {
    TailModel t;
    t.radius = radius;
    t.left.constant = left_value;
    t.right.constant = right_value;
    t.kind = classify(t.left, t.right);
    return t;
}

TailModel TailModel::power_growth(double radius, TailSide left, TailSide right) {
    TailModel t;
    t.radius = radius;
    t.left = std::move(left);
    t.right = std::move(right);
    t.kind = classify(t.left, t.right);
    return t;
}

double TailModel::growth_exponent() const {
    double e = 0.0;
    for (const auto* side : {&left, &right}) {
        for (const auto& term : side->powers) {
            if (term.coeff != 0.0) {
                e = std::max(e, term.exponent);
            }
        }
    }
    return e;
}

std::string TailModel::describe() const {
    std::ostringstream out;
    switch (kind) {
        case TailClass::compact_support:
            out << "compact_support(" << radius << ")";
            break;
        case TailClass::bounded:
            out << "bounded(" << radius << ")";
            break;
        case TailClass::power_growth:
            out << "power_growth(" << growth_exponent() << ")";
            break;
    }
    return out.str();
}

void QuadratureSpec::validate() const {
    if (!(inner_radius > 0.0) || !(outer_radius > inner_radius)) {
        throw DomainError("quadrature radii must satisfy 0 < inner_radius < outer_radius");
    }
    if (panels < 1) {
        throw DomainError("quadrature panel count must be positive");
    }
    if (!(tolerance > 0.0)) {
        throw DomainError("quadrature tolerance must be positive");
    }
}

// --- ScalarField -----------------------------------------------------------

double ScalarField::operator()(double x) const {
    const std::array<double, 1> p{x};
    return evaluate(p);
}

double ScalarField::distance_to_kinks(ConstPoint x) const {
    double d = kInf;
    if (dim == 1) {
        for (double k : kinks) {
            d = std::min(d, std::abs(x[0] - k));
        }
    } else {
        const double r = norm(x);
        for (double k : kinks) {
            d = std::min(d, std::abs(r - k));
        }
    }
    return d;
}

ScalarField ScalarField::line(LineFunction u, LineFunction second_derivative,
                              std::vector<double> kinks, TailModel tail) {
    ScalarField f;
    f.dim = 1;
    f.evaluate = [u = std::move(u)](ConstPoint p) { return u(p[0]); };
    if (second_derivative) {
        f.laplacian = [d2 = std::move(second_derivative)](ConstPoint p) { return d2(p[0]); };
    }
    std::sort(kinks.begin(), kinks.end());
    f.kinks = std::move(kinks);
    f.tail = std::move(tail);
    return f;
}

ScalarField ScalarField::radial_field(int dim, LineFunction profile, LineFunction laplacian_profile,
                                      std::vector<double> kink_radii, double support_radius) {
    ScalarField f;
    f.dim = dim;
    f.radial = true;
    f.evaluate = [profile = std::move(profile)](ConstPoint p) { return profile(norm(p)); };
    if (laplacian_profile) {
        f.laplacian = [lap = std::move(laplacian_profile)](ConstPoint p) { return lap(norm(p)); };
    }
    std::sort(kink_radii.begin(), kink_radii.end());
    f.kinks = std::move(kink_radii);
    f.tail = TailModel::compact(support_radius);
    return f;
}

ScalarField ScalarField::zero(int dim) {
    ScalarField f;
    f.dim = dim;
    f.radial = true;
    f.evaluate = [](ConstPoint) { return 0.0; };
    f.laplacian = [](ConstPoint) { return 0.0; };
    f.tail = TailModel::compact(0.0);
    return f;
}

ScalarField ScalarField::constant(double value) {
    return line([value](double) { return value; }, [](double) { return 0.0; }, {},
                TailModel::bounded(0.0, value, value));
}

ScalarField combine(double a, const ScalarField& u, double b, const ScalarField& v) {
    if (u.dim != v.dim) {
        throw DomainError("cannot combine fields of different dimension");
    }
    ScalarField f;
    f.dim = u.dim;
    f.radial = u.radial && v.radial;
    f.evaluate = [a, b, ue = u.evaluate, ve = v.evaluate](ConstPoint p) {
        return a * ue(p) + b * ve(p);
    };
    if (u.has_laplacian() && v.has_laplacian()) {
        f.laplacian = [a, b, ul = u.laplacian, vl = v.laplacian](ConstPoint p) {
            return a * ul(p) + b * vl(p);
        };
    }
    f.kinks = u.kinks;
    f.kinks.insert(f.kinks.end(), v.kinks.begin(), v.kinks.end());
    std::sort(f.kinks.begin(), f.kinks.end());
    f.kinks.erase(std::unique(f.kinks.begin(), f.kinks.end()), f.kinks.end());
    f.tail.radius = std::max(u.tail.radius, v.tail.radius);
    f.tail.left = add_sides(scaled_side(u.tail.left, a), scaled_side(v.tail.left, b));
    f.tail.right = add_sides(scaled_side(u.tail.right, a), scaled_side(v.tail.right, b));
    f.tail.kind = classify(f.tail.left, f.tail.right);
    return f;
}

ScalarField translated(const ScalarField& u, double shift) {
    if (u.dim != 1) {
        throw DomainError("translation is implemented for 1D fields");
    }
    if (!u.tail.left.powers.empty() || !u.tail.right.powers.empty()) {
        throw DomainError("translating a power-growth tail does not preserve its exact form");
    }
    ScalarField f = u;
    f.evaluate = [ue = u.evaluate, shift](ConstPoint p) {
        const std::array<double, 1> q{p[0] - shift};
        return ue(q);
    };
    if (u.has_laplacian()) {
        f.laplacian = [ul = u.laplacian, shift](ConstPoint p) {
            const std::array<double, 1> q{p[0] - shift};
            return ul(q);
        };
    }
    for (double& k : f.kinks) {
        k += shift;
    }
    f.tail.radius = u.tail.radius + std::abs(shift);
    return f;
}

ScalarField dilated(const ScalarField& u, double eps) {
    if (!(eps > 0.0)) {
        throw DomainError("dilation factor must be positive");
    }
    ScalarField f = u;
    const double inv = 1.0 / eps;
    f.evaluate = [ue = u.evaluate, inv](ConstPoint p) {
        std::array<double, 3> q{};
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i] = p[i] * inv;
        }
        return ue(ConstPoint(q.data(), p.size()));
    };
    if (u.has_laplacian()) {
        f.laplacian = [ul = u.laplacian, inv](ConstPoint p) {
            std::array<double, 3> q{};
            for (std::size_t i = 0; i < p.size(); ++i) {
                q[i] = p[i] * inv;
            }
            return ul(ConstPoint(q.data(), p.size())) * inv * inv;
        };
    }
    for (double& k : f.kinks) {
        k *= eps;
    }
    f.tail.radius = u.tail.radius * eps;
    for (auto* side : {&f.tail.left, &f.tail.right}) {
        for (auto& term : side->powers) {
            term.coeff *= std::pow(inv, term.exponent);
        }
    }
    return f;
}

// --- normalisation constant -----------------------------------------------

double normalization_constant(int dim, double s) {
    if (dim < 1) {
        throw DomainError("dimension must be >= 1");
    }
    check_order(s);

    // Radial factor K = int_0^inf (1 - cos t) t^{-1-2s} dt.
    // [0, 1]: termwise integration of the cosine series.
    CompensatedSum radial;
    double fact = 1.0;  // (2k)!
    for (int k = 1; k < 30; ++k) {
        fact *= (2.0 * k - 1.0) * (2.0 * k);
        const double term = (k % 2 == 1 ? 1.0 : -1.0) / (fact * (2.0 * k - 2.0 * s));
        radial.add(term);
        if (std::abs(term) < 1e-20) {
            break;
        }
    }
    // [1, T]: one period per panel.
    constexpr int kPeriods = 64;
    const double T = 2.0 * kPi * kPeriods;
    auto integrand = [s](double t) {
        const double h = std::sin(0.5 * t);
        return 2.0 * h * h * std::pow(t, -1.0 - 2.0 * s);
    };
    double error = 0.0;
    {
        const Integral first = quad::gauss_kronrod(integrand, 1.0, 2.0 * kPi, 1e-14);
        radial.add(first.value);
        error += first.error;
    }
    for (int k = 1; k < kPeriods; ++k) {
        const Integral piece =
            quad::gauss_kronrod(integrand, 2.0 * kPi * k, 2.0 * kPi * (k + 1), 1e-14);
        radial.add(piece.value);
        error += piece.error;
    }
    // [T, inf): power law minus the oscillatory part, whose asymptotic series
    // follows from repeated integration by parts (sin T = 0, cos T = 1).
    const double mu = 1.0 + 2.0 * s;
    radial.add(std::pow(T, -2.0 * s) / (2.0 * s));
    double coeff = mu;
    double osc = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double term = coeff * std::pow(T, -mu - 1.0 - 2.0 * k);
        osc += (k % 2 == 0 ? term : -term);
        coeff *= (mu + 2.0 * k + 1.0) * (mu + 2.0 * k + 2.0);
        if (term < 1e-22) {
            break;
        }
    }
    radial.add(-osc);
    const double K = radial.value();

    // Angular factor int_{S^{N-1}} |theta_1|^{2s} dtheta.
    double angular = 2.0;
    if (dim >= 2) {
        const double m = dim - 1.0;  // |S^{N-2}| = 2 pi^{m/2} / Gamma(m/2)
        const double sphere = 2.0 * std::pow(kPi, 0.5 * m) / std::tgamma(0.5 * m);
        // int_0^{pi/2} cos^{2s} sin^{N-2} = B(s + 1/2, (N-1)/2) / 2
        angular = sphere * boost::math::beta(s + 0.5, 0.5 * m);
    }
    const double c = 1.0 / (K * angular);
    const double rel_err = error / (K * angular);
    if (!(rel_err <= 1e-9)) {
        throw AccuracyError("normalization_constant: quadrature did not reach 1e-9", rel_err);
    }
    return c;
}

// --- pointwise operators ---------------------------------------------------

double frac_apply(const ScalarField& u, ConstPoint x, const OperatorParams& params,
                  const QuadratureSpec& quad) {
    params.validate();
    quad.validate();
    if (static_cast<int>(x.size()) != params.dim || u.dim != params.dim) {
        throw DomainError("point, field and operator dimensions disagree");
    }
    if (u.tail.kind == TailClass::power_growth && u.tail.growth_exponent() >= 2.0 * params.s) {
        throw TailDivergenceError("field grows too fast at infinity: not in C_s");
    }
    if (params.dim == 1) {
        return frac_apply_line(u, x[0], params, quad);
    }
    return frac_apply_multi(u, x, params, quad);
}

double frac_apply(const ScalarField& u, double x, const OperatorParams& params,
                  const QuadratureSpec& quad) {
    const std::array<double, 1> p{x};
    return frac_apply(u, ConstPoint(p), params, quad);
}

double mixed_apply(const ScalarField& u, ConstPoint x, const OperatorParams& params,
                   const QuadratureSpec& quad) {
    if (!u.has_laplacian()) {
        throw DomainError("mixed_apply needs the second derivative of the field");
    }
    const double frac = frac_apply(u, x, params, quad);
    const double lap = u.laplacian(x);
    return (params.local_sign == LocalSign::minus ? -lap : lap) + frac;
}

double mixed_apply(const ScalarField& u, double x, const OperatorParams& params,
                   const QuadratureSpec& quad) {
    const std::array<double, 1> p{x};
    return mixed_apply(u, ConstPoint(p), params, quad);
}

double tail_integral(const ScalarField& u, const OperatorParams& params) {
    params.validate();
    const double s = params.s;
    const int dim = params.dim;
    if (u.tail.growth_exponent() >= 2.0 * s) {
        return kInf;
    }
    if (dim == 1) {
        const double R = std::max(u.tail.radius, 1.0);
        std::vector<double> breaks{-R};
        for (double k : u.kinks) {
            if (k > -R && k < R) {
                breaks.push_back(k);
            }
        }
        breaks.push_back(R);
        auto weight = [s](double y) { return 1.0 / (1.0 + std::pow(std::abs(y), 1.0 + 2.0 * s)); };
        const Integral core = quad::panels(
            [&](double y) { return std::abs(u(y)) * weight(y); }, breaks, 1e-10);
        CompensatedSum sum;
        sum.add(core.value);
        for (const auto* side : {&u.tail.left, &u.tail.right}) {
            if (side->constant == 0.0 && side->powers.empty()) {
                continue;
            }
            // y = R / t maps [R, inf) onto (0, 1].
            const Integral far = quad::tanh_sinh(
                [&](double t) {
                    if (!(t > 0.0)) {
                        return 0.0;
                    }
                    return far_tail_integrand(*side, R, t, s);
                },
                0.0, 1.0, 1e-10);
            sum.add(far.value);
        }
        return sum.value();
    }
    if (!u.radial || u.tail.kind != TailClass::compact_support) {
        throw DomainError("tail_integral in dimension > 1 needs a compactly supported radial field");
    }
    const double m = static_cast<double>(dim);
    const double sphere = 2.0 * std::pow(kPi, 0.5 * m) / std::tgamma(0.5 * m);
    std::vector<double> breaks{0.0};
    for (double k : u.kinks) {
        if (k > 0.0 && k < u.tail.radius) {
            breaks.push_back(k);
        }
    }
    breaks.push_back(std::max(u.tail.radius, 1e-300));
    std::vector<double> point(dim, 0.0);
    const Integral core = quad::panels(
        [&](double r) {
            point[0] = r;
            return std::abs(u.evaluate(point)) * std::pow(r, m - 1.0) /
                   (1.0 + std::pow(r, m + 2.0 * s));
        },
        breaks, 1e-10);
    return sphere * core.value;
}

}  // namespace mixedlap
