#include "mixedlap/barrier.hpp"

#include "mixedlap/errors.hpp"
#include "mixedlap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

namespace mixedlap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxHalvings = 12;
constexpr int kBetaGrid = 400;
constexpr int kGammaGrid = 200;

double pos_pow(double x, double a) { return x > 0.0 ? std::pow(x, a) : 0.0; }

std::vector<double> geometric_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double r = std::log(hi / lo);
    for (int k = 0; k < n; ++k) {
        g[k] = lo * std::exp(r * k / (n - 1));
    }
    return g;
}

// Points in (0, x_max) for the interior checks.
std::vector<double> interior_grid(double x_max, int n) {
    return geometric_grid(1e-6 * x_max, (1.0 - 1e-3) * x_max, n);
}

// Sum over the correction exponents j = 1 .. J+1 of c_j alpha_j (alpha_j - 1) x^{alpha_j - 2}.
double local_ladder(const BarrierParams& p, double x) {
    if (p.ladder.kind == LadderCase::low_s) return 0.0;
    double v = 0.0;
    for (std::size_t j = 1; j < p.cs.size(); ++j) {
        const double a = p.ladder.alphas[j];
        v += p.cs[j] * a * (a - 1.0) * std::pow(x, a - 2.0);
    }
    return v;
}

struct Corrector {
    double value, slope, curvature;
};

// W~ and its first two derivatives for x > 0.
Corrector corrector_core(const BarrierParams& p, double x) {
    const double lx = std::log(x);
    Corrector w{0.25 * x * x * (3.0 - 2.0 * lx), x * (1.0 - lx), -lx};
    if (p.ladder.kind == LadderCase::high_s) {
        const double k = 2.0 / p.C_sharp;
        for (std::size_t j = 1; j < p.cs.size(); ++j) {
            const double a = p.ladder.alphas[j];
            w.value += k * p.cs[j] * std::pow(x, a);
            w.slope += k * p.cs[j] * a * std::pow(x, a - 1.0);
        }
        w.curvature += k * local_ladder(p, x);
    }
    return w;
}

// W: W~ on (0, d], cubic Hermite decay to 0 on [d, 2d].
double corrector_value(const BarrierParams& p, double x, bool second) {
    const double d = p.d;
    if (x <= 0.0 || x >= 2.0 * d) return 0.0;
    if (x <= d) {
        const Corrector c = corrector_core(p, x);
        return second ? c.curvature : c.value;
    }
    const Corrector c = corrector_core(p, d);
    const double t = (x - d) / d;
    const double m = d * c.slope;
    if (second) {
        return (c.value * (12.0 * t - 6.0) + m * (6.0 * t - 4.0)) / (d * d);
    }
    const double h00 = 2.0 * t * t * t - 3.0 * t * t + 1.0;
    const double h10 = t * t * t - 2.0 * t * t + t;
    return c.value * h00 + m * h10;
}

double beta_sharp_value(const BarrierParams& p, double x, bool second) {
    if (x <= 0.0) return 0.0;
    const auto& al = p.ladder.alphas;
    double v = 0.0;
    for (int j = 0; j < p.ladder.powers(); ++j) {
        v += second ? p.cs[j] * al[j] * (al[j] - 1.0) * std::pow(x, al[j] - 2.0)
                    : p.cs[j] * std::pow(x, al[j]);
    }
    const double a = p.ladder.top_alpha();
    const double c = p.cs.back();
    if (x < 2.0) {
        v += second ? c * a * (a - 1.0) * std::pow(x, a - 2.0) : c * std::pow(x, a);
    } else if (!second) {
        v += c * std::pow(2.0, a);
    }
    return v;
}

TailModel beta_tail(const BarrierParams& p) {
    TailSide right;
    right.constant = p.cs.back() * std::pow(2.0, p.ladder.top_alpha());
    for (int j = 0; j < p.ladder.powers(); ++j) {
        right.powers.push_back({p.cs[j], p.ladder.alphas[j]});
    }
    if (right.powers.empty()) {
        return TailModel::bounded(2.0, 0.0, right.constant);
    }
    return TailModel::power_growth(2.0, TailSide{}, right);
}

double beta_star_value(const BarrierParams& p, double x, bool second) {
    const double l = p.ell;
    const double C = p.C2;
    if (x <= 0.0) return 0.0;
    if (x < l) return second ? 2.0 * C : C * x * x;
    if (second) return 0.0;
    if (x <= p.d) return 2.0 * C * l * x - C * l * l;
    return C * l * (2.0 * p.d - l);
}

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

}  // namespace

ExponentLadder build_ladder(double s) {
    if (!(s > 0.0 && s < 1.0)) {
        throw DomainError("s must lie in (0,1)");
    }
    ExponentLadder L;
    L.s = s;
    if (s <= 0.5) {
        L.kind = LadderCase::low_s;
        L.rho = 0.0;
        L.J = 0;
        L.alphas = {1.0};
        return L;
    }
    L.kind = LadderCase::high_s;
    L.rho = (2.0 * s - 1.0) / (2.0 * (1.0 - s));
    const double nearest = std::round(L.rho);
    const bool integral = std::abs(L.rho - nearest) <= 1e-9 * std::max(1.0, L.rho);
    L.J = integral ? static_cast<int>(nearest) - 1 : static_cast<int>(std::floor(L.rho));
    for (int j = 0; j <= L.J + 1; ++j) {
        L.alphas.push_back(1.0 + 2.0 * j * (1.0 - s));
    }
    if (integral) L.alphas.back() = 2.0 * s;
    return L;
}

double kappa(double alpha, double s, const QuadratureSpec& quad) {
    const OperatorParams op = OperatorParams::make(1, s);
    if (alpha >= 2.0 * s) {
        throw TailDivergenceError("x_+^alpha with alpha >= 2s is not in C_s");
    }
    if (alpha < 1.0) {
        throw DomainError("kappa needs alpha >= 1");
    }
    const ScalarField u = ScalarField::line(
        [alpha](double x) { return pos_pow(x, alpha); },
        [alpha](double x) { return x > 0.0 ? alpha * (alpha - 1.0) * std::pow(x, alpha - 2.0) : 0.0; },
        {0.0}, TailModel::power_growth(1.0, TailSide{}, TailSide{0.0, {{1.0, alpha}}}));
    const double k = frac_apply(u, 1.0, op, quad);
    for (double x : {0.5, 2.0}) {
        const double expect = k * std::pow(x, alpha - 2.0 * s);
        const double got = frac_apply(u, x, op, quad);
        const double err = std::abs(got - expect);
        if (err > 10.0 * quad.tolerance * std::max(1.0, std::abs(expect))) {
            std::ostringstream msg;
            msg << "homogeneity self-check failed at x=" << x << " (error " << err << ")";
            throw AccuracyError(msg.str(), err);
        }
    }
    return k;
}

std::vector<double> coefficients(const ExponentLadder& ladder, const std::vector<double>& kappas) {
    if (ladder.kind == LadderCase::low_s) {
        return {1.0};
    }
    if (static_cast<int>(kappas.size()) != ladder.J + 1) {
        throw DomainError("need one kappa per exponent alpha_0 .. alpha_J");
    }
    std::vector<double> c{1.0};
    for (int j = 1; j <= ladder.J + 1; ++j) {
        const double a = ladder.alphas[j];
        const double denom = a * (a - 1.0);
        if (!(denom > 0.0)) {
            throw DomainError("alpha_j (alpha_j - 1) must be positive for j >= 1");
        }
        if (!(kappas[j - 1] < 0.0)) {
            throw DomainError("kappa values must be negative");
        }
        c.push_back(-kappas[j - 1] * c[j - 1] / denom);
    }
    return c;
}

double w_alpha(double x, double alpha, double L) {
    if (x >= 2.0 * L) return std::pow(2.0 * L, alpha);
    return pos_pow(x, alpha);
}

ScalarField w_alpha_field(double alpha, double L) {
    return ScalarField::line(
        [alpha, L](double x) { return w_alpha(x, alpha, L); },
        [alpha, L](double x) {
            return x > 0.0 && x < 2.0 * L ? alpha * (alpha - 1.0) * std::pow(x, alpha - 2.0) : 0.0;
        },
        {0.0, 2.0 * L}, TailModel::bounded(2.0 * L, 0.0, std::pow(2.0 * L, alpha)));
}

ScalarField beta_sharp_field(const BarrierParams& p) {
    return ScalarField::line([p](double x) { return beta_sharp_value(p, x, false); },
                             [p](double x) { return beta_sharp_value(p, x, true); }, {0.0, 2.0},
                             beta_tail(p));
}

ScalarField corrector_field(const BarrierParams& p) {
    return ScalarField::line([p](double x) { return corrector_value(p, x, false); },
                             [p](double x) { return corrector_value(p, x, true); },
                             {0.0, p.d, 2.0 * p.d}, TailModel::compact(2.0 * p.d));
}

std::vector<double> barrier_kinks(const BarrierParams& p) {
    std::vector<double> k{0.0, p.d, 2.0 * p.d, 2.0};
    if (p.ell > 0.0) k.push_back(p.ell);
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    return k;
}

double beta(double x, const BarrierParams& p) {
    return beta_sharp_value(p, x, false) - p.C_sharp * corrector_value(p, x, false);
}

ScalarField beta_field(const BarrierParams& p) {
    return ScalarField::line(
        [p](double x) { return beta(x, p); },
        [p](double x) {
            return beta_sharp_value(p, x, true) - p.C_sharp * corrector_value(p, x, true);
        },
        barrier_kinks(p), beta_tail(p));
}

ScalarField beta_star_field(const BarrierParams& p) {
    return ScalarField::line([p](double x) { return beta_star_value(p, x, false); },
                             [p](double x) { return beta_star_value(p, x, true); },
                             {0.0, p.ell, p.d},
                             TailModel::bounded(p.d, 0.0, beta_star_value(p, 2.0 * p.d, false)));
}

double gamma(double x, const BarrierParams& p) {
    return p.M * (beta(x, p) - beta_star_value(p, x, false));
}

ScalarField gamma_field(const BarrierParams& p) {
    ScalarField g = combine(p.M, beta_field(p), -p.M, beta_star_field(p));
    g.kinks = barrier_kinks(p);
    return g;
}

BarrierParams build_barrier(double s, const QuadratureSpec& quad) {
    quad.validate();
    BarrierParams p;
    p.op = OperatorParams::make(1, s);
    p.quad = quad;
    p.ladder = build_ladder(s);
    std::ostringstream trace;
    trace << std::setprecision(6);
    if (p.ladder.kind == LadderCase::high_s) {
        for (int j = 0; j <= p.ladder.J; ++j) {
            p.kappas.push_back(kappa(p.ladder.alphas[j], s, quad));
        }
    }
    p.cs = coefficients(p.ladder, p.kappas);
    const double tol = quad.tolerance;
    const ScalarField top = w_alpha_field(p.ladder.top_alpha(), 1.0);

    p.d = 0.5;
    for (int attempt = 0; attempt <= kMaxHalvings; ++attempt, p.d *= 0.5) {
        p.d_halvings = attempt;
        p.ell = 0.0;
        const double d = p.d;
        trace << "d=" << d << ":";
        const std::vector<double> grid = interior_grid(d, kBetaGrid);

        // Log bound for the truncated top term.
        double ratio = 0.0;
        for (double x : grid) {
            const double v = p.cs.back() * frac_apply(top, x, p.op, quad);
            ratio = std::max(ratio, std::abs(v) / (1.0 + std::abs(std::log(x))));
        }
        p.C_sharp = std::max(1.25 * ratio, 1e-3);
        // W~ is increasing on (0, 1), so its running maximum up to d is W~(d).
        p.S_d = corrector_core(p, d).value;
        trace << " C_sharp=" << p.C_sharp << " S(d)=" << p.S_d;
        if (p.S_d > d / (4.0 * p.C_sharp)) {
            trace << " S(d) > d/(4 C_sharp)\n";
            continue;
        }

        double C1 = 1.0;
        bool lower_ok = true;
        for (double x : grid) {
            const double b = beta(x, p);
            if (b < 0.5 * x) lower_ok = false;
            if (b > 0.0) C1 = std::max({C1, b / x, x / b});
        }
        double beyond = kInf;
        for (double x : geometric_grid(d, 8.0, 200)) {
            beyond = std::min(beyond, beta(x, p));
        }
        if (!lower_ok || beyond < 0.5 * d) {
            trace << " beta lower bounds fail\n";
            continue;
        }
        p.C0 = 0.5 * d;
        p.C1 = 1.25 * C1;

        const ScalarField bf = beta_field(p);
        std::vector<double> Lb;
        Lb.reserve(grid.size());
        for (double x : grid) Lb.push_back(mixed_apply(bf, x, p.op, quad));
        const double min_Lb = min_of(Lb);
        p.C2 = std::max(1.25 * std::max(-min_Lb, 0.0), 1e-2);
        trace << " C1=" << p.C1 << " C2=" << p.C2;
        if (d > 1.0 / (4.0 * p.C1 * p.C2)) {
            trace << " d > 1/(4 C1 C2)\n";
            continue;
        }

        // ell from the three explicit conditions.
        double ell = 0.25 * d;
        auto ell_ok = [&](double l) {
            const double tail = 2.0 * p.op.c_ns * l * (2.0 * d - l) / (s * std::pow(d - l, 2.0 * s));
            return l <= 1.0 / (2.0 * p.C1 * p.C2) && l <= p.C0 * p.C1 && tail <= 0.5;
        };
        int shrink = 0;
        while (!ell_ok(ell) && shrink < 60) {
            ell *= 0.5;
            ++shrink;
        }
        if (!ell_ok(ell)) {
            trace << " no admissible ell\n";
            continue;
        }
        p.ell = ell;
        p.M = std::max(2.0 / p.C2, 2.0 * p.C1 / ell);
        p.c_gamma = std::min(p.M / (2.0 * p.C1), 1.0 / (p.M * p.C1));
        trace << " ell=" << ell << " M=" << p.M;

        BarrierCertificate cert;
        cert.min_L_beta = min_Lb;
        cert.beta_grid = kBetaGrid;
        cert.gamma_grid = kGammaGrid;
        cert.min_beta_beyond_d = beyond;
        const ScalarField gf = gamma_field(p);
        cert.min_L_gamma = kInf;
        cert.min_gamma_ratio = kInf;
        cert.max_gamma_ratio = 0.0;
        for (double x : interior_grid(ell, kGammaGrid)) {
            cert.min_L_gamma = std::min(cert.min_L_gamma, mixed_apply(gf, x, p.op, quad));
            const double r = gamma(x, p) / x;
            cert.min_gamma_ratio = std::min(cert.min_gamma_ratio, r);
            cert.max_gamma_ratio = std::max(cert.max_gamma_ratio, r);
        }
        cert.min_gamma_beyond_ell = kInf;
        for (double x : geometric_grid(ell, 16.0, 200)) {
            cert.min_gamma_beyond_ell = std::min(cert.min_gamma_beyond_ell, gamma(x, p));
        }
        cert.certified = cert.min_L_beta >= -p.C2 - 10.0 * tol &&
                         cert.min_L_gamma >= 1.0 - 10.0 * tol &&
                         cert.min_gamma_beyond_ell >= 1.0 - 10.0 * tol &&
                         cert.min_gamma_ratio >= p.c_gamma &&
                         cert.max_gamma_ratio <= 1.0 / p.c_gamma && cert.min_beta_beyond_d >= p.C0;
        p.certificate = cert;
        trace << " min L gamma=" << cert.min_L_gamma << (cert.certified ? " certified\n" : " rejected\n");
        if (cert.certified) {
            p.trace = trace.str();
            return p;
        }
    }
    throw ConstructionError("barrier inequalities not met after 12 halvings of d", trace.str());
}

BarrierParams with_truncation(BarrierParams p, double rho_omega, double R) {
    if (!(rho_omega > 0.0) || !(R > 4.0 * rho_omega)) {
        throw DomainError("truncation radius must exceed 4 rho_Omega");
    }
    p.rho_omega = rho_omega;
    p.R = R;
    return p;
}

double theta(ConstPoint x, const BarrierParams& p, const ScalarField& cutoff) {
    if (!(p.R > 4.0 * p.rho_omega)) {
        throw DomainError("truncation radius must exceed 4 rho_Omega");
    }
    if (x.empty() || static_cast<int>(x.size()) != cutoff.dim) {
        throw DomainError("point dimension does not match the cutoff");
    }
    return gamma(x[0], p) * cutoff(x);
}

double tail_kappa(double R, const ScalarField& g, const OperatorParams& params) {
    params.validate();
    if (!(R > 0.0)) {
        throw DomainError("tail_kappa needs R > 0");
    }
    const double s = params.s;
    if (g.tail.growth_exponent() >= 2.0 * s) return kInf;
    const double m = params.dim;
    auto weight = [&](double r) { return std::pow(r, m - 1.0) / (1.0 + std::pow(r, m + 2.0 * s)); };
    if (params.dim > 1) {
        if (!g.radial || g.tail.kind != TailClass::compact_support) {
            throw DomainError("tail_kappa in dimension > 1 needs a compactly supported radial field");
        }
        if (R >= g.tail.radius) return 0.0;
        std::vector<double> breaks{R};
        for (double k : g.kinks) {
            if (k > R && k < g.tail.radius) breaks.push_back(k);
        }
        breaks.push_back(g.tail.radius);
        std::vector<double> point(params.dim, 0.0);
        const Integral core = quad::panels(
            [&](double r) {
                point[0] = r;
                return std::abs(g(point)) * weight(r);
            },
            breaks, 1e-10);
        return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m) * core.value;
    }
    const double T = std::max(R, g.tail.radius);
    CompensatedSum sum;
    if (T > R) {
        for (int sign : {-1, 1}) {
            std::vector<double> breaks{R};
            for (double k : g.kinks) {
                const double r = sign * k;
                if (r > R && r < T) breaks.push_back(r);
            }
            std::sort(breaks.begin(), breaks.end());
            breaks.push_back(T);
            sum.add(quad::panels([&](double r) { return std::abs(g(sign * r)) * weight(r); }, breaks,
                                 1e-10)
                        .value);
        }
    }
    for (const auto* side : {&g.tail.left, &g.tail.right}) {
        if (side->constant == 0.0 && side->powers.empty()) continue;
        sum.add(quad::tanh_sinh(
                    [&](double t) { return t > 0.0 ? far_tail_integrand(*side, T, t, s) : 0.0; },
                    0.0, 1.0, 1e-12)
                    .value);
    }
    return sum.value();
}

std::string describe(const BarrierParams& p) {
    std::ostringstream out;
    out << std::setprecision(12);
    out << "s = " << p.ladder.s << '\n';
    out << "case = " << (p.ladder.kind == LadderCase::high_s ? "high_s" : "low_s") << '\n';
    out << "rho = " << p.ladder.rho << '\n';
    out << "J = " << p.ladder.J << '\n';
    auto list = [&out](const char* name, const std::vector<double>& v) {
        out << name << " =";
        for (double x : v) out << ' ' << x;
        out << '\n';
    };
    list("alphas", p.ladder.alphas);
    list("kappas", p.kappas);
    list("cs", p.cs);
    out << "d = " << p.d << '\n';
    out << "d_halvings = " << p.d_halvings << '\n';
    out << "C_sharp = " << p.C_sharp << '\n';
    out << "S_d = " << p.S_d << '\n';
    out << "C0 = " << p.C0 << '\n';
    out << "C1 = " << p.C1 << '\n';
    out << "C2 = " << p.C2 << '\n';
    out << "ell = " << p.ell << '\n';
    out << "M = " << p.M << '\n';
    out << "c_gamma = " << p.c_gamma << '\n';
    if (p.R > 0.0) out << "R = " << p.R << '\n';
    const auto& c = p.certificate;
    out << "min_L_beta = " << c.min_L_beta << '\n';
    out << "min_L_gamma = " << c.min_L_gamma << '\n';
    out << "min_gamma_beyond_ell = " << c.min_gamma_beyond_ell << '\n';
    out << "gamma_ratio_range = " << c.min_gamma_ratio << ' ' << c.max_gamma_ratio << '\n';
    out << "min_beta_beyond_d = " << c.min_beta_beyond_d << '\n';
    out << "certified = " << (c.certified ? "yes" : "no") << '\n';
    return out.str();
}

}  // namespace mixedlap
