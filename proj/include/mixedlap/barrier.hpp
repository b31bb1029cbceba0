#pragma once

#include "mixedlap/kernel.hpp"

#include <string>
#include <vector>

namespace mixedlap {

enum class LadderCase { high_s, low_s };

struct ExponentLadder {
    double s = 0.5;
    double rho = 0.0;
    int J = 0;
    std::vector<double> alphas;  // alpha_0 .. alpha_{J+1}; {1} for low_s
    LadderCase kind = LadderCase::low_s;

    /// Number of untruncated powers x_+^{alpha_j} in beta_sharp (J+1, or 0).
    int powers() const { return kind == LadderCase::high_s ? J + 1 : 0; }
    /// Exponent of the truncated top term w_alpha.
    double top_alpha() const { return alphas.back(); }
};

/// Grid extrema measured by the builder.
struct BarrierCertificate {
    double min_L_beta = 0.0;          // over (0, d), to compare with -C2
    double min_L_gamma = 0.0;         // over (0, ell), to compare with 1
    double min_gamma_beyond_ell = 0.0;
    double min_gamma_ratio = 0.0;     // min gamma(x) / x over (0, ell)
    double max_gamma_ratio = 0.0;     // max gamma(x) / x over (0, ell)
    double min_beta_beyond_d = 0.0;   // to compare with C0
    int beta_grid = 0;
    int gamma_grid = 0;
    bool certified = false;
};

struct BarrierParams {
    ExponentLadder ladder;
    std::vector<double> kappas;  // kappa_0 .. kappa_J (empty for low_s)
    std::vector<double> cs;      // c_0 .. c_{J+1} ({1} for low_s)
    OperatorParams op;
    QuadratureSpec quad;
    double d = 0.5;
    double C_sharp = 1.0;
    double S_d = 0.0;
    double C0 = 0.0;
    double C1 = 1.0;
    double C2 = 1.0;
    double ell = 0.0;
    double M = 1.0;
    double c_gamma = 0.5;
    double R = 0.0;          // truncation radius, 0 until set
    double rho_omega = 1.0;  // radius of a ball containing the domain
    int d_halvings = 0;
    BarrierCertificate certificate;
    std::string trace;
};

ExponentLadder build_ladder(double s);

/// kappa with (-Delta)^s x_+^alpha = kappa x_+^{alpha - 2s}.
double kappa(double alpha, double s, const QuadratureSpec& quad = {});

std::vector<double> coefficients(const ExponentLadder& ladder, const std::vector<double>& kappas);

/// x_+^alpha for x < 2L, (2L)^alpha beyond.
double w_alpha(double x, double alpha, double L);

ScalarField w_alpha_field(double alpha, double L);

/// beta_sharp, the corrector W, beta, beta_* and gamma as kernel fields.
ScalarField beta_sharp_field(const BarrierParams& p);
ScalarField corrector_field(const BarrierParams& p);
ScalarField beta_field(const BarrierParams& p);
ScalarField beta_star_field(const BarrierParams& p);
ScalarField gamma_field(const BarrierParams& p);

double beta(double x, const BarrierParams& p);
double gamma(double x, const BarrierParams& p);

/// Points where beta and gamma fail to be C^2.
std::vector<double> barrier_kinks(const BarrierParams& p);

BarrierParams build_barrier(double s, const QuadratureSpec& quad = {});

/// Sets the truncation radius; needs R > 4 rho_omega.
BarrierParams with_truncation(BarrierParams p, double rho_omega, double R);

/// gamma(x_1) * cutoff(x)
double theta(ConstPoint x, const BarrierParams& p, const ScalarField& cutoff);

/// int_{|y| >= R} |g(y)| / (1 + |y|^{N+2s}) dy
double tail_kappa(double R, const ScalarField& g, const OperatorParams& params);

std::string describe(const BarrierParams& p);

}  // namespace mixedlap
