#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace mixedlap {

/// Which local term accompanies (-Delta)^s: minus gives -Delta + (-Delta)^s,
/// plus gives the wrong-sign operator Delta + (-Delta)^s.
enum class LocalSign { minus, plus };

struct OperatorParams {
    int dim = 1;
    double s = 0.5;
    LocalSign local_sign = LocalSign::minus;
    double c_ns = 0.0;

    /// Validates (dim, s) and fills in the normalisation constant.
    static OperatorParams make(int dim, double s, LocalSign sign = LocalSign::minus);
    void validate() const;
};

/// coeff * |y|^exponent
struct PowerTerm {
    double coeff = 0.0;
    double exponent = 0.0;
};

/// Exact form of a 1D field on one side beyond the tail radius:
/// u(y) = constant + sum coeff * |y|^exponent.
struct TailSide {
    double constant = 0.0;
    std::vector<PowerTerm> powers;
};

enum class TailClass { compact_support, bounded, power_growth };

/// Exact far-field description used for the analytic tail of (-Delta)^s.
/// For dim > 1 only compact support is supported.
struct TailModel {
    TailClass kind = TailClass::compact_support;
    double radius = 0.0;
    TailSide left;
    TailSide right;

    static TailModel compact(double radius);
    static TailModel bounded(double radius, double left_value, double right_value);
    static TailModel power_growth(double radius, TailSide left, TailSide right);

    /// Largest exponent among the power terms (0 when there are none).
    double growth_exponent() const;
    std::string describe() const;
};

struct QuadratureSpec {
    double inner_radius = 0.25;
    double outer_radius = 4.0;
    int panels = 6;
    double tolerance = 1e-8;

    void validate() const;
};

using ConstPoint = std::span<const double>;
using FieldFunction = std::function<double(ConstPoint)>;
using LineFunction = std::function<double(double)>;

/// A function on R^N known well enough to apply the operators pointwise.
///
/// `kinks` marks where the field fails to be C^2: points on the line when
/// dim == 1, radii of spheres centred at the origin otherwise. The field is
/// treated as C^2 everywhere else (its smooth region).
struct ScalarField {
    int dim = 1;
    FieldFunction evaluate;
    FieldFunction laplacian;  // empty when no second derivative is available
    std::vector<double> kinks;
    bool radial = false;
    TailModel tail;

    double operator()(double x) const;
    double operator()(ConstPoint x) const { return evaluate(x); }
    bool has_laplacian() const { return static_cast<bool>(laplacian); }

    /// Distance from x to the closest kink (infinity if there are none).
    double distance_to_kinks(ConstPoint x) const;

    static ScalarField line(LineFunction u, LineFunction second_derivative,
                            std::vector<double> kinks, TailModel tail);
    /// Radial field u(x) = profile(|x|) on R^dim; `laplacian_profile` gives
    /// Delta u as a function of |x| (may be empty).
    static ScalarField radial_field(int dim, LineFunction profile, LineFunction laplacian_profile,
                                    std::vector<double> kink_radii, double support_radius);
    static ScalarField zero(int dim = 1);
    static ScalarField constant(double value);
};

/// a*u + b*v (1D fields, or radial fields of equal dimension).
ScalarField combine(double a, const ScalarField& u, double b, const ScalarField& v);
/// x -> u(x - shift); 1D fields whose tails carry no power terms.
ScalarField translated(const ScalarField& u, double shift);
/// x -> u(x / eps), eps > 0.
ScalarField dilated(const ScalarField& u, double eps);

/// (int_{R^N} (1 - cos z_1) / |z|^{N+2s} dz)^{-1}.
double normalization_constant(int dim, double s);

/// (-Delta)^s u(x) in the second-difference form.
double frac_apply(const ScalarField& u, ConstPoint x, const OperatorParams& params,
                  const QuadratureSpec& quad = {});
double frac_apply(const ScalarField& u, double x, const OperatorParams& params,
                  const QuadratureSpec& quad = {});

/// -/+ Delta u(x) + (-Delta)^s u(x) according to params.local_sign.
double mixed_apply(const ScalarField& u, ConstPoint x, const OperatorParams& params,
                   const QuadratureSpec& quad = {});
double mixed_apply(const ScalarField& u, double x, const OperatorParams& params,
                   const QuadratureSpec& quad = {});

/// Integrand of int_R^inf |side(y)| / (1 + y^{1+2s}) dy after y = R / t.
double far_tail_integrand(const TailSide& side, double R, double t, double s);

/// int |u(y)| / (1 + |y|^{N+2s}) dy, or +infinity when the tail model
/// proves divergence.
double tail_integral(const ScalarField& u, const OperatorParams& params);

}  // namespace mixedlap
