#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace mixedlap {

/// Integration result with an a-posteriori error estimate.
struct Integral {
    double value = 0.0;
    double error = 0.0;

    Integral& operator+=(const Integral& other) {
        value += other.value;
        error += other.error;
        return *this;
    }
};

/// Neumaier-compensated running sum. Order of `add` calls fixes the result.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

using RealFunction = std::function<double(double)>;

namespace quad {

/// Double-exponential rule on [a, b]; tolerates algebraic endpoint singularities.
Integral tanh_sinh(const RealFunction& f, double a, double b, double rel_tol);

/// Adaptive Gauss-Kronrod (15 points) on [a, b].
Integral gauss_kronrod(const RealFunction& f, double a, double b, double rel_tol,
                       unsigned max_depth = 15);

/// Fixed 20-point Gauss-Legendre rule on [a, b].
double gauss_legendre20(const RealFunction& f, double a, double b);

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch is not needed for the
/// orders used here; values come from Boost's tables).
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const Rule& gauss_legendre_rule(int order);

/// Sums `f` over the panels [breaks[k], breaks[k+1]] with tanh-sinh.
Integral panels(const RealFunction& f, std::span<const double> breaks, double rel_tol);

}  // namespace quad
}  // namespace mixedlap
