#pragma once

#include "mixedlap/assembly.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace mixedlap::oracle {

inline double hat(double y, double centre, double h) {
    return std::max(0.0, 1.0 - std::abs(y - centre) / h);
}

// R(z) = int phi_i(y) phi_j(y + z) dy, exact (piecewise quadratic integrand).
inline double correlation(double xi, double xj, double h, double z) {
    std::vector<double> br{xi - h, xi, xi + h, xj - h - z, xj - z, xj + h - z};
    std::sort(br.begin(), br.end());
    const double lo = xi - h;
    const double hi = xi + h;
    double acc = 0.0;
    const double g = 1.0 / std::sqrt(3.0);
    for (std::size_t k = 0; k + 1 < br.size(); ++k) {
        const double a = std::max(br[k], lo);
        const double b = std::min(br[k + 1], hi);
        if (!(b > a)) continue;
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        for (double t : {-g, g}) {
            const double y = mid + half * t;
            acc += half * hat(y, xi, h) * hat(y + z, xj, h);
        }
    }
    return acc;
}

// Brute-force entry: c int_0^inf z^{-1-2s} (2R(0) - R(z) - R(-z)) dz. The
// bracket is a cubic on every [m h, (m+1) h]; on the first panel it is fitted
// exactly and integrated in closed form, elsewhere by 30-point Gauss.
inline double oracle_entry(int i, int j, const Mesh& mesh, const OperatorParams& params) {
    const double h = mesh.h;
    const double s = params.s;
    const double xi = mesh.node(i);
    const double xj = mesh.node(j);
    auto G = [&](double z) {
        return 2.0 * correlation(xi, xj, h, 0.0) - correlation(xi, xj, h, z) -
               correlation(xi, xj, h, -z);
    };
    // G(0) = G'(0) = 0; G = g2 z^2 + g3 z^3 on [0, h].
    const double ga = G(0.5 * h) / (0.25 * h * h);
    const double gb = G(h) / (h * h);
    const double g3 = (gb - ga) / (0.5 * h);
    const double g2 = ga - 0.5 * h * g3;
    double total = g2 * std::pow(h, 2.0 - 2.0 * s) / (2.0 - 2.0 * s) +
                   g3 * std::pow(h, 3.0 - 2.0 * s) / (3.0 - 2.0 * s);
    const int panels = std::abs(i - j) + 2;
    for (int m = 1; m < panels; ++m) {
        total += boost::math::quadrature::gauss<double, 30>::integrate(
            [&](double z) { return G(z) * std::pow(z, -1.0 - 2.0 * s); }, m * h, (m + 1) * h);
    }
    const double Z = panels * h;
    total += G(Z) * std::pow(Z, -2.0 * s) / (2.0 * s);
    return params.c_ns * total;
}

}  // namespace mixedlap::oracle
