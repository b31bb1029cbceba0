#include "mixedlap/assembly.hpp"

#include "mixedlap/errors.hpp"
#include "mixedlap/quadrature.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace mixedlap {

namespace {

/// (2^x - 1) / x, continuous at x = 0.
double pow2_quotient(double x) {
    if (x == 0.0) {
        return std::log(2.0);
    }
    return std::expm1(x * std::log(2.0)) / x;
}

/// Moments over the unit square of the touching-element configuration:
/// p2 = int p^2 (p+q)^{-1-2s}, pq = int p q (p+q)^{-1-2s}, p, q in (0, 1).
struct TouchingMoments {
    double p2;
    double pq;
};

TouchingMoments touching_moments(double s) {
    const double nu = -2.0 * s;
    // J = int_1^2 (t-1)^2 t^nu dt; the last term is the logarithmic branch at s = 1/2.
    const double j = (std::pow(2.0, nu + 3.0) - 1.0) / (nu + 3.0) -
                     2.0 * (std::pow(2.0, nu + 2.0) - 1.0) / (nu + 2.0) +
                     pow2_quotient(nu + 1.0);
    const double p2 = (j - 1.0 / (nu + 3.0)) / nu;
    // 2 (p2 + pq) = int (p+q)^{1-2s}
    const double sum = (std::pow(2.0, nu + 3.0) - 2.0) / ((nu + 2.0) * (nu + 3.0));
    return {p2, 0.5 * sum - p2};
}

using Block4 = std::array<std::array<double, 4>, 4>;

/// int_0^1 int_0^1 w_i w_j (m + eta - xi)^{-1-2s} with
/// w = (1 - xi, xi, -(1 - eta), -eta).
Block4 disjoint_block(int m, double s, int order) {
    const quad::Rule& rule = quad::gauss_legendre_rule(order);
    Block4 out{};
    const double exponent = -1.0 - 2.0 * s;
    for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
        const double xi = 0.5 * (rule.nodes[a] + 1.0);
        for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
            const double eta = 0.5 * (rule.nodes[b] + 1.0);
            const double weight =
                0.25 * rule.weights[a] * rule.weights[b] * std::pow(m + eta - xi, exponent);
            const std::array<double, 4> w{1.0 - xi, xi, -(1.0 - eta), -eta};
            for (int i = 0; i < 4; ++i) {
                for (int j = i; j < 4; ++j) {
                    out[i][j] += weight * w[i] * w[j];
                }
            }
        }
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < i; ++j) {
            out[i][j] = out[j][i];
        }
    }
    return out;
}

Block4 checked_disjoint_block(int m, double s, double tolerance) {
    const int order = m <= 4 ? 16 : 10;
    const Block4 coarse = disjoint_block(m, s, order);
    const Block4 fine = disjoint_block(m, s, order + 4);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double scale = std::abs(fine[i][i] * fine[j][j]);
            worst = std::max(worst, std::abs(fine[i][j] - coarse[i][j]) / std::sqrt(scale));
        }
    }
    if (worst > tolerance) {
        throw AccuracyError("nonlocal_stiffness: element-pair quadrature did not converge", worst);
    }
    return fine;
}

class Accumulator {
public:
    Accumulator(Eigen::MatrixXd& m, int n) : m_(m), n_(n) {}

    /// Full-grid node indices; boundary nodes 0 and n+1 are dropped.
    void add(int k1, int k2, double v) {
        if (k1 >= 1 && k1 <= n_ && k2 >= 1 && k2 <= n_) {
            m_(k1 - 1, k2 - 1) += v;
        }
    }

private:
    Eigen::MatrixXd& m_;
    int n_;
};

}  // namespace

// --- Mesh / GridFunction ---------------------------------------------------

Eigen::VectorXd Mesh::nodes() const {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) {
        x(i) = node(i);
    }
    return x;
}

bool Mesh::same_as(const Mesh& other) const {
    return a == other.a && b == other.b && n == other.n;
}

Mesh build_mesh(double a, double b, int n) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("mesh needs finite endpoints with a < b");
    }
    if (n < 1) {
        throw DomainError("mesh needs at least one interior node");
    }
    return Mesh{a, b, n, (b - a) / (n + 1)};
}

double GridFunction::operator()(double x) const {
    if (!(x > mesh.a && x < mesh.b)) {
        return 0.0;
    }
    const double t = (x - mesh.a) / mesh.h;
    int k = static_cast<int>(std::floor(t));  // element index
    k = std::clamp(k, 0, mesh.n);
    const double lam = t - k;
    const double left = k >= 1 ? coeffs(k - 1) : 0.0;
    const double right = k + 1 <= mesh.n ? coeffs(k) : 0.0;
    return (1.0 - lam) * left + lam * right;
}

ScalarField GridFunction::as_field() const {
    std::vector<double> kinks;
    kinks.reserve(mesh.n + 2);
    for (int k = 0; k <= mesh.n + 1; ++k) {
        kinks.push_back(mesh.a + k * mesh.h);
    }
    GridFunction self = *this;
    return ScalarField::line([self](double x) { return self(x); }, [](double) { return 0.0; },
                             std::move(kinks),
                             TailModel::compact(std::max(std::abs(mesh.a), std::abs(mesh.b))));
}

GridFunction interpolate(const Mesh& mesh, const LineFunction& u) {
    GridFunction g{mesh, Eigen::VectorXd(mesh.n)};
    for (int i = 0; i < mesh.n; ++i) {
        g.coeffs(i) = u(mesh.node(i));
    }
    return g;
}

// --- matrices ----------------------------------------------------------------

Eigen::MatrixXd Tridiagonal::dense() const {
    const auto n = diag.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = diag(i);
        if (i + 1 < n) {
            m(i, i + 1) = off(i);
            m(i + 1, i) = off(i);
        }
    }
    return m;
}

Eigen::VectorXd Tridiagonal::apply(const Eigen::VectorXd& x) const {
    const auto n = diag.size();
    Eigen::VectorXd y = diag.cwiseProduct(x);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        y(i) += off(i) * x(i + 1);
        y(i + 1) += off(i) * x(i);
    }
    return y;
}

double Tridiagonal::quadratic(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    return u.dot(apply(v));
}

Eigen::MatrixXd StiffnessSystem::combined() const {
    Eigen::MatrixXd m = nonlocal;
    m.diagonal() += local.diag;
    for (Eigen::Index i = 0; i + 1 < local.diag.size(); ++i) {
        m(i, i + 1) += local.off(i);
        m(i + 1, i) += local.off(i);
    }
    return m;
}

Tridiagonal local_stiffness(const Mesh& mesh) {
    Tridiagonal t;
    t.diag = Eigen::VectorXd::Constant(mesh.n, 2.0 / mesh.h);
    t.off = Eigen::VectorXd::Constant(std::max(mesh.n - 1, 0), -1.0 / mesh.h);
    return t;
}

Eigen::MatrixXd nonlocal_stiffness(const Mesh& mesh, const OperatorParams& params,
                                   const QuadratureSpec& quad) {
    params.validate();
    quad.validate();
    if (params.dim != 1) {
        throw DomainError("nonlocal_stiffness is implemented for N = 1");
    }
    const int n = mesh.n;
    const int ne = mesh.elements();
    const double s = params.s;
    const double c = params.c_ns;
    const double h = mesh.h;
    const double scale = std::pow(h, 1.0 - 2.0 * s);  // h^{3-2s} / h^2

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Accumulator acc(A, n);

    // Identical pairs: u(x) - u(y) = u' (x - y) on one element.
    const double self = 0.5 * c * scale * 2.0 / ((2.0 - 2.0 * s) * (3.0 - 2.0 * s));
    for (int e = 0; e < ne; ++e) {
        acc.add(e, e, self);
        acc.add(e + 1, e + 1, self);
        acc.add(e, e + 1, -self);
        acc.add(e + 1, e, -self);
    }

    // Touching pairs (both orderings), nodes e, e+1, e+2.
    const TouchingMoments tm = touching_moments(s);
    const double P2 = tm.p2;
    const double PQ = tm.pq;
    const std::array<std::array<double, 3>, 3> touch{{{P2, PQ - P2, -PQ},
                                                      {PQ - P2, 2.0 * P2 - 2.0 * PQ, PQ - P2},
                                                      {-PQ, PQ - P2, P2}}};
    for (int e = 0; e + 1 < ne; ++e) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                acc.add(e + i, e + j, c * scale * touch[i][j]);
            }
        }
    }

    // Disjoint pairs: one block per element offset, both orderings.
    const double block_tol = std::max(quad.tolerance * 1e-2, 1e-13);
    for (int m = 2; m < ne; ++m) {
        const Block4 blk = checked_disjoint_block(m, s, block_tol);
        for (int e = 0; e + m < ne; ++e) {
            const std::array<int, 4> nodes{e, e + 1, e + m, e + m + 1};
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    acc.add(nodes[i], nodes[j], c * scale * blk[i][j]);
                }
            }
        }
    }

    // Exterior strips: c int_E phi_i phi_j ((x-a)^{-2s} + (b-x)^{-2s}) / (2s).
    const quad::Rule& rule = quad::gauss_legendre_rule(12);
    for (int e = 0; e < ne; ++e) {
        std::array<std::array<double, 2>, 2> loc{};
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double xi = 0.5 * (rule.nodes[q] + 1.0);
            const double w = 0.5 * rule.weights[q] * h;
            // distances to a and b in units of h
            const double ta = e + xi;
            const double tb = ne - e - xi;
            double kappa = 0.0;
            if (e > 0) {
                kappa += std::pow(ta * h, -2.0 * s);
            }
            if (e < ne - 1) {
                kappa += std::pow(tb * h, -2.0 * s);
            }
            const std::array<double, 2> phi{1.0 - xi, xi};
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    loc[i][j] += w * phi[i] * phi[j] * kappa;
                }
            }
        }
        // Singular side of a boundary element: int_0^h (t/h)^2 t^{-2s} dt.
        const double edge = std::pow(h, 1.0 - 2.0 * s) / (3.0 - 2.0 * s);
        if (e == 0) {
            loc[1][1] += edge;
        }
        if (e == ne - 1) {
            loc[0][0] += edge;
        }
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                acc.add(e + i, e + j, c * loc[i][j] / (2.0 * s));
            }
        }
    }
    // Summation order differs between (i, j) and (j, i).
    const Eigen::MatrixXd sym = 0.5 * (A + A.transpose());
    return sym;
}

StiffnessSystem assemble(const Mesh& mesh, const OperatorParams& params,
                         const QuadratureSpec& quad) {
    const auto start = std::chrono::steady_clock::now();
    StiffnessSystem sys;
    sys.mesh = mesh;
    sys.params = params;
    sys.local = local_stiffness(mesh);
    sys.nonlocal = nonlocal_stiffness(mesh, params, quad);
    sys.assembly_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sys;
}

Eigen::VectorXd load_vector(const ScalarField& f, const Mesh& mesh) {
    const quad::Rule& rule = quad::gauss_legendre_rule(6);
    Eigen::VectorXd F = Eigen::VectorXd::Zero(mesh.n);
    for (int e = 0; e < mesh.elements(); ++e) {
        const double x0 = mesh.a + e * mesh.h;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double xi = 0.5 * (rule.nodes[q] + 1.0);
            const double fx = f(x0 + xi * mesh.h);
            if (!std::isfinite(fx)) {
                std::ostringstream msg;
                msg << "load_vector: non-finite source value at x = " << x0 + xi * mesh.h;
                throw InputError(msg.str());
            }
            const double w = 0.5 * rule.weights[q] * mesh.h * fx;
            if (e >= 1) {
                F(e - 1) += w * (1.0 - xi);
            }
            if (e + 1 <= mesh.n) {
                F(e) += w * xi;
            }
        }
    }
    return F;
}

double bilinear_eval(const GridFunction& u, const GridFunction& v, const StiffnessSystem& sys) {
    if (!u.mesh.same_as(sys.mesh) || !v.mesh.same_as(sys.mesh)) {
        throw DomainError("bilinear_eval: grid functions live on a different mesh");
    }
    return sys.local.quadratic(u.coeffs, v.coeffs) + u.coeffs.dot(sys.nonlocal * v.coeffs);
}

void write_matrix_market(std::ostream& out, const Eigen::MatrixXd& m) {
    const auto n = m.rows();
    std::size_t nnz = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = j; i < n; ++i) {
            nnz += m(i, j) != 0.0;
        }
    }
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << n << ' ' << m.cols() << ' ' << nnz << '\n';
    out << std::setprecision(17);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = j; i < n; ++i) {
            if (m(i, j) != 0.0) {
                out << i + 1 << ' ' << j + 1 << ' ' << m(i, j) << '\n';
            }
        }
    }
}

void write_matrix_market(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot open " + path + " for writing");
    }
    write_matrix_market(out, m);
}

}  // namespace mixedlap
