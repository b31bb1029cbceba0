#include "mixedlap/solve.hpp"

#include "mixedlap/errors.hpp"
#include "mixedlap/quadrature.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace mixedlap {

namespace {

struct LinearSolution {
    Eigen::VectorXd u;
    double residual = 0.0;
    int iterations = 0;
};

double min_eigenvalue(const Eigen::MatrixXd& A) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

LinearSolution conjugate_gradients(const Eigen::MatrixXd& A, const Eigen::VectorXd& F,
                                   const Eigen::VectorXd& guess, const SolveOptions& options) {
    Eigen::ConjugateGradient<Eigen::MatrixXd, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(0.1 * options.tolerance);
    cg.setMaxIterations(options.max_iterations);
    cg.compute(A);
    LinearSolution out;
    out.u = cg.solveWithGuess(F, guess);
    out.iterations = static_cast<int>(cg.iterations());
    out.residual = (F - A * out.u).norm();
    return out;
}

LinearSolution solve_linear(const Eigen::MatrixXd& A, const Eigen::VectorXd& F,
                            const SolveOptions& options) {
    const double target = options.tolerance * F.norm();
    if (F.norm() == 0.0) {
        return {Eigen::VectorXd::Zero(F.size()), 0.0, 0};
    }
    if (options.iterative) {
        LinearSolution out = conjugate_gradients(A, F, Eigen::VectorXd::Zero(F.size()), options);
        if (out.residual > target) {
            throw NumericalError("conjugate gradients did not reach the residual target",
                                 min_eigenvalue(A));
        }
        return out;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("Cholesky factorisation failed: matrix not positive definite",
                             min_eigenvalue(A));
    }
    LinearSolution out;
    out.u = llt.solve(F);
    Eigen::VectorXd r = F - A * out.u;
    out.residual = r.norm();
    while (out.residual > target && out.iterations < 3) {
        out.u += llt.solve(r);
        r = F - A * out.u;
        out.residual = r.norm();
        ++out.iterations;
    }
    if (out.residual > target) {
        out = conjugate_gradients(A, F, out.u, options);
        if (out.residual > target) {
            throw NumericalError("residual target not reached", min_eigenvalue(A));
        }
    }
    return out;
}

double l2_norm_on_mesh(const ScalarField& f, const Mesh& mesh) {
    const quad::Rule& rule = quad::gauss_legendre_rule(6);
    CompensatedSum sum;
    for (int e = 0; e < mesh.elements(); ++e) {
        const double x0 = mesh.a + e * mesh.h;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double v = f(x0 + 0.5 * (rule.nodes[q] + 1.0) * mesh.h);
            sum.add(0.5 * rule.weights[q] * mesh.h * v * v);
        }
    }
    return std::sqrt(sum.value());
}

SolveReport make_report(const StiffnessSystem& sys, const LinearSolution& sol,
                        const Eigen::VectorXd& F, double l2f) {
    SolveReport rep;
    rep.solution = GridFunction{sys.mesh, sol.u};
    rep.residual_norm = sol.residual;
    rep.load_norm = F.norm();
    rep.energy = sys.local.quadratic(sol.u, sol.u) + sol.u.dot(sys.nonlocal * sol.u);
    rep.x_norm = std::sqrt(sys.local.quadratic(sol.u, sol.u));
    rep.l2_f_norm = l2f;
    if (l2f > 0.0) {
        rep.ratio_energy = rep.x_norm / l2f;
    } else {
        rep.ratio_energy = rep.x_norm == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    }
    rep.iterations = sol.iterations;
    return rep;
}

}  // namespace

double SolveReport::operator()(double x) const {
    const Mesh& m = solution.mesh;
    if (x <= m.a || x >= m.b) {
        return exterior(x);
    }
    const double t = (x - m.a) / m.h;
    const int k = std::clamp(static_cast<int>(std::floor(t)), 0, m.n);
    const double lam = t - k;
    const double left = k >= 1 ? solution.coeffs(k - 1) : exterior(m.a);
    const double right = k + 1 <= m.n ? solution.coeffs(k) : exterior(m.b);
    return (1.0 - lam) * left + lam * right;
}

SolveReport solve_dirichlet(const StiffnessSystem& sys, const ScalarField& f,
                            const SolveOptions& options) {
    const Eigen::VectorXd F = load_vector(f, sys.mesh);
    const LinearSolution sol = solve_linear(sys.combined(), F, options);
    return make_report(sys, sol, F, l2_norm_on_mesh(f, sys.mesh));
}

SolveReport lift_nonhomogeneous(const StiffnessSystem& sys, const ScalarField& f,
                                const ScalarField& g, const QuadratureSpec& quad,
                                const SolveOptions& options) {
    if (std::isinf(tail_integral(g, sys.params))) {
        throw DomainError("exterior datum is not in C_s (tail integral diverges)");
    }
    if (!g.has_laplacian()) {
        throw DomainError("exterior datum needs a second derivative near the domain");
    }
    const Mesh& mesh = sys.mesh;
    const OperatorParams& params = sys.params;
    // Source of the homogeneous problem: f - Lg.
    const ScalarField rhs = ScalarField::line(
        [&f, &g, &params, &quad](double x) { return f(x) - mixed_apply(g, x, params, quad); }, {},
        {}, TailModel::compact(std::max(std::abs(mesh.a), std::abs(mesh.b))));
    const Eigen::VectorXd F = load_vector(rhs, mesh);
    LinearSolution sol = solve_linear(sys.combined(), F, options);
    SolveReport rep = make_report(sys, sol, F, l2_norm_on_mesh(f, mesh));
    for (int i = 0; i < mesh.n; ++i) {
        rep.solution.coeffs(i) += g(mesh.node(i));
    }
    rep.exterior = g;
    return rep;
}

void write_solution_csv(std::ostream& out, const SolveReport& report) {
    const Mesh& m = report.solution.mesh;
    out << "x,u\n" << std::setprecision(17);
    for (int i = 0; i < m.n; ++i) {
        out << m.node(i) << ',' << report.solution.coeffs(i) << '\n';
    }
}

void write_report_json(std::ostream& out, const SolveReport& report) {
    const Mesh& m = report.solution.mesh;
    nlohmann::ordered_json j;
    j["a"] = m.a;
    j["b"] = m.b;
    j["n"] = m.n;
    j["h"] = m.h;
    j["residual_norm"] = report.residual_norm;
    j["load_norm"] = report.load_norm;
    j["energy"] = report.energy;
    j["x_norm"] = report.x_norm;
    j["l2_f_norm"] = report.l2_f_norm;
    j["ratio_energy"] = report.ratio_energy;
    j["iterations"] = report.iterations;
    j["solution"] = std::vector<double>(report.solution.coeffs.data(),
                                        report.solution.coeffs.data() + m.n);
    out << j.dump(2) << '\n';
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot open " + path + " for writing");
    }
    out << contents;
}

}  // namespace mixedlap
