#pragma once

#include "mixedlap/kernel.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <string>

namespace mixedlap {

/// Uniform partition of (a, b) with n interior nodes. Node k (1-based in the
/// full grid) sits at a + k h; the endpoints carry no unknowns.
struct Mesh {
    double a = -1.0;
    double b = 1.0;
    int n = 1;
    double h = 1.0;

    double node(int i) const { return a + (i + 1) * h; }  // i = 0..n-1
    Eigen::VectorXd nodes() const;
    int elements() const { return n + 1; }
    double length() const { return b - a; }
    bool same_as(const Mesh& other) const;
};

Mesh build_mesh(double a, double b, int n);

/// Piecewise-linear function with the given interior nodal values, zero at
/// and beyond the endpoints.
struct GridFunction {
    Mesh mesh;
    Eigen::VectorXd coeffs;

    double operator()(double x) const;
    /// As a kernel field (kinks at every node, compact support).
    ScalarField as_field() const;
};

GridFunction interpolate(const Mesh& mesh, const LineFunction& u);

struct Tridiagonal {
    Eigen::VectorXd diag;
    Eigen::VectorXd off;  // off(i) couples i and i+1

    Eigen::MatrixXd dense() const;
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    double quadratic(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
};

struct StiffnessSystem {
    Mesh mesh;
    OperatorParams params;
    Tridiagonal local;
    Eigen::MatrixXd nonlocal;
    double assembly_seconds = 0.0;

    /// local + nonlocal
    Eigen::MatrixXd combined() const;
};

Tridiagonal local_stiffness(const Mesh& mesh);
Eigen::MatrixXd nonlocal_stiffness(const Mesh& mesh, const OperatorParams& params,
                                   const QuadratureSpec& quad = {});
StiffnessSystem assemble(const Mesh& mesh, const OperatorParams& params,
                         const QuadratureSpec& quad = {});

/// int f phi_i over (a, b), six-point Gauss per element.
Eigen::VectorXd load_vector(const ScalarField& f, const Mesh& mesh);

/// u^T (local + nonlocal) v
double bilinear_eval(const GridFunction& u, const GridFunction& v, const StiffnessSystem& sys);

/// Matrix Market coordinate format, lower triangle of a symmetric matrix.
void write_matrix_market(std::ostream& out, const Eigen::MatrixXd& m);
void write_matrix_market(const std::string& path, const Eigen::MatrixXd& m);

}  // namespace mixedlap
