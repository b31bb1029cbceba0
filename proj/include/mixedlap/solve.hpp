#pragma once

#include "mixedlap/assembly.hpp"

#include <iosfwd>
#include <string>

namespace mixedlap {

struct SolveOptions {
    double tolerance = 1e-10;  // relative residual target
    bool iterative = false;    // conjugate gradients instead of Cholesky
    int max_iterations = 10000;
};

struct SolveReport {
    GridFunction solution;
    /// Exterior data; zero for the homogeneous problem.
    ScalarField exterior = ScalarField::zero();
    double residual_norm = 0.0;  // ||A u - F||, on the homogeneous part
    double load_norm = 0.0;      // ||F||
    double energy = 0.0;         // B(u, u)
    double x_norm = 0.0;         // ||u_h'||_{L^2}
    double l2_f_norm = 0.0;
    double ratio_energy = 0.0;  // x_norm / l2_f_norm, NaN when f = 0 and u != 0
    int iterations = 0;        // refinement or CG steps

    /// Value of the computed u at x, using the exterior data outside (a, b).
    double operator()(double x) const;
};

SolveReport solve_dirichlet(const StiffnessSystem& sys, const ScalarField& f,
                            const SolveOptions& options = {});

/// Solves with exterior data g: u = v + g where v solves the homogeneous
/// problem with source f - Lg.
SolveReport lift_nonhomogeneous(const StiffnessSystem& sys, const ScalarField& f,
                                const ScalarField& g, const QuadratureSpec& quad = {},
                                const SolveOptions& options = {});

/// Columns x,u, one row per interior node.
void write_solution_csv(std::ostream& out, const SolveReport& report);
void write_report_json(std::ostream& out, const SolveReport& report);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace mixedlap
