#include "fixtures.hpp"
#include "stiffness_oracle.hpp"
#include "mixedlap/assembly.hpp"
#include "mixedlap/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

using namespace mixedlap;

using oracle::oracle_entry;

TEST(Mesh, Examples) {
    const Mesh m1 = build_mesh(-1.0, 1.0, 1);
    EXPECT_DOUBLE_EQ(m1.h, 1.0);
    EXPECT_DOUBLE_EQ(m1.node(0), 0.0);
    const Mesh m3 = build_mesh(-1.0, 1.0, 3);
    EXPECT_DOUBLE_EQ(m3.h, 0.5);
    EXPECT_DOUBLE_EQ(m3.node(0), -0.5);
    EXPECT_DOUBLE_EQ(m3.node(1), 0.0);
    EXPECT_DOUBLE_EQ(m3.node(2), 0.5);
    const Mesh m7 = build_mesh(0.0, 2.0, 7);
    EXPECT_DOUBLE_EQ(m7.h, 0.25);
    EXPECT_EQ(m7.nodes().size(), 7);
    for (int i = 0; i + 1 < m7.n; ++i) {
        EXPECT_LT(m7.node(i), m7.node(i + 1));
    }
}

TEST(Mesh, RejectsBadInput) {
    EXPECT_THROW(build_mesh(1.0, 1.0, 3), DomainError);
    EXPECT_THROW(build_mesh(2.0, 1.0, 3), DomainError);
    EXPECT_THROW(build_mesh(-1.0, 1.0, 0), DomainError);
}

TEST(LocalStiffness, Examples) {
    const auto t1 = local_stiffness(build_mesh(-1.0, 1.0, 1)).dense();
    EXPECT_DOUBLE_EQ(t1(0, 0), 2.0);
    const auto t2 = local_stiffness(build_mesh(0.0, 1.0, 2)).dense();
    EXPECT_NEAR(t2(0, 0), 6.0, 1e-12);
    EXPECT_NEAR(t2(1, 1), 6.0, 1e-12);
    EXPECT_NEAR(t2(0, 1), -3.0, 1e-12);
    const auto t5 = local_stiffness(build_mesh(0.0, 1.0, 5)).dense();
    EXPECT_NEAR(t5.row(2).sum(), 0.0, 1e-12);
}

TEST(LocalStiffness, DiscretePoincare) {
    // Eigenvalues relative to the lumped mass h I.
    for (int n : {15, 31, 63}) {
        const Mesh mesh = build_mesh(-1.0, 1.0, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(local_stiffness(mesh).dense());
        const double lmin = eig.eigenvalues().minCoeff() / mesh.h;
        const double L = mesh.length();
        EXPECT_GE(lmin, std::numbers::pi * std::numbers::pi / (L * L) * (1.0 - 10.0 / (n * n)));
        EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
    }
}

TEST(NonlocalStiffness, MatchesMpmathFixtures) {
    const Mesh mesh = build_mesh(-1.0, 1.0, 9);
    auto check = [&](double s, int d, double expected) {
        const auto A = nonlocal_stiffness(mesh, OperatorParams::make(1, s));
        EXPECT_NEAR(A(0, d) / expected, 1.0, 1e-8) << "s=" << s << " |i-j|=" << d;
        EXPECT_NEAR(A(8 - d, 8) / expected, 1.0, 1e-8) << "s=" << s << " |i-j|=" << d;
    };
    check(0.5, 0, fixtures::kA_050_d0);
    check(0.5, 4, fixtures::kA_050_d4);
    check(0.5, 8, fixtures::kA_050_d8);
    check(0.25, 0, fixtures::kA_025_d0);
    check(0.25, 1, fixtures::kA_025_d1);
    check(0.25, 2, fixtures::kA_025_d2);
    check(0.25, 5, fixtures::kA_025_d5);
    check(0.75, 0, fixtures::kA_075_d0);
    check(0.75, 1, fixtures::kA_075_d1);
    check(0.75, 2, fixtures::kA_075_d2);
    check(0.75, 5, fixtures::kA_075_d5);
}

TEST(NonlocalStiffness, MatchesBruteForceOracle) {
    for (double s : {0.25, 0.5, 0.75}) {
        const auto params = OperatorParams::make(1, s);
        for (int n : {1, 4, 9, 17}) {
            const Mesh mesh = build_mesh(-1.0, 1.0, n);
            const auto A = nonlocal_stiffness(mesh, params);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    const double ref = oracle_entry(i, j, mesh, params);
                    EXPECT_NEAR(A(i, j), ref, 1e-8 * std::abs(ref))
                        << "s=" << s << " n=" << n << " (" << i << "," << j << ")";
                }
            }
        }
    }
}

TEST(NonlocalStiffness, SymmetricToeplitzAndPositiveSemidefinite) {
    std::mt19937 rng(20240607);
    std::normal_distribution<double> normal;
    for (double s : {0.2, 0.5, 0.85}) {
        const Mesh mesh = build_mesh(0.0, 3.0, 20);
        const auto A = nonlocal_stiffness(mesh, OperatorParams::make(1, s));
        for (int i = 0; i < mesh.n; ++i) {
            for (int j = 0; j < mesh.n; ++j) {
                EXPECT_EQ(A(i, j), A(j, i));
                const int d = std::abs(i - j);
                EXPECT_NEAR(A(i, j), A(d, 0), 1e-12 * std::abs(A(0, 0)));
            }
        }
        for (int trial = 0; trial < 100; ++trial) {
            Eigen::VectorXd x(mesh.n);
            for (auto& v : x) v = normal(rng);
            EXPECT_GE(x.dot(A * x), 0.0);
        }
    }
}

TEST(NonlocalStiffness, LogarithmicBranchIsContinuous) {
    const Mesh mesh = build_mesh(-1.0, 1.0, 6);
    const auto mid = nonlocal_stiffness(mesh, OperatorParams::make(1, 0.5));
    for (double ds : {1e-7, -1e-7}) {
        const auto near = nonlocal_stiffness(mesh, OperatorParams::make(1, 0.5 + ds));
        EXPECT_LT((near - mid).cwiseAbs().maxCoeff(), 1e-5 * mid.cwiseAbs().maxCoeff());
    }
}

TEST(NonlocalStiffness, SignStructureIsReported) {
    // No M-matrix property is asserted; the count is recorded for inspection.
    for (double s : {0.25, 0.5, 0.75}) {
        const auto A = nonlocal_stiffness(build_mesh(-1.0, 1.0, 15), OperatorParams::make(1, s));
        int positive = 0;
        for (int i = 0; i < A.rows(); ++i) {
            for (int j = 0; j < A.cols(); ++j) {
                positive += (i != j && A(i, j) > 0.0);
            }
        }
        RecordProperty("positive_offdiagonal_s" + std::to_string(static_cast<int>(100 * s)), positive);
        EXPECT_GT(A.diagonal().minCoeff(), 0.0);
    }
}

TEST(LoadVector, Examples) {
    const Mesh mesh = build_mesh(-1.0, 1.0, 7);
    EXPECT_EQ(load_vector(ScalarField::zero(), mesh).cwiseAbs().maxCoeff(), 0.0);
    const auto ones = load_vector(ScalarField::constant(1.0), mesh);
    for (int i = 0; i < mesh.n; ++i) {
        EXPECT_NEAR(ones(i), mesh.h, 1e-14);
    }
    const auto odd = load_vector(
        ScalarField::line([](double x) { return x; }, {}, {}, TailModel::compact(1.0)), mesh);
    for (int i = 0; i < mesh.n; ++i) {
        EXPECT_NEAR(odd(i), -odd(mesh.n - 1 - i), 1e-14);
    }
}

TEST(LoadVector, RejectsNonFiniteSource) {
    const Mesh mesh = build_mesh(-1.0, 1.0, 3);
    const auto bad = ScalarField::line([](double x) { return x > 0.3 ? std::nan("") : 1.0; }, {}, {},
                                       TailModel::compact(1.0));
    EXPECT_THROW(load_vector(bad, mesh), InputError);
}

TEST(BilinearEval, Examples) {
    const Mesh mesh = build_mesh(-1.0, 1.0, 12);
    const auto sys = assemble(mesh, OperatorParams::make(1, 0.6));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        GridFunction u{mesh, Eigen::VectorXd(mesh.n)};
        GridFunction v{mesh, Eigen::VectorXd(mesh.n)};
        for (int i = 0; i < mesh.n; ++i) {
            u.coeffs(i) = unif(rng);
            v.coeffs(i) = unif(rng);
        }
        EXPECT_GE(bilinear_eval(u, u, sys), sys.local.quadratic(u.coeffs, u.coeffs));
        EXPECT_NEAR(bilinear_eval(u, v, sys), bilinear_eval(v, u, sys), 1e-12);
        GridFunction zero{mesh, Eigen::VectorXd::Zero(mesh.n)};
        EXPECT_EQ(bilinear_eval(zero, v, sys), 0.0);
    }
    GridFunction other{build_mesh(-1.0, 1.0, 5), Eigen::VectorXd::Zero(5)};
    GridFunction u{mesh, Eigen::VectorXd::Zero(mesh.n)};
    EXPECT_THROW(bilinear_eval(u, other, sys), DomainError);
}

TEST(BilinearEval, CombinedMatrixIsPositiveDefinite) {
    for (double s : {0.1, 0.5, 0.9}) {
        const auto sys = assemble(build_mesh(-1.0, 1.0, 25), OperatorParams::make(1, s));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys.combined());
        EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
    }
}

TEST(BilinearEval, RefinementConsistency) {
    // Smooth bump supported in (-1/2, 1/2).
    auto u = [](double x) {
        const double t = 2.0 * x;
        return std::abs(t) < 1.0 ? std::pow(1.0 - t * t, 3) : 0.0;
    };
    for (double s : {0.3, 0.7}) {
        const auto params = OperatorParams::make(1, s);
        std::vector<double> energy;
        for (int n : {15, 31, 63, 127, 255}) {
            const Mesh mesh = build_mesh(-1.0, 1.0, n);
            const auto sys = assemble(mesh, params);
            const auto g = interpolate(mesh, u);
            energy.push_back(bilinear_eval(g, g, sys));
        }
        std::vector<double> diffs;
        for (std::size_t k = 1; k < energy.size(); ++k) {
            diffs.push_back(std::abs(energy[k] - energy[k - 1]));
        }
        const std::size_t m = diffs.size();
        EXPECT_LT(diffs[m - 1], diffs[m - 2]) << "s=" << s;
        EXPECT_LT(diffs[m - 2], diffs[m - 3]) << "s=" << s;
    }
}

TEST(MatrixMarket, WritesHeaderAndLowerTriangle) {
    Eigen::MatrixXd m(2, 2);
    m << 2.0, -1.0, -1.0, 3.0;
    std::ostringstream out;
    write_matrix_market(out, m);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "%%MatrixMarket matrix coordinate real symmetric");
    std::getline(in, line);
    EXPECT_EQ(line, "2 2 3");
    std::getline(in, line);
    EXPECT_EQ(line, "1 1 2");
    std::getline(in, line);
    EXPECT_EQ(line, "2 1 -1");
}

TEST(GridFunction, InterpolatesAndVanishesOutside) {
    const Mesh mesh = build_mesh(0.0, 1.0, 3);
    const auto g = interpolate(mesh, [](double x) { return x * (1.0 - x); });
    EXPECT_NEAR(g(0.25), 0.1875, 1e-15);
    EXPECT_NEAR(g(0.375), 0.5 * (0.1875 + 0.25), 1e-15);
    EXPECT_EQ(g(-0.1), 0.0);
    EXPECT_EQ(g(1.0), 0.0);
    EXPECT_NEAR(g(0.1), 0.4 * 0.1875, 1e-15);
}
