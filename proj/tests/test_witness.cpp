#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "yamabe/errors.hpp"
#include "yamabe/witness.hpp"

using namespace yamabe::witness;

namespace {

// k-th discrete eigenvalue of the 3-point stencil: (4/h^2) sin^2(kh/2).
double stencil_eigenvalue(double h, int k) {
    const double s = std::sin(0.5 * k * h);
    return 4.0 / (h * h) * s * s;
}

std::vector<double> sorted_eigenvalues(const DiscreteOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.dense());
    std::vector<double> v(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("interval Neumann operator: spectrum, kernel, symmetry") {
    const auto grid = Grid1D::neumann_interval(128);
    const auto op = assemble_laplacian(grid);

    const auto eigs = sorted_eigenvalues(op);
    CHECK(std::abs(eigs[0]) < 1e-10);
    CHECK(std::abs(eigs[1] - 1.0) < 1e-3);  // exact Neumann eigenvalue 1 at k = 1
    CHECK(eigs[1] == doctest::Approx(stencil_eigenvalue(grid.spacing, 1)).epsilon(1e-10));

    const Eigen::MatrixXd dense = op.dense();
    CHECK((dense - dense.transpose()).norm() == 0.0);

    const Eigen::VectorXd constant = Eigen::VectorXd::Ones(grid.points);
    CHECK(op.apply(constant).lpNorm<Eigen::Infinity>() < 1e-13);
}

TEST_CASE("periodic operator: kernel dimension 1, doubled first harmonic") {
    const auto grid = Grid1D::periodic(64);
    const auto op = assemble_laplacian(grid);
    const auto eigs = sorted_eigenvalues(op);

    CHECK(std::abs(eigs[0]) < 1e-10);
    CHECK(eigs[1] > 0.5);  // kernel is one-dimensional
    CHECK(std::abs(eigs[1] - 1.0) < 1e-3);
    CHECK(std::abs(eigs[2] - 1.0) < 1e-3);
    CHECK(std::abs(eigs[1] - eigs[2]) < 1e-9);

    const Eigen::VectorXd constant = Eigen::VectorXd::Ones(grid.points);
    CHECK(op.apply(constant).lpNorm<Eigen::Infinity>() < 1e-13);
    CHECK_THROWS_AS(assemble_laplacian(Grid1D::periodic(3)), yamabe::ConfigError);
}

TEST_CASE("grid refinement converges at second order") {
    const auto error_at = [](int n) {
        const auto eigs = sorted_eigenvalues(assemble_laplacian(Grid1D::neumann_interval(n)));
        return std::abs(eigs[1] - 1.0);
    };
    const double coarse = error_at(64);
    const double fine = error_at(128);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("product operator spectrum is the pairwise-sum set") {
    const auto g1 = Grid1D::periodic(16);
    const auto g2 = Grid1D::neumann_interval(16);
    const double s = 0.7, c = 0.3;

    const auto full = sorted_eigenvalues(assemble_product_js(g1, g2, s, c));

    const auto a = sorted_eigenvalues(assemble_laplacian(g1));
    const auto b = sorted_eigenvalues(assemble_laplacian(g2));
    std::vector<double> sums;
    for (double x : a) {
        for (double y : b) sums.push_back(x + y / s - c);
    }
    std::sort(sums.begin(), sums.end());

    REQUIRE(full.size() == sums.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < full.size(); ++k) {
        worst = std::max(worst, std::abs(full[k] - sums[k]));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("shifting c shifts the whole spectrum") {
    const auto g1 = Grid1D::periodic(8);
    const auto g2 = Grid1D::neumann_interval(8);
    const auto base = sorted_eigenvalues(assemble_product_js(g1, g2, 1.3, 0.0));
    const auto shifted = sorted_eigenvalues(assemble_product_js(g1, g2, 1.3, 0.25));
    for (std::size_t k = 0; k < base.size(); ++k) {
        CHECK(std::abs(shifted[k] - (base[k] - 0.25)) < 1e-12);
    }
}

TEST_CASE("product operator annihilates the constant and stays symmetric") {
    const auto op = assemble_product_js(Grid1D::periodic(8), Grid1D::neumann_interval(8), 1.0, 0.0);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(op.dimension());
    CHECK(op.apply(ones).lpNorm<Eigen::Infinity>() < 1e-12);
    const Eigen::MatrixXd dense = op.dense();
    CHECK((dense - dense.transpose()).norm() == 0.0);
}

TEST_CASE("crossing_scan finds the synthetic instant at s* = 2") {
    // c1 = 1/2, c2 = 0: branch (0, k=1) has sigma = -1/2 + 1/s, zero at 2.
    const auto crossings = crossing_scan(Grid1D::periodic(64), Grid1D::neumann_interval(65), 0.5,
                                         0.0, 1.0, 3.0, 80);
    REQUIRE(!crossings.empty());
    const double found = crossings.front().s;
    CHECK(std::abs(found - 2.0) / 2.0 < 0.01);

    const auto finer = crossing_scan(Grid1D::periodic(128), Grid1D::neumann_interval(130), 0.5,
                                     0.0, 1.0, 3.0, 80);
    REQUIRE(!finer.empty());
    CHECK(std::abs(finer.front().s - 2.0) < std::abs(found - 2.0));
}

TEST_CASE("crossing_scan sees both sign changes of a neutral-style double crossing") {
    // c1 = c2 = 1/2 pairs the increasing (k=1, 0) branch with the decreasing
    // (0, k=1) branch at s* = 1; discretization splits them slightly.
    const auto crossings = crossing_scan(Grid1D::periodic(64), Grid1D::neumann_interval(65), 0.5,
                                         0.5, 0.5, 2.0, 100);
    REQUIRE(crossings.size() >= 2);
    std::vector<double> locations;
    for (const auto& c : crossings) {
        CHECK(std::abs(c.s - 1.0) < 0.01);
        locations.push_back(c.s);
    }
    // Both one-sided discrete zeros are present, not a single merged one.
    CHECK(*std::max_element(locations.begin(), locations.end()) >
          *std::min_element(locations.begin(), locations.end()) + 1e-5);
}

TEST_CASE("crossing_scan finds nothing for the plain product Laplacian") {
    CHECK(crossing_scan(Grid1D::periodic(32), Grid1D::neumann_interval(33), 0.0, 0.0, 0.5, 3.0, 60)
              .empty());
}

TEST_CASE("crossing_scan is deterministic across thread counts") {
    CrossingScanOptions serial;
    serial.threads = 1;
    CrossingScanOptions parallel;
    parallel.threads = 8;
    const auto a = crossing_scan(Grid1D::periodic(32), Grid1D::neumann_interval(33), 0.5, 0.0, 1.0,
                                 3.0, 60, serial);
    const auto b = crossing_scan(Grid1D::periodic(32), Grid1D::neumann_interval(33), 0.5, 0.0, 1.0,
                                 3.0, 60, parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].s == b[k].s);
        CHECK(a[k].eigen_index == b[k].eigen_index);
    }
}

TEST_CASE("yamabe_residual on exact and near-exact constants") {
    const auto grid = Grid1D::neumann_interval(64);
    const auto op = assemble_laplacian(grid);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(grid.points);

    const YamabeParams exact(4, 2.0, 2.0);
    CHECK(yamabe_residual(ones, exact, op, grid.spacing) < 1e-14);

    const double delta = 1e-3;
    const YamabeParams off(4, 2.0, 2.0 - delta);
    const double expected = delta * std::sqrt(grid.volume());
    CHECK(std::abs(yamabe_residual(ones, off, op, grid.spacing) - expected) < 1e-10);

    Eigen::VectorXd negative = ones;
    negative[3] = -1.0;
    CHECK_THROWS_AS(yamabe_residual(negative, exact, op, grid.spacing), yamabe::ConfigError);
}

TEST_CASE("perturbation residual is linear plus an O(eps^2) remainder") {
    const auto grid = Grid1D::neumann_interval(64);
    const auto op = assemble_laplacian(grid);
    const auto sys = eigensystem(op);
    const double lambda = sys.values[1];
    Eigen::VectorXd phi = sys.vectors.col(1);
    phi /= std::sqrt(grid.spacing) * phi.norm();  // unit weighted norm

    const double R = 2.0;
    const YamabeParams params(4, R, R);
    const double slope = params.coefficient * lambda + R - R * params.exponent;
    const auto remainder = [&](double eps) {
        const Eigen::VectorXd u = Eigen::VectorXd::Ones(grid.points) + eps * phi;
        const Eigen::VectorXd residual = params.coefficient * op.apply(u) + R * u -
                                         R * u.array().pow(params.exponent).matrix();
        return std::sqrt(grid.spacing) * (residual - eps * slope * phi).norm();
    };

    // The linear term matches yamabe_residual to first order.
    const double eps = 1e-3;
    CHECK(yamabe_residual(Eigen::VectorXd::Ones(grid.points) + eps * phi, params, op,
                          grid.spacing) ==
          doctest::Approx(std::abs(slope) * eps).epsilon(1e-2));

    const double ratio = remainder(eps) / remainder(eps / 2);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("newton probe returns to the constant from a constant start") {
    NewtonProbeOptions opts;
    opts.epsilon = 0.0;  // no perturbation: the constant is an exact root
    const auto report = newton_branch_probe(Grid1D::periodic(16), Grid1D::neumann_interval(17),
                                            0.5, 0.5, 4, 1.0, opts);
    CHECK(report.converged);
    CHECK(report.final_residual < 1e-10);
    CHECK(report.nonconstancy < 1e-10);
    CHECK(report.label == "no branch found");
}

TEST_CASE("newton probe near the double crossing converges and is deterministic") {
    NewtonProbeOptions opts;
    opts.epsilon = 1e-2;
    const auto g1 = Grid1D::periodic(24);
    const auto g2 = Grid1D::neumann_interval(25);
    const auto a = newton_branch_probe(g1, g2, 0.5, 0.5, 4, 1.0, opts);
    CHECK(a.final_residual < 1e-8);
    CHECK((a.label == "no branch found" || a.label == "nontrivial solution witnessed"));

    const auto b = newton_branch_probe(g1, g2, 0.5, 0.5, 4, 1.0, opts);
    CHECK(a.final_residual == b.final_residual);
    CHECK(a.iterations == b.iterations);
    CHECK(a.nonconstancy == b.nonconstancy);
    CHECK(a.label == b.label);
}
