#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <string>
#include <vector>

namespace yamabe::witness {

/// Floating-point cross-check of the exact pipeline on circle x interval
/// tensor grids with synthetic curvature constants. Everything here is
/// deliberately independent of the rational modules: assembled operators,
/// dense eigensolves, sign-change scans, and the nonlinear residual.

enum class Topology { Periodic, NeumannInterval };

struct Grid1D {
    int points = 0;
    double spacing = 0.0;
    Topology topology = Topology::Periodic;

    /// Circle [0, 2pi), h = 2pi/n.
    static Grid1D periodic(int n);
    /// Interval [0, pi], cell-centered nodes x_i = (i + 1/2) h with h = pi/n,
    /// so the Neumann operator is symmetric with the constant vector exactly
    /// in its kernel and eigenvalues (4/h^2) sin^2(kh/2).
    static Grid1D neumann_interval(int n);

    double volume() const { return points * spacing; }
};

class DiscreteOperator {
public:
    explicit DiscreteOperator(Eigen::SparseMatrix<double> matrix);

    int dimension() const { return static_cast<int>(matrix_.rows()); }
    bool symmetric() const { return true; }  // assembly is symmetric by construction
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const { return matrix_ * v; }
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix_); }
    const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }

private:
    Eigen::SparseMatrix<double> matrix_;
};

/// Standard 3-point second difference; positive semidefinite, constant kernel.
DiscreteOperator assemble_laplacian(const Grid1D& grid);

/// L1 (x) I + (1/s) I (x) L2 - c I on the tensor grid.
DiscreteOperator assemble_product_js(const Grid1D& g1, const Grid1D& g2, double s, double c);

struct FactorEigensystem {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns match values
};

/// Dense symmetric eigendecomposition (grids are desk-scale).
FactorEigensystem eigensystem(const DiscreteOperator& op);

struct Crossing {
    double s = 0.0;
    int eigen_index = 0;  // which ordered eigenvalue curve changed sign
};

struct CrossingScanOptions {
    int tracked_eigenvalues = 6;    // ordered curves watched for sign changes
    double refine_rel_width = 1e-6; // bisection stops at this relative bracket width
    int threads = 1;
};

/// Samples the ordered spectrum of the discrete J_s (constant direction
/// deflated) over [s_lo, s_hi] and refines every sign change by bisection.
/// Tracks several ordered curves, not only the minimum: at a neutral-style
/// double crossing the minimum merely touches zero while the second curve
/// carries both sign changes.
std::vector<Crossing> crossing_scan(const Grid1D& g1, const Grid1D& g2, double c1, double c2,
                                    double s_lo, double s_hi, int samples,
                                    const CrossingScanOptions& options = {});

struct YamabeParams {
    int m = 3;
    double scalar_curvature = 0.0;
    double conformal_constant = 0.0;  // K
    double exponent = 0.0;            // (m+2)/(m-2)
    double coefficient = 0.0;         // 4(m-1)/(m-2)

    YamabeParams(int m, double scalar_curvature, double conformal_constant);
};

/// Weighted L2 norm of coefficient*(L u) + R u - K u^exponent; cell_volume is
/// the measure of one grid cell. u must be strictly positive.
double yamabe_residual(const Eigen::VectorXd& u, const YamabeParams& params,
                       const DiscreteOperator& laplacian, double cell_volume);

struct NewtonProbeOptions {
    double epsilon = 1e-2;        // size of the kernel-direction perturbation
    double s_offset = 0.02;       // relative offset from s* for the probe
    int max_iterations = 100;
    int max_halvings = 30;
    double tolerance = 1e-10;     // convergence threshold on the residual norm
};

struct ProbeReport {
    bool converged = false;
    int iterations = 0;
    double final_residual = 0.0;
    double nonconstancy = 0.0;  // standard deviation of u over the grid
    std::string label;          // "nontrivial solution witnessed" | "no branch found" | "diverged"
};

/// Damped Newton on the discrete Yamabe residual, started at 1 + eps * (kernel
/// eigenvector of J_{s*}), evaluated at s = s*(1 + s_offset). Convergence back
/// to the constant and a nontrivial root are both valid outcomes.
ProbeReport newton_branch_probe(const Grid1D& g1, const Grid1D& g2, double c1, double c2, int m,
                                double s_star_estimate, const NewtonProbeOptions& options = {});

}  // namespace yamabe::witness
