#include "yamabe/witness.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "yamabe/errors.hpp"
#include "yamabe/parallel.hpp"

namespace yamabe::witness {

Grid1D Grid1D::periodic(int n) {
    if (n < 2) throw ConfigError("periodic grid needs at least 2 points");
    return {n, 2.0 * std::numbers::pi / n, Topology::Periodic};
}

Grid1D Grid1D::neumann_interval(int n) {
    if (n < 2) throw ConfigError("interval grid needs at least 2 points");
    return {n, std::numbers::pi / n, Topology::NeumannInterval};
}

DiscreteOperator::DiscreteOperator(Eigen::SparseMatrix<double> matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) throw InternalError("discrete operator must be square");
    matrix_.makeCompressed();
}

DiscreteOperator assemble_laplacian(const Grid1D& grid) {
    const int n = grid.points;
    if (n < 4) throw ConfigError("grid too small: need at least 4 points");
    const double w = 1.0 / (grid.spacing * grid.spacing);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(3 * n));
    if (grid.topology == Topology::Periodic) {
        for (int i = 0; i < n; ++i) {
            triplets.emplace_back(i, i, 2.0 * w);
            triplets.emplace_back(i, (i + 1) % n, -w);
            triplets.emplace_back(i, (i + n - 1) % n, -w);
        }
    } else {
        // Free-free form: boundary rows (1, -1)/h^2, matching zero-flux faces
        // of the cell-centered grid.
        for (int i = 0; i < n; ++i) {
            double diag = 2.0 * w;
            if (i == 0 || i == n - 1) diag = w;
            triplets.emplace_back(i, i, diag);
            if (i > 0) triplets.emplace_back(i, i - 1, -w);
            if (i < n - 1) triplets.emplace_back(i, i + 1, -w);
        }
    }
    Eigen::SparseMatrix<double> matrix(n, n);
    matrix.setFromTriplets(triplets.begin(), triplets.end());
    return DiscreteOperator(std::move(matrix));
}

DiscreteOperator assemble_product_js(const Grid1D& g1, const Grid1D& g2, double s, double c) {
    if (!(s > 0.0)) throw ConfigError("s must be positive");
    const auto l1 = assemble_laplacian(g1).matrix();
    const auto l2 = assemble_laplacian(g2).matrix();
    const int n1 = static_cast<int>(l1.rows());
    const int n2 = static_cast<int>(l2.rows());

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(l1.nonZeros()) * n2 +
                     static_cast<std::size_t>(l2.nonZeros()) * n1 +
                     static_cast<std::size_t>(n1) * n2);
    for (int col = 0; col < l1.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(l1, col); it; ++it) {
            for (int b = 0; b < n2; ++b) {
                triplets.emplace_back(static_cast<int>(it.row()) * n2 + b, col * n2 + b, it.value());
            }
        }
    }
    for (int col = 0; col < l2.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(l2, col); it; ++it) {
            for (int a = 0; a < n1; ++a) {
                triplets.emplace_back(a * n2 + static_cast<int>(it.row()), a * n2 + col,
                                      it.value() / s);
            }
        }
    }
    if (c != 0.0) {
        for (int k = 0; k < n1 * n2; ++k) triplets.emplace_back(k, k, -c);
    }
    Eigen::SparseMatrix<double> matrix(n1 * n2, n1 * n2);
    matrix.setFromTriplets(triplets.begin(), triplets.end());
    return DiscreteOperator(std::move(matrix));
}

FactorEigensystem eigensystem(const DiscreteOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.dense());
    if (solver.info() != Eigen::Success) throw InternalError("dense eigensolve failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

// Ordered spectrum of the deflated discrete J_s via the factor eigenvalues:
// the product operator's eigenvalues are exactly the pairwise sums, and the
// constant direction is the (ground, ground) pair.
std::vector<double> deflated_ordered_spectrum(const Eigen::VectorXd& alpha,
                                              const Eigen::VectorXd& beta, double s, double c,
                                              int count) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(alpha.size()) * static_cast<std::size_t>(beta.size()) - 1);
    for (int a = 0; a < alpha.size(); ++a) {
        for (int b = 0; b < beta.size(); ++b) {
            if (a == 0 && b == 0) continue;
            values.push_back(alpha[a] + beta[b] / s - c);
        }
    }
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(count), values.size());
    std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(take), values.end());
    values.resize(take);
    return values;
}

}  // namespace

std::vector<Crossing> crossing_scan(const Grid1D& g1, const Grid1D& g2, double c1, double c2,
                                    double s_lo, double s_hi, int samples,
                                    const CrossingScanOptions& options) {
    if (!(s_lo > 0.0) || !(s_lo < s_hi)) throw ConfigError("scan range must satisfy 0 < lo < hi");
    if (samples < 2) throw ConfigError("need at least 2 samples");

    const auto sys1 = eigensystem(assemble_laplacian(g1));
    const auto sys2 = eigensystem(assemble_laplacian(g2));
    const int tracked = options.tracked_eigenvalues;

    const auto curve = [&](double s, int k) {
        return deflated_ordered_spectrum(sys1.values, sys2.values, s, c1 + c2 / s, tracked)[
            static_cast<std::size_t>(k)];
    };

    // Geometric sampling: instants accumulate at 0 and infinity, so relative
    // resolution is the right notion across the range.
    const double ratio = s_hi / s_lo;
    std::vector<double> grid(static_cast<std::size_t>(samples) + 1);
    std::vector<std::vector<double>> sampled(grid.size());
    parallel_for(static_cast<int>(grid.size()), options.threads, [&](int t) {
        const double s = s_lo * std::pow(ratio, static_cast<double>(t) / samples);
        grid[static_cast<std::size_t>(t)] = s;
        sampled[static_cast<std::size_t>(t)] =
            deflated_ordered_spectrum(sys1.values, sys2.values, s, c1 + c2 / s, tracked);
    });

    std::vector<Crossing> crossings;
    for (int k = 0; k < tracked; ++k) {
        for (std::size_t t = 0; t + 1 < grid.size(); ++t) {
            if (static_cast<std::size_t>(k) >= sampled[t].size()) continue;
            const double fa = sampled[t][static_cast<std::size_t>(k)];
            const double fb = sampled[t + 1][static_cast<std::size_t>(k)];
            if (fa == 0.0) {
                crossings.push_back({grid[t], k});
                continue;
            }
            if (fa * fb >= 0.0) continue;
            double a = grid[t], b = grid[t + 1];
            double va = fa;
            while ((b - a) / (0.5 * (a + b)) > options.refine_rel_width) {
                const double mid = 0.5 * (a + b);
                const double vm = curve(mid, k);
                if (vm == 0.0) {
                    a = b = mid;
                    break;
                }
                if (va * vm < 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    va = vm;
                }
            }
            crossings.push_back({0.5 * (a + b), k});
        }
    }
    std::sort(crossings.begin(), crossings.end(), [](const Crossing& x, const Crossing& y) {
        return x.s != y.s ? x.s < y.s : x.eigen_index < y.eigen_index;
    });
    return crossings;
}

YamabeParams::YamabeParams(int m_in, double scalar_curvature_in, double conformal_constant_in)
    : m(m_in), scalar_curvature(scalar_curvature_in), conformal_constant(conformal_constant_in) {
    if (m < 3) throw ConfigError("m >= 3 required");
    exponent = static_cast<double>(m + 2) / (m - 2);
    coefficient = 4.0 * (m - 1) / (m - 2);
}

namespace {

Eigen::VectorXd residual_vector(const Eigen::VectorXd& u, const YamabeParams& params,
                                const DiscreteOperator& laplacian) {
    return params.coefficient * laplacian.apply(u) + params.scalar_curvature * u -
           params.conformal_constant * u.array().pow(params.exponent).matrix();
}

double weighted_norm(const Eigen::VectorXd& v, double cell_volume) {
    return std::sqrt(cell_volume) * v.norm();
}

}  // namespace

double yamabe_residual(const Eigen::VectorXd& u, const YamabeParams& params,
                       const DiscreteOperator& laplacian, double cell_volume) {
    if (u.size() != laplacian.dimension()) throw ConfigError("u does not match the operator");
    if ((u.array() <= 0.0).any()) throw ConfigError("u must be strictly positive");
    return weighted_norm(residual_vector(u, params, laplacian), cell_volume);
}

ProbeReport newton_branch_probe(const Grid1D& g1, const Grid1D& g2, double c1, double c2, int m,
                                double s_star_estimate, const NewtonProbeOptions& options) {
    if (!(s_star_estimate > 0.0)) throw ConfigError("s* estimate must be positive");

    const auto sys1 = eigensystem(assemble_laplacian(g1));
    const auto sys2 = eigensystem(assemble_laplacian(g2));

    // Near-kernel direction of J_{s*}: the factor pair whose sum eigenvalue is
    // closest to zero at s*, excluding the constant pair.
    const double c_at_star = c1 + c2 / s_star_estimate;
    int best_a = 0, best_b = 1;
    double best = std::abs(sys1.values[0] + sys2.values[1] / s_star_estimate - c_at_star);
    for (int a = 0; a < sys1.values.size(); ++a) {
        for (int b = 0; b < sys2.values.size(); ++b) {
            if (a == 0 && b == 0) continue;
            const double v = std::abs(sys1.values[a] + sys2.values[b] / s_star_estimate - c_at_star);
            if (v < best) {
                best = v;
                best_a = a;
                best_b = b;
            }
        }
    }
    const int n1 = g1.points, n2 = g2.points;
    Eigen::VectorXd kernel(n1 * n2);
    for (int a = 0; a < n1; ++a) {
        for (int b = 0; b < n2; ++b) {
            kernel[a * n2 + b] = sys1.vectors(a, best_a) * sys2.vectors(b, best_b);
        }
    }
    kernel /= kernel.cwiseAbs().maxCoeff();

    const double s = s_star_estimate * (1.0 + options.s_offset);
    const double shift = c1 + c2 / s;
    const YamabeParams params(m, (m - 1) * shift, (m - 1) * shift);
    const auto laplacian = assemble_product_js(g1, g2, s, 0.0);
    const double cell_volume = g1.spacing * g2.spacing;

    Eigen::VectorXd u = Eigen::VectorXd::Ones(n1 * n2) + options.epsilon * kernel;

    ProbeReport report;
    double norm = weighted_norm(residual_vector(u, params, laplacian), cell_volume);
    const int dim = n1 * n2;

    for (report.iterations = 0; report.iterations < options.max_iterations; ++report.iterations) {
        if (norm < options.tolerance) {
            report.converged = true;
            break;
        }
        const Eigen::ArrayXd diag = params.scalar_curvature -
                                    params.conformal_constant * params.exponent *
                                        u.array().pow(params.exponent - 1.0);
        std::vector<Eigen::Triplet<double>> diag_triplets;
        diag_triplets.reserve(static_cast<std::size_t>(dim));
        for (int k = 0; k < dim; ++k) diag_triplets.emplace_back(k, k, diag[k]);
        Eigen::SparseMatrix<double> diag_matrix(dim, dim);
        diag_matrix.setFromTriplets(diag_triplets.begin(), diag_triplets.end());
        Eigen::SparseMatrix<double> jacobian = params.coefficient * laplacian.matrix() + diag_matrix;
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(jacobian);
        if (solver.info() != Eigen::Success) break;
        const Eigen::VectorXd step = solver.solve(residual_vector(u, params, laplacian));
        if (solver.info() != Eigen::Success) break;

        double t = 1.0;
        bool improved = false;
        for (int h = 0; h <= options.max_halvings; ++h, t *= 0.5) {
            const Eigen::VectorXd candidate = u - t * step;
            if ((candidate.array() <= 0.0).any()) continue;
            const double candidate_norm =
                weighted_norm(residual_vector(candidate, params, laplacian), cell_volume);
            if (candidate_norm < norm) {
                u = candidate;
                norm = candidate_norm;
                improved = true;
                break;
            }
        }
        if (!improved) break;  // stalled: reported, not fatal
    }
    if (!report.converged && norm < options.tolerance) report.converged = true;

    report.final_residual = norm;
    const double mean = u.mean();
    report.nonconstancy = std::sqrt((u.array() - mean).square().sum() / u.size());
    if (report.final_residual < 1e-8 && report.nonconstancy > 10.0 * options.epsilon) {
        report.label = "nontrivial solution witnessed";
    } else if (report.final_residual < 1e-8) {
        report.label = "no branch found";
    } else {
        report.label = "diverged";
    }
    return report;
}

}  // namespace yamabe::witness
