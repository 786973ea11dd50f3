#pragma once

#include <Eigen/Dense>

#include "qpencil/manifold.hpp"

// Local discriminant embedding: within/between-class neighbor graphs,
// per-graph reconstruction weights, the scatter pencil T_b a = lambda T_w a,
// fit with the d largest distinct eigenvalues, and nearest-neighbor
// classification in the embedded space. Per-point and per-test-point work is
// independent; fitted projections are immutable.
namespace qpencil::lde {

using manifold::Dataset;
using manifold::Metric;
using manifold::NeighborGraph;
using manifold::Projection;
using manifold::SolverChoice;

struct ClassGraphs {
  NeighborGraph within;   // K same-label neighbors per point
  NeighborGraph between;  // K' different-label neighbors per point
};

struct LdePencil {
  Eigen::MatrixXd t_w;  // within-class scatter, ridge-regularized
  Eigen::MatrixXd t_b;  // between-class scatter
};

// Per point: K nearest same-label and K' nearest different-label neighbors.
// Throws ValidityError naming the class when a class (or its complement) is
// too small.
ClassGraphs class_graphs(const Dataset& data, int k, int k_prime,
                         const Metric& metric = Metric::euclidean());

// Reconstruction weights for both graphs (same contract as
// manifold::local_weights applied per graph).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> lde_weights(
    const Dataset& data, const ClassGraphs& graphs,
    double reg = manifold::kRegDefault);

// T = X (D_W - W_sym) X^T per graph, with W symmetrized as (W + W^T)/2 and
// D_W the diagonal of its row sums, so the quadratic embedding objective
// matches 2 trace(A^T T A) exactly. The ridge (default 1e-8 trace(T_w)/D)
// keeps T_w positive definite.
LdePencil lde_pencil(const Dataset& data, const Eigen::MatrixXd& w_within,
                     const Eigen::MatrixXd& w_between,
                     std::optional<double> ridge = std::nullopt);

inline constexpr double kDistinctGap = 1e-6;

// Full pipeline; projection columns are eigenvectors of the d largest
// distinct eigenvalues of (T_b, T_w), descending. Eigenvalues closer than
// kDistinctGap count as one (the lowest-index representative is kept).
// Throws ValidityError when fewer than d distinct eigenvalues exist.
Projection lde_fit(const Dataset& data, int k, int k_prime, int d,
                   const SolverChoice& solver,
                   const Metric& metric = Metric::euclidean(),
                   double reg = manifold::kRegDefault,
                   std::optional<double> ridge = std::nullopt);

enum class EmbedDistance { Euclidean, Trace };

// Nearest embedded training point decides the label; ties go to the lowest
// training index. Trace distance sqrt(1 - |<u|v>|^2) normalizes embeddings
// first and suits unit-norm pipelines.
int classify(const Projection& p, const Dataset& train,
             const Eigen::VectorXd& test_point,
             EmbedDistance distance = EmbedDistance::Euclidean);

Eigen::VectorXi classify_all(const Projection& p, const Dataset& train,
                             const Eigen::MatrixXd& test_points,
                             EmbedDistance distance = EmbedDistance::Euclidean);

}  // namespace qpencil::lde
