#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "qpencil/errors.hpp"
#include "qpencil/vqge.hpp"

// Neighborhood-preserving embedding: KNN graph construction (exact distances
// or simulated swap-test overlaps), local reconstruction weights, pencil
// assembly, fit, and the linear embedding map. Per-point weight solves are
// independent; all outputs are immutable once returned.
namespace qpencil::manifold {

// Column-major point matrix: X is D x M, one point per column.
struct Dataset {
  Eigen::MatrixXd x;
  std::optional<Eigen::VectorXi> labels;  // classes, length M
  bool normalized = false;

  Eigen::Index dim() const { return x.rows(); }
  Eigen::Index count() const { return x.cols(); }

  void validate() const;
  // Returns a copy with unit-norm columns.
  Dataset normalized_copy() const;
};

struct NeighborGraph {
  int k = 0;
  std::vector<std::vector<int>> neighbors;  // per point, ordered, length k
};

struct Metric {
  enum class Kind { Euclidean, Overlap };
  Kind kind = Kind::Euclidean;
  int shots = 100000;       // swap-test shots per pair (Overlap only)
  std::uint64_t seed = 0;

  static Metric euclidean() { return {Kind::Euclidean, 0, 0}; }
  static Metric overlap(int shots, std::uint64_t seed) {
    return {Kind::Overlap, shots, seed};
  }
};

// K nearest neighbors per point, self excluded, ties broken by lower index.
// Euclidean ranks by distance ascending; Overlap ranks by swap-test-estimated
// |<x_i|x_k>|^2 descending (one estimate per unordered pair) and requires
// unit-norm columns with power-of-two dimension.
NeighborGraph knn_graph(const Dataset& data, int k, const Metric& metric);

inline constexpr double kRegDefault = 1e-3;

// Per-point local reconstruction weights: minimizes ||x_i - sum_j w_j x_j||
// subject to sum_j w_j = 1 over the neighbor support, via the bordered
// Lagrange system on the local Gram matrix. A Tikhonov term
// reg * trace(G_i)/K is added when K > D or when the plain solve is
// singular. Rows of the result sum to 1 on their support.
Eigen::MatrixXd local_weights(const Dataset& data, const NeighborGraph& graph,
                              double reg = kRegDefault);

// Q = (I - W)^T (I - W); symmetric positive semidefinite, Q * ones = 0.
Eigen::MatrixXd build_q(const Eigen::MatrixXd& w);

// (X Q X^T, X X^T + ridge * I). ridge defaults to 1e-8 * trace(X X^T) / D,
// which keeps the right side positive definite for rank-deficient X.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> npe_pencil(
    const Dataset& data, const Eigen::MatrixXd& q,
    std::optional<double> ridge = std::nullopt);

struct Projection {
  Eigen::MatrixXd a;           // D x d, columns are generalized eigenvectors
  Eigen::VectorXd eigenvalues; // length d, order matches columns
};

// Solver choice for the generalized eigenproblem behind a fit.
struct SolverChoice {
  enum class Kind { Oracle, Vqge };
  Kind kind = Kind::Oracle;
  sim::AnsatzSpec ansatz;   // Vqge only
  vqge::SolveConfig solve;  // Vqge only

  static SolverChoice oracle() { return {}; }
  static SolverChoice variational(sim::AnsatzSpec ansatz, vqge::SolveConfig cfg) {
    return {Kind::Vqge, std::move(ansatz), std::move(cfg)};
  }
};

// Full pipeline: graph, weights, pencil, then the d smallest generalized
// eigenvectors (ascending) as projection columns. The variational solver
// requires power-of-two D and returns one column per distinct eigenvalue.
Projection npe_fit(const Dataset& data, int k, int d, const SolverChoice& solver,
                   const Metric& metric = Metric::euclidean(),
                   double reg = kRegDefault,
                   std::optional<double> ridge = std::nullopt);

// y = A^T x.
Eigen::VectorXd embed(const Projection& p, const Eigen::VectorXd& x);
Eigen::MatrixXd embed_all(const Projection& p, const Eigen::MatrixXd& x);

// Shared helper for fit pipelines: solves the dense pencil (g, s) with the
// oracle or the variational solver and returns the requested extreme
// eigenpairs (smallest_first selects the ascending end).
Projection solve_pencil(const Eigen::MatrixXd& g, const Eigen::MatrixXd& s, int d,
                        const SolverChoice& solver, bool smallest_first);

// All distinct eigenvalues of the dense pencil found by the variational
// solver, ascending, with phase-fixed real S-normalized eigenvector columns.
std::vector<std::pair<double, Eigen::VectorXd>> variational_pencil_eigs(
    const Eigen::MatrixXd& g, const Eigen::MatrixXd& s, const SolverChoice& solver);

}  // namespace qpencil::manifold
