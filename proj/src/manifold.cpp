#include "qpencil/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qpencil/dense.hpp"
#include "qpencil/rng.hpp"

namespace qpencil::manifold {

void Dataset::validate() const {
  if (x.cols() < 1) throw ValidityError("dataset needs at least one point");
  if (x.rows() < 1) throw ValidityError("dataset needs at least one feature");
  if (labels && labels->size() != x.cols())
    throw DimensionError("label count does not match point count");
  if (normalized) {
    for (Eigen::Index i = 0; i < x.cols(); ++i)
      if (std::abs(x.col(i).norm() - 1.0) > 1e-10)
        throw ValidityError("dataset flagged normalized but column " +
                            std::to_string(i) + " is not unit norm");
  }
}

Dataset Dataset::normalized_copy() const {
  Dataset out = *this;
  for (Eigen::Index i = 0; i < out.x.cols(); ++i) {
    const double nrm = out.x.col(i).norm();
    if (nrm < 1e-300)
      throw ValidityError("cannot normalize zero column " + std::to_string(i));
    out.x.col(i) /= nrm;
  }
  out.normalized = true;
  return out;
}

namespace {

bool is_power_of_two(Eigen::Index v) { return v >= 2 && (v & (v - 1)) == 0; }

// Ranks candidate indices by score ascending, ties by lower index.
std::vector<int> lowest_k(const Eigen::VectorXd& score, int self, int k) {
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(score.size()) - 1);
  for (int j = 0; j < score.size(); ++j)
    if (j != self) idx.push_back(j);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (score(a) != score(b)) return score(a) < score(b);
    return a < b;
  });
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

}  // namespace

NeighborGraph knn_graph(const Dataset& data, int k, const Metric& metric) {
  data.validate();
  const int m = static_cast<int>(data.count());
  if (k < 1 || k >= m) throw ValidityError("K must satisfy 1 <= K < M");

  NeighborGraph graph;
  graph.k = k;
  graph.neighbors.resize(static_cast<std::size_t>(m));

  if (metric.kind == Metric::Kind::Euclidean) {
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd dist(m);
      for (int j = 0; j < m; ++j)
        dist(j) = (data.x.col(i) - data.x.col(j)).squaredNorm();
      graph.neighbors[static_cast<std::size_t>(i)] = lowest_k(dist, i, k);
    }
    return graph;
  }

  // Swap-test overlap metric: one estimate per unordered pair, largest
  // estimated overlap first (equivalently smallest distance for unit data).
  if (!data.normalized)
    throw ValidityError("overlap metric requires normalized data");
  if (!is_power_of_two(data.dim()))
    throw ValidityError("overlap metric requires power-of-two dimension");
  std::vector<sim::Statevector> states;
  states.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    states.push_back(sim::Statevector::from_unit_vector(data.x.col(i)));

  Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      auto pair_stream = rng::substream(metric.seed, "knn-pair",
                                        static_cast<std::uint64_t>(i),
                                        static_cast<std::uint64_t>(j));
      const double est =
          sim::swap_test_sample(states[static_cast<std::size_t>(i)],
                                states[static_cast<std::size_t>(j)],
                                metric.shots, pair_stream());
      overlap(i, j) = est;
      overlap(j, i) = est;
    }
  }
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd score = -overlap.col(i);  // descending overlap
    graph.neighbors[static_cast<std::size_t>(i)] = lowest_k(score, i, k);
  }
  return graph;
}

namespace {

// Solves min ||C w||^2 subject to sum(w) = 1 through the bordered Lagrange
// system [2G 1; 1^T 0] [w; mu] = [0; 1] with G = C^T C. Returns empty when
// the system is singular.
std::optional<Eigen::VectorXd> constrained_weights(const Eigen::MatrixXd& gram) {
  const Eigen::Index k = gram.rows();
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
  kkt.topLeftCorner(k, k) = 2.0 * gram;
  kkt.topRightCorner(k, 1).setOnes();
  kkt.bottomLeftCorner(1, k).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs(k) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) return std::nullopt;
  Eigen::VectorXd sol = lu.solve(rhs);
  Eigen::VectorXd w = sol.head(k);
  const double sum = w.sum();
  if (!std::isfinite(sum) || std::abs(sum) < 1e-12) return std::nullopt;
  return Eigen::VectorXd(w / sum);
}

}  // namespace

Eigen::MatrixXd local_weights(const Dataset& data, const NeighborGraph& graph,
                              double reg) {
  data.validate();
  const int m = static_cast<int>(data.count());
  const int d_dim = static_cast<int>(data.dim());
  const int k = graph.k;
  if (static_cast<int>(graph.neighbors.size()) != m)
    throw DimensionError("graph size does not match dataset");
  if (reg < 0.0) throw ValidityError("reg must be >= 0");

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const auto& nbrs = graph.neighbors[static_cast<std::size_t>(i)];
    if (static_cast<int>(nbrs.size()) != k)
      throw DimensionError("graph row " + std::to_string(i) + " has wrong length");
    Eigen::MatrixXd diffs(d_dim, k);
    for (int j = 0; j < k; ++j) {
      if (nbrs[static_cast<std::size_t>(j)] == i)
        throw ValidityError("graph contains a self loop at point " + std::to_string(i));
      diffs.col(j) = data.x.col(i) - data.x.col(nbrs[static_cast<std::size_t>(j)]);
    }
    Eigen::MatrixXd gram = diffs.transpose() * diffs;
    const double tikhonov = reg * gram.trace() / k;

    std::optional<Eigen::VectorXd> weights;
    if (k <= d_dim) weights = constrained_weights(gram);
    if (!weights) {
      gram.diagonal().array() += tikhonov;
      weights = constrained_weights(gram);
    }
    if (!weights)
      throw NumericalError("weight solve failed at point " + std::to_string(i) +
                           " even after regularization");
    for (int j = 0; j < k; ++j)
      w(i, nbrs[static_cast<std::size_t>(j)]) = (*weights)(j);
  }
  return w;
}

Eigen::MatrixXd build_q(const Eigen::MatrixXd& w) {
  if (w.rows() != w.cols()) throw DimensionError("weight matrix must be square");
  const Eigen::MatrixXd iw =
      Eigen::MatrixXd::Identity(w.rows(), w.cols()) - w;
  Eigen::MatrixXd q = iw.transpose() * iw;
  return 0.5 * (q + q.transpose());
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> npe_pencil(const Dataset& data,
                                                       const Eigen::MatrixXd& q,
                                                       std::optional<double> ridge) {
  data.validate();
  if (q.rows() != data.count() || q.cols() != data.count())
    throw DimensionError("Q must be M x M");
  Eigen::MatrixXd xxt = data.x * data.x.transpose();
  const double r = ridge.value_or(1e-8 * xxt.trace() / static_cast<double>(data.dim()));
  Eigen::MatrixXd g = data.x * q * data.x.transpose();
  g = 0.5 * (g + g.transpose()).eval();
  xxt = (0.5 * (xxt + xxt.transpose())).eval();
  xxt.diagonal().array() += r;
  return {g, xxt};
}

namespace {

// Fixes the global phase of a statevector and returns the closest real unit
// vector; used to turn variational eigenstates into projection columns.
Eigen::VectorXd realized_column(const Eigen::VectorXcd& amps) {
  Eigen::Index imax = 0;
  amps.cwiseAbs().maxCoeff(&imax);
  const std::complex<double> phase =
      amps(imax) / std::max(std::abs(amps(imax)), 1e-300);
  Eigen::VectorXd real = (amps / phase).real();
  const double nrm = real.norm();
  if (nrm < 1e-12)
    throw NumericalError("variational eigenstate has no real part after phase fix");
  return real / nrm;
}

Projection solve_pencil_oracle(const Eigen::MatrixXd& g, const Eigen::MatrixXd& s,
                               int d, bool smallest_first) {
  const dense::EigResult eig = dense::generalized_eig(
      dense::HermitianMatrix::from_real(g), dense::HermitianMatrix::from_real(s));
  const Eigen::Index dim = g.rows();
  Projection p;
  p.a.resize(dim, d);
  p.eigenvalues.resize(d);
  for (int j = 0; j < d; ++j) {
    const Eigen::Index src = smallest_first ? j : dim - 1 - j;
    p.eigenvalues(j) = eig.values(src);
    p.a.col(j) = eig.vectors.col(src).real();
  }
  return p;
}

}  // namespace

std::vector<std::pair<double, Eigen::VectorXd>> variational_pencil_eigs(
    const Eigen::MatrixXd& g, const Eigen::MatrixXd& s, const SolverChoice& solver) {
  if (!is_power_of_two(g.rows()))
    throw ValidityError("variational solver requires power-of-two dimension");
  // Normalize coefficient scales so the optimizer works at O(1) magnitudes;
  // eigenvalues rescale by (ga / sa) afterwards.
  pauli::PauliSum pg = pauli::pauli_from_dense(g.cast<std::complex<double>>());
  pauli::PauliSum ps = pauli::pauli_from_dense(s.cast<std::complex<double>>());
  double ga = 0.0, sa = 0.0;
  for (const auto& t : pg.terms) ga = std::max(ga, std::abs(t.coeff));
  for (const auto& t : ps.terms) sa = std::max(sa, std::abs(t.coeff));
  if (ga <= 0.0 || sa <= 0.0) throw ValidityError("pencil side is zero");
  const vqge::MatrixPencil pencil(pauli::scale(pg, 1.0 / ga),
                                  pauli::scale(ps, 1.0 / sa));
  sim::AnsatzSpec ansatz = solver.ansatz;
  if (ansatz.n_qubits == 0) ansatz = sim::AnsatzSpec::ring(pencil.n_qubits(), 3);
  const auto pairs = vqge::solve_all(pencil, ansatz, solver.solve);

  const Eigen::MatrixXd s_sym = 0.5 * (s + s.transpose());
  std::vector<std::pair<double, Eigen::VectorXd>> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    Eigen::VectorXd col = realized_column(pair.state.amplitudes());
    const double s_norm = col.dot(s_sym * col);
    if (s_norm <= 0.0)
      throw NumericalError("variational eigenvector has nonpositive S-norm");
    out.emplace_back(pair.eigenvalue * (ga / sa), col / std::sqrt(s_norm));
  }
  return out;
}

namespace {

Projection solve_pencil_vqge(const Eigen::MatrixXd& g, const Eigen::MatrixXd& s,
                             int d, const SolverChoice& solver, bool smallest_first) {
  const auto pairs = variational_pencil_eigs(g, s, solver);
  if (static_cast<int>(pairs.size()) < d)
    throw ValidityError("variational solver found " + std::to_string(pairs.size()) +
                        " distinct eigenvalues, need " + std::to_string(d));
  Projection p;
  p.a.resize(g.rows(), d);
  p.eigenvalues.resize(d);
  for (int j = 0; j < d; ++j) {
    const auto& pair = smallest_first ? pairs[static_cast<std::size_t>(j)]
                                      : pairs[pairs.size() - 1 - static_cast<std::size_t>(j)];
    p.eigenvalues(j) = pair.first;
    p.a.col(j) = pair.second;
  }
  return p;
}

}  // namespace

Projection solve_pencil(const Eigen::MatrixXd& g, const Eigen::MatrixXd& s, int d,
                        const SolverChoice& solver, bool smallest_first) {
  if (g.rows() != g.cols() || s.rows() != s.cols() || g.rows() != s.rows())
    throw DimensionError("pencil matrices must be square and equally sized");
  if (d < 1 || d > g.rows()) throw ValidityError("d must satisfy 1 <= d <= D");
  return solver.kind == SolverChoice::Kind::Oracle
             ? solve_pencil_oracle(g, s, d, smallest_first)
             : solve_pencil_vqge(g, s, d, solver, smallest_first);
}

Projection npe_fit(const Dataset& data, int k, int d, const SolverChoice& solver,
                   const Metric& metric, double reg, std::optional<double> ridge) {
  data.validate();
  if (d < 1 || d > data.dim()) throw ValidityError("d must satisfy 1 <= d <= D");
  const NeighborGraph graph = knn_graph(data, k, metric);
  const Eigen::MatrixXd w = local_weights(data, graph, reg);
  const Eigen::MatrixXd q = build_q(w);
  const auto [g, s] = npe_pencil(data, q, ridge);
  return solve_pencil(g, s, d, solver, /*smallest_first=*/true);
}

Eigen::VectorXd embed(const Projection& p, const Eigen::VectorXd& x) {
  if (x.size() != p.a.rows())
    throw DimensionError("point dimension does not match projection");
  return p.a.transpose() * x;
}

Eigen::MatrixXd embed_all(const Projection& p, const Eigen::MatrixXd& x) {
  if (x.rows() != p.a.rows())
    throw DimensionError("point dimension does not match projection");
  return p.a.transpose() * x;
}

}  // namespace qpencil::manifold
