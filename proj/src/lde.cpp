#include "qpencil/lde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "qpencil/dense.hpp"
#include "qpencil/rng.hpp"

namespace qpencil::lde {

namespace {

// Restriction of the dataset metric to an index subset: ranks `candidates`
// for anchor point i and returns the best `k`.
std::vector<int> rank_subset(const Dataset& data, const Eigen::MatrixXd* overlap,
                             int anchor, const std::vector<int>& candidates, int k) {
  std::vector<int> order = candidates;
  Eigen::VectorXd score(static_cast<Eigen::Index>(candidates.size()));
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const int j = candidates[c];
    score(static_cast<Eigen::Index>(c)) =
        overlap ? -(*overlap)(anchor, j)
                : (data.x.col(anchor) - data.x.col(j)).squaredNorm();
  }
  std::vector<std::size_t> idx(candidates.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double sa = score(static_cast<Eigen::Index>(a));
    const double sb = score(static_cast<Eigen::Index>(b));
    if (sa != sb) return sa < sb;
    return candidates[a] < candidates[b];
  });
  std::vector<int> out(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) out[static_cast<std::size_t>(j)] = candidates[idx[static_cast<std::size_t>(j)]];
  return out;
}

// Precomputes the pairwise swap-test overlap table for the overlap metric,
// one estimate per unordered pair (shared by both graphs).
std::optional<Eigen::MatrixXd> overlap_table(const Dataset& data, const Metric& metric) {
  if (metric.kind != Metric::Kind::Overlap) return std::nullopt;
  if (!data.normalized)
    throw ValidityError("overlap metric requires normalized data");
  const int m = static_cast<int>(data.count());
  std::vector<sim::Statevector> states;
  states.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    states.push_back(sim::Statevector::from_unit_vector(data.x.col(i)));
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      auto pair_stream = rng::substream(metric.seed, "knn-pair",
                                        static_cast<std::uint64_t>(i),
                                        static_cast<std::uint64_t>(j));
      const double est = sim::swap_test_sample(states[static_cast<std::size_t>(i)],
                                               states[static_cast<std::size_t>(j)],
                                               metric.shots, pair_stream());
      table(i, j) = est;
      table(j, i) = est;
    }
  }
  return table;
}

}  // namespace

ClassGraphs class_graphs(const Dataset& data, int k, int k_prime,
                         const Metric& metric) {
  data.validate();
  if (!data.labels) throw ValidityError("class graphs require labels");
  if (k < 1 || k_prime < 1) throw ValidityError("K and K' must be >= 1");
  const int m = static_cast<int>(data.count());
  const Eigen::VectorXi& labels = *data.labels;

  std::map<int, int> class_sizes;
  for (int i = 0; i < m; ++i) ++class_sizes[labels(i)];
  for (const auto& [cls, size] : class_sizes) {
    if (size <= k)
      throw ValidityError("class " + std::to_string(cls) + " has " +
                          std::to_string(size) + " members, need more than K = " +
                          std::to_string(k));
    if (m - size < k_prime)
      throw ValidityError("complement of class " + std::to_string(cls) +
                          " has fewer than K' = " + std::to_string(k_prime) +
                          " members");
  }

  const auto table = overlap_table(data, metric);
  const Eigen::MatrixXd* table_ptr = table ? &*table : nullptr;

  ClassGraphs graphs;
  graphs.within.k = k;
  graphs.between.k = k_prime;
  graphs.within.neighbors.resize(static_cast<std::size_t>(m));
  graphs.between.neighbors.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    std::vector<int> same, other;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      (labels(j) == labels(i) ? same : other).push_back(j);
    }
    graphs.within.neighbors[static_cast<std::size_t>(i)] =
        rank_subset(data, table_ptr, i, same, k);
    graphs.between.neighbors[static_cast<std::size_t>(i)] =
        rank_subset(data, table_ptr, i, other, k_prime);
  }
  return graphs;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> lde_weights(const Dataset& data,
                                                        const ClassGraphs& graphs,
                                                        double reg) {
  return {manifold::local_weights(data, graphs.within, reg),
          manifold::local_weights(data, graphs.between, reg)};
}

namespace {

Eigen::MatrixXd scatter_matrix(const Dataset& data, const Eigen::MatrixXd& w) {
  const Eigen::MatrixXd w_sym = 0.5 * (w + w.transpose());
  Eigen::MatrixXd lap = -w_sym;
  lap.diagonal() += w_sym.rowwise().sum();
  Eigen::MatrixXd t = data.x * lap * data.x.transpose();
  return 0.5 * (t + t.transpose());
}

}  // namespace

LdePencil lde_pencil(const Dataset& data, const Eigen::MatrixXd& w_within,
                     const Eigen::MatrixXd& w_between, std::optional<double> ridge) {
  data.validate();
  if (w_within.rows() != data.count() || w_within.cols() != data.count() ||
      w_between.rows() != data.count() || w_between.cols() != data.count())
    throw DimensionError("weight matrices must be M x M");
  LdePencil pencil;
  pencil.t_w = scatter_matrix(data, w_within);
  pencil.t_b = scatter_matrix(data, w_between);
  const double r =
      ridge.value_or(1e-8 * pencil.t_w.trace() / static_cast<double>(data.dim()));
  pencil.t_w.diagonal().array() += r;
  return pencil;
}

namespace {

struct DistinctEig {
  double value;
  Eigen::VectorXd vector;
};

// Clusters ascending eigenvalues with gap kDistinctGap; the representative
// of each cluster is its lowest-index member.
std::vector<DistinctEig> distinct_ascending(const Eigen::VectorXd& values,
                                            const Eigen::MatrixXcd& vectors) {
  std::vector<DistinctEig> out;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (out.empty() || values(i) - out.back().value > kDistinctGap) {
      out.push_back({values(i), vectors.col(i).real()});
    }
  }
  return out;
}

}  // namespace

Projection lde_fit(const Dataset& data, int k, int k_prime, int d,
                   const SolverChoice& solver, const Metric& metric, double reg,
                   std::optional<double> ridge) {
  data.validate();
  if (d < 1 || d > data.dim()) throw ValidityError("d must satisfy 1 <= d <= D");
  const ClassGraphs graphs = class_graphs(data, k, k_prime, metric);
  const auto [w_w, w_b] = lde_weights(data, graphs, reg);
  const LdePencil pencil = lde_pencil(data, w_w, w_b, ridge);

  std::vector<DistinctEig> distinct;
  if (solver.kind == SolverChoice::Kind::Oracle) {
    const dense::EigResult eig =
        dense::generalized_eig(dense::HermitianMatrix::from_real(pencil.t_b),
                               dense::HermitianMatrix::from_real(pencil.t_w));
    distinct = distinct_ascending(eig.values, eig.vectors);
  } else {
    for (const auto& [value, vec] :
         manifold::variational_pencil_eigs(pencil.t_b, pencil.t_w, solver))
      distinct.push_back({value, vec});
  }
  if (static_cast<int>(distinct.size()) < d)
    throw ValidityError("pencil has " + std::to_string(distinct.size()) +
                        " distinct eigenvalues, need " + std::to_string(d));

  Projection p;
  p.a.resize(data.dim(), d);
  p.eigenvalues.resize(d);
  for (int j = 0; j < d; ++j) {
    const auto& e = distinct[distinct.size() - 1 - static_cast<std::size_t>(j)];
    p.eigenvalues(j) = e.value;
    p.a.col(j) = e.vector;
  }
  return p;
}

namespace {

double embed_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                      EmbedDistance kind) {
  if (kind == EmbedDistance::Euclidean) return (u - v).norm();
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu < 1e-15 || nv < 1e-15)
    throw ValidityError("trace distance needs nonzero embedded vectors");
  const double overlap = u.dot(v) / (nu * nv);
  return std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
}

}  // namespace

int classify(const Projection& p, const Dataset& train,
             const Eigen::VectorXd& test_point, EmbedDistance distance) {
  train.validate();
  if (!train.labels) throw ValidityError("classification requires training labels");
  const Eigen::MatrixXd embedded_train = manifold::embed_all(p, train.x);
  const Eigen::VectorXd y = manifold::embed(p, test_point);
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < embedded_train.cols(); ++i) {
    const double dist = embed_distance(y, embedded_train.col(i), distance);
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return (*train.labels)(best);
}

Eigen::VectorXi classify_all(const Projection& p, const Dataset& train,
                             const Eigen::MatrixXd& test_points,
                             EmbedDistance distance) {
  train.validate();
  if (!train.labels) throw ValidityError("classification requires training labels");
  const Eigen::MatrixXd embedded_train = manifold::embed_all(p, train.x);
  const Eigen::MatrixXd embedded_test = manifold::embed_all(p, test_points);
  Eigen::VectorXi out(test_points.cols());
  for (int t = 0; t < embedded_test.cols(); ++t) {
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < embedded_train.cols(); ++i) {
      const double dist =
          embed_distance(embedded_test.col(t), embedded_train.col(i), distance);
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    out(t) = (*train.labels)(best);
  }
  return out;
}

}  // namespace qpencil::lde
