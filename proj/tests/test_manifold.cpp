#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/QR>
#include <cmath>

#include "helpers.hpp"
#include "qpencil/dense.hpp"
#include "qpencil/manifold.hpp"

using namespace qpencil;
using namespace qpencil::manifold;

namespace {

Dataset line_dataset(int m = 12) {
  // Points t_i * u + c on a line through generic direction u in R^4.
  Eigen::VectorXd u(4), c(4);
  u << 0.53, -0.71, 0.31, 0.34;
  c << 0.2, 0.1, -0.3, 0.05;
  Dataset data;
  data.x.resize(4, m);
  for (int i = 0; i < m; ++i) data.x.col(i) = (0.37 * i) * u + c;
  return data;
}

Dataset random_dataset(std::mt19937_64& eng, int d, int m) {
  Dataset data;
  data.x.resize(d, m);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < m; ++j) data.x(i, j) = test_helpers::random_real(eng);
  return data;
}

Eigen::VectorXd oracle_eigs(const Eigen::MatrixXd& g, const Eigen::MatrixXd& s) {
  return dense::generalized_eig(dense::HermitianMatrix::from_real(g),
                                dense::HermitianMatrix::from_real(s))
      .values;
}

}  // namespace

TEST_CASE("knn_graph: collinear points pick the forced neighbors") {
  Dataset data;
  data.x.resize(1, 3);
  data.x << 0.0, 1.0, 3.0;
  const NeighborGraph g = knn_graph(data, 1, Metric::euclidean());
  CHECK(g.neighbors[0] == std::vector<int>{1});
  CHECK(g.neighbors[1] == std::vector<int>{0});
  CHECK(g.neighbors[2] == std::vector<int>{1});
}

TEST_CASE("knn_graph: K = M-1 returns every other index") {
  std::mt19937_64 eng(3);
  const Dataset data = random_dataset(eng, 3, 6);
  const NeighborGraph g = knn_graph(data, 5, Metric::euclidean());
  for (int i = 0; i < 6; ++i) {
    CHECK(g.neighbors[static_cast<std::size_t>(i)].size() == 5);
    for (int j : g.neighbors[static_cast<std::size_t>(i)]) CHECK(j != i);
  }
}

TEST_CASE("knn_graph validates K and the overlap preconditions") {
  std::mt19937_64 eng(5);
  const Dataset data = random_dataset(eng, 4, 5);
  CHECK_THROWS_AS(knn_graph(data, 0, Metric::euclidean()), ValidityError);
  CHECK_THROWS_AS(knn_graph(data, 5, Metric::euclidean()), ValidityError);
  CHECK_THROWS_AS(knn_graph(data, 2, Metric::overlap(1000, 1)), ValidityError);
}

TEST_CASE("knn_graph: swap-test metric agrees with euclidean on clustered unit data") {
  // Four well-separated positive directions in R^8, five points each: the
  // same-cluster neighbors win by a margin far above shot noise.
  std::mt19937_64 eng(7);
  const int per_cluster = 5;
  Eigen::MatrixXd centers(8, 4);
  centers.setZero();
  centers(0, 0) = centers(2, 1) = centers(4, 2) = centers(6, 3) = 1.0;
  Dataset data;
  data.x.resize(8, 4 * per_cluster);
  int col = 0;
  for (int c = 0; c < 4; ++c) {
    for (int p = 0; p < per_cluster; ++p) {
      Eigen::VectorXd v = centers.col(c);
      for (int i = 0; i < 8; ++i)
        v(i) += 0.05 * std::abs(test_helpers::random_real(eng));
      data.x.col(col++) = v / v.norm();
    }
  }
  data.normalized = true;

  const NeighborGraph exact = knn_graph(data, per_cluster - 1, Metric::euclidean());
  int matches = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const NeighborGraph sampled =
        knn_graph(data, per_cluster - 1, Metric::overlap(100000, 100 + t));
    bool same = true;
    for (std::size_t i = 0; i < exact.neighbors.size(); ++i) {
      auto a = exact.neighbors[i];
      auto b = sampled.neighbors[i];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      same &= (a == b);
    }
    matches += same;
  }
  CHECK(matches >= static_cast<int>(0.95 * trials));
}

TEST_CASE("local_weights: K = 1 forces a unit weight") {
  std::mt19937_64 eng(11);
  const Dataset data = random_dataset(eng, 3, 4);
  const NeighborGraph g = knn_graph(data, 1, Metric::euclidean());
  const Eigen::MatrixXd w = local_weights(data, g);
  for (int i = 0; i < 4; ++i) {
    CHECK(w.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.row(i).maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("local_weights: midpoint between symmetric neighbors splits evenly") {
  Dataset data;
  data.x.resize(2, 3);
  data.x.col(0) << 0.0, 0.0;   // anchor: midpoint
  data.x.col(1) << 1.0, 0.0;
  data.x.col(2) << -1.0, 0.0;
  NeighborGraph g;
  g.k = 2;
  g.neighbors = {{1, 2}, {0, 2}, {0, 1}};
  const Eigen::MatrixXd w = local_weights(data, g, 0.0);
  CHECK(w(0, 1) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(w(0, 2) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("local_weights: exact affine combinations reconstruct exactly at reg = 0") {
  // x_0 = 0.2 a + 0.3 b + 0.5 c inside the triangle of its three neighbors.
  Eigen::VectorXd a(5), b(5), c(5);
  a << 1, 0, 0, 0.3, -0.2;
  b << 0, 1, 0, -0.1, 0.4;
  c << 0, 0, 1, 0.2, 0.1;
  Dataset data;
  data.x.resize(5, 4);
  data.x.col(0) = 0.2 * a + 0.3 * b + 0.5 * c;
  data.x.col(1) = a;
  data.x.col(2) = b;
  data.x.col(3) = c;
  NeighborGraph g;
  g.k = 3;
  g.neighbors = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  const Eigen::MatrixXd w = local_weights(data, g, 0.0);
  Eigen::VectorXd recon = Eigen::VectorXd::Zero(5);
  for (int j = 0; j < 4; ++j) recon += w(0, j) * data.x.col(j);
  CHECK((data.x.col(0) - recon).norm() < 1e-8);
  CHECK(w.row(0).sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("local_weights reports the failing point when unsolvable") {
  Dataset data;
  data.x.resize(2, 3);
  data.x.col(0) << 1.0, 1.0;
  data.x.col(1) << 1.0, 1.0;  // duplicates: zero difference vectors
  data.x.col(2) << 1.0, 1.0;
  NeighborGraph g;
  g.k = 2;
  g.neighbors = {{1, 2}, {0, 2}, {0, 1}};
  CHECK_THROWS_WITH_AS(local_weights(data, g, 0.0), doctest::Contains("point 0"),
                       NumericalError);
}

TEST_CASE("property: weight rows sum to one on random datasets") {
  std::mt19937_64 eng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const Dataset data = random_dataset(eng, 4, 10);
    const NeighborGraph g = knn_graph(data, 3, Metric::euclidean());
    const Eigen::MatrixXd w = local_weights(data, g);
    for (int i = 0; i < 10; ++i)
      CHECK(std::abs(w.row(i).sum() - 1.0) < 1e-8);
  }
}

TEST_CASE("build_q: W = 0 gives the identity; rows of I - W kill the ones vector") {
  const Eigen::MatrixXd q0 = build_q(Eigen::MatrixXd::Zero(4, 4));
  CHECK((q0 - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  std::mt19937_64 eng(17);
  const Dataset data = random_dataset(eng, 4, 8);
  const NeighborGraph g = knn_graph(data, 3, Metric::euclidean());
  const Eigen::MatrixXd w = local_weights(data, g);
  const Eigen::MatrixXd q = build_q(w);
  CHECK((q * Eigen::VectorXd::Ones(8)).cwiseAbs().maxCoeff() < 1e-8);

  const Eigen::MatrixXd explicit_q =
      (Eigen::MatrixXd::Identity(8, 8) - w).transpose() *
      (Eigen::MatrixXd::Identity(8, 8) - w);
  CHECK((q - explicit_q).cwiseAbs().maxCoeff() < 1e-12);

  // PSD within tolerance.
  const Eigen::VectorXd eigs =
      dense::hermitian_eig(dense::HermitianMatrix::from_real(q)).values;
  CHECK(eigs.minCoeff() >= -1e-9);
}

TEST_CASE("npe_pencil: Q = I collapses to (XX^T, XX^T) with unit eigenvalues") {
  std::mt19937_64 eng(19);
  const Dataset data = random_dataset(eng, 3, 8);  // full rank, M > D
  const auto [g, s] =
      npe_pencil(data, Eigen::MatrixXd::Identity(8, 8), 0.0);
  const Eigen::VectorXd eigs = oracle_eigs(g, s);
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    CHECK(eigs(i) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("npe_pencil: ridge keeps the S side factorizable when M < D") {
  std::mt19937_64 eng(23);
  const Dataset data = random_dataset(eng, 4, 3);  // rank deficient
  const Eigen::MatrixXd q = Eigen::MatrixXd::Identity(3, 3);
  const auto [g, s] = npe_pencil(data, q, std::nullopt);
  CHECK_NOTHROW(dense::cholesky(dense::HermitianMatrix::from_real(s)));
}

TEST_CASE("npe pipeline: exact line dataset yields near-zero smallest eigenvalue") {
  const Dataset data = line_dataset();
  const NeighborGraph g = knn_graph(data, 2, Metric::euclidean());
  const Eigen::MatrixXd w = local_weights(data, g, 1e-8);
  const Eigen::MatrixXd q = build_q(w);
  const auto [pg, ps] = npe_pencil(data, q, std::nullopt);
  const Eigen::VectorXd eigs = oracle_eigs(pg, ps);
  CHECK(eigs(0) < 1e-6);
}

TEST_CASE("npe_fit: 1-D line embedding preserves the point ordering") {
  const Dataset data = line_dataset();
  const Projection p =
      npe_fit(data, 2, 1, SolverChoice::oracle(), Metric::euclidean(), 1e-8);
  const Eigen::MatrixXd y = embed_all(p, data.x);
  // Monotone along the line, up to overall sign.
  bool increasing = true, decreasing = true;
  for (int i = 0; i + 1 < y.cols(); ++i) {
    increasing &= y(0, i + 1) > y(0, i);
    decreasing &= y(0, i + 1) < y(0, i);
  }
  CHECK((increasing || decreasing));
}

TEST_CASE("npe_fit: d = D gives a complete basis that reconstructs the span") {
  std::mt19937_64 eng(29);
  const Dataset data = random_dataset(eng, 3, 9);
  const Projection p = npe_fit(data, 3, 3, SolverChoice::oracle());
  const Eigen::MatrixXd pinv =
      p.a.completeOrthogonalDecomposition().pseudoInverse();
  const Eigen::VectorXd x = data.x.col(0);
  CHECK((p.a * (pinv * x) - x).norm() < 1e-8);
}

TEST_CASE("npe_fit: variational solver matches the oracle eigenvalues (8x16)") {
  std::mt19937_64 eng(31);
  const Dataset data = random_dataset(eng, 8, 16);

  const Projection oracle = npe_fit(data, 4, 2, SolverChoice::oracle());

  vqge::SolveConfig cfg;
  cfg.optimizer.seed = 6;
  cfg.optimizer.f_tol = 1e-11;
  cfg.grid_points = 700;
  const auto ansatz = sim::AnsatzSpec::ring(3, 3);
  const Projection variational =
      npe_fit(data, 4, 2, SolverChoice::variational(ansatz, cfg));

  for (int j = 0; j < 2; ++j)
    CHECK(std::abs(variational.eigenvalues(j) - oracle.eigenvalues(j)) < 1e-2);
}

TEST_CASE("embed: identity truncation, zero vector, and dot-product oracle") {
  Projection p;
  p.a = Eigen::MatrixXd::Identity(5, 2);
  p.eigenvalues = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd x(5);
  x << 1, 2, 3, 4, 5;
  const Eigen::VectorXd y = embed(p, x);
  CHECK(y(0) == 1.0);
  CHECK(y(1) == 2.0);
  CHECK(embed(p, Eigen::VectorXd::Zero(5)).norm() == 0.0);

  std::mt19937_64 eng(37);
  Projection pr;
  pr.a.resize(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) pr.a(i, j) = test_helpers::random_real(eng);
  pr.eigenvalues = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd v(4);
  for (int i = 0; i < 4; ++i) v(i) = test_helpers::random_real(eng);
  const Eigen::VectorXd yy = embed(pr, v);
  for (int j = 0; j < 3; ++j)
    CHECK(yy(j) == doctest::Approx(pr.a.col(j).dot(v)).epsilon(1e-12));
  CHECK_THROWS_AS(embed(pr, Eigen::VectorXd::Zero(5)), DimensionError);
}

TEST_CASE("property: embedding cost identity ties curves to the pencil") {
  std::mt19937_64 eng(41);
  const Dataset data = random_dataset(eng, 4, 10);
  const NeighborGraph g = knn_graph(data, 3, Metric::euclidean());
  const Eigen::MatrixXd w = local_weights(data, g);
  const Eigen::MatrixXd q = build_q(w);

  Eigen::MatrixXd a(4, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = test_helpers::random_real(eng);

  const Eigen::MatrixXd y = a.transpose() * data.x;
  double cost = 0.0;
  for (int i = 0; i < 10; ++i) {
    Eigen::VectorXd recon = Eigen::VectorXd::Zero(2);
    for (int j = 0; j < 10; ++j) recon += w(i, j) * y.col(j);
    cost += (y.col(i) - recon).squaredNorm();
  }
  const double quadratic = (a.transpose() * data.x * q * data.x.transpose() * a).trace();
  CHECK(cost == doctest::Approx(quadratic).epsilon(1e-6));
}

TEST_CASE("property: rotating the input leaves the pencil eigenvalues unchanged") {
  std::mt19937_64 eng(43);
  const Dataset data = random_dataset(eng, 4, 9);
  Eigen::MatrixXd noise(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) noise(i, j) = test_helpers::random_real(eng);
  const Eigen::MatrixXd rot = Eigen::HouseholderQR<Eigen::MatrixXd>(noise)
                                  .householderQ();

  Dataset rotated = data;
  rotated.x = rot * data.x;

  const auto pencil_of = [](const Dataset& d) {
    const NeighborGraph g = knn_graph(d, 3, Metric::euclidean());
    const Eigen::MatrixXd w = local_weights(d, g);
    return npe_pencil(d, build_q(w), 0.0);
  };
  const auto [g1, s1] = pencil_of(data);
  const auto [g2, s2] = pencil_of(rotated);
  const Eigen::VectorXd e1 = oracle_eigs(g1, s1 + 1e-10 * Eigen::MatrixXd::Identity(4, 4));
  const Eigen::VectorXd e2 = oracle_eigs(g2, s2 + 1e-10 * Eigen::MatrixXd::Identity(4, 4));
  CHECK((e1 - e2).cwiseAbs().maxCoeff() < 1e-8);
}
