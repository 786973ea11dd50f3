#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "helpers.hpp"
#include "qpencil/builtin.hpp"
#include "qpencil/dense.hpp"

using namespace qpencil;
using namespace qpencil::dense;
using Complex = std::complex<double>;

namespace {

Eigen::MatrixXcd random_hermitian(std::mt19937_64& eng, int dim) {
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      m(i, j) = Complex(test_helpers::random_real(eng), test_helpers::random_real(eng));
  return ((m + m.adjoint()) / 2.0).eval();
}

Eigen::MatrixXcd s1_dense() {
  return pauli::dense_from_pauli(builtin_pencil("example1").s());
}

}  // namespace

TEST_CASE("cholesky: identity and diagonal cases") {
  const auto id = HermitianMatrix(Eigen::MatrixXcd::Identity(3, 3));
  CHECK((cholesky(id) - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXcd d(2, 2);
  d << 4, 0, 0, 9;
  const Eigen::MatrixXcd l = cholesky(HermitianMatrix(d));
  CHECK(l(0, 0).real() == doctest::Approx(2.0));
  CHECK(l(1, 1).real() == doctest::Approx(3.0));
  CHECK(std::abs(l(1, 0)) == 0.0);
}

TEST_CASE("cholesky reconstructs the builtin S matrix") {
  const Eigen::MatrixXcd s = s1_dense();
  const Eigen::MatrixXcd l = cholesky(HermitianMatrix(s));
  CHECK((l * l.adjoint() - s).cwiseAbs().maxCoeff() < 1e-9 * s.cwiseAbs().maxCoeff());
}

TEST_CASE("cholesky signals a non-positive-definite matrix") {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 2, 2, 1;  // eigenvalues 3 and -1
  CHECK_THROWS_WITH_AS(cholesky(HermitianMatrix(m)),
                       doctest::Contains("not positive definite"), NumericalError);
}

TEST_CASE("hermitian_eig: simple diagonal and the S1 minimum eigenvalue") {
  Eigen::MatrixXcd d(2, 2);
  d << 3, 0, 0, 1;
  const EigResult r = hermitian_eig(HermitianMatrix(d));
  CHECK(r.values(0) == doctest::Approx(1.0));
  CHECK(r.values(1) == doctest::Approx(3.0));

  // S1 = I + 0.441 XZ + 0.3939 XI on commuting strings, so its spectrum is
  // 1 +/- 0.441 +/- 0.3939; the minimum is 0.1651 exactly.
  const EigResult s1 = hermitian_eig(HermitianMatrix(s1_dense()));
  CHECK(s1.values(0) == doctest::Approx(0.1651).epsilon(1e-6));
}

TEST_CASE("hermitian_eig: residuals, unitarity, trace, and Eigen cross-check") {
  std::mt19937_64 eng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 2 + static_cast<int>(eng() % 7);
    const Eigen::MatrixXcd h = random_hermitian(eng, dim);
    const EigResult r = hermitian_eig(HermitianMatrix(h));
    const double scale = h.cwiseAbs().maxCoeff();
    for (int i = 0; i < dim; ++i)
      CHECK((h * r.vectors.col(i) - r.values(i) * r.vectors.col(i)).norm() <
            1e-8 * scale);
    CHECK((r.vectors.adjoint() * r.vectors - Eigen::MatrixXcd::Identity(dim, dim))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
    CHECK(r.values.sum() == doctest::Approx(h.trace().real()).epsilon(1e-8));
    CHECK(std::is_sorted(r.values.data(), r.values.data() + dim));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    CHECK((r.values - es.eigenvalues()).cwiseAbs().maxCoeff() < 1e-9 * (1 + scale));
  }
}

TEST_CASE("generalized_eig reproduces the builtin distinct eigenvalues") {
  const auto check = [](const std::string& name, std::vector<double> expect) {
    const auto pencil = builtin_pencil(name);
    const EigResult r =
        generalized_eig(HermitianMatrix(pauli::dense_from_pauli(pencil.g())),
                        HermitianMatrix(pauli::dense_from_pauli(pencil.s())));
    // 32 x 32 with 8-fold degeneracy: collapse to distinct values.
    std::vector<double> distinct;
    for (Eigen::Index i = 0; i < r.values.size(); ++i)
      if (distinct.empty() || r.values(i) - distinct.back() > 1e-6)
        distinct.push_back(r.values(i));
    REQUIRE(distinct.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
      CHECK(std::abs(distinct[i] - expect[i]) <= 1e-4);
  };
  check("example1", {0.6685, 0.9265, 1.3643, 1.8171});
  check("example2", {-1.5872, 0.4480, 1.4396, 1.9370});
}

TEST_CASE("generalized_eig: residuals, S-orthonormality, and S = I reduction") {
  std::mt19937_64 eng(47);
  for (int trial = 0; trial < 8; ++trial) {
    const int dim = 2 + static_cast<int>(eng() % 5);
    const Eigen::MatrixXcd g = random_hermitian(eng, dim);
    Eigen::MatrixXcd s = random_hermitian(eng, dim) * 0.2;
    s += Eigen::MatrixXcd::Identity(dim, dim) * (1.0 + dim * 0.2);
    const EigResult r = generalized_eig(HermitianMatrix(g), HermitianMatrix(s));
    const double scale = g.cwiseAbs().maxCoeff() + s.cwiseAbs().maxCoeff();
    for (int i = 0; i < dim; ++i)
      CHECK((g * r.vectors.col(i) - r.values(i) * (s * r.vectors.col(i))).norm() <
            1e-7 * scale);
    CHECK((r.vectors.adjoint() * s * r.vectors -
           Eigen::MatrixXcd::Identity(dim, dim))
              .cwiseAbs()
              .maxCoeff() < 1e-7);

    const EigResult against_identity = generalized_eig(
        HermitianMatrix(g), HermitianMatrix(Eigen::MatrixXcd::Identity(dim, dim)));
    const EigResult plain = hermitian_eig(HermitianMatrix(g));
    CHECK((against_identity.values - plain.values).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("property: generalized eigenvalues are congruence invariant") {
  std::mt19937_64 eng(53);
  for (int trial = 0; trial < 6; ++trial) {
    const int dim = 3;
    const Eigen::MatrixXcd g = random_hermitian(eng, dim);
    Eigen::MatrixXcd s = random_hermitian(eng, dim) * 0.2;
    s += Eigen::MatrixXcd::Identity(dim, dim) * 2.0;
    Eigen::MatrixXcd p(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        p(i, j) = Complex(test_helpers::random_real(eng), test_helpers::random_real(eng));
    p += Eigen::MatrixXcd::Identity(dim, dim) * 2.0;  // keep it invertible

    const EigResult base = generalized_eig(HermitianMatrix(g), HermitianMatrix(s));
    const EigResult cong = generalized_eig(
        HermitianMatrix(((p.adjoint() * g * p + (p.adjoint() * g * p).adjoint()) / 2.0).eval()),
        HermitianMatrix(((p.adjoint() * s * p + (p.adjoint() * s * p).adjoint()) / 2.0).eval()));
    CHECK((base.values - cong.values).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("commuting pencil eigenvalues equal ratios of joint eigenvalues") {
  // example1: G, S share eigenvectors; the four ratio combinations are
  // 1.7/1.8349, 1.3/0.9529, 0.3/0.1651, 0.7/1.0471.
  const auto pencil = builtin_pencil("example1");
  const EigResult r =
      generalized_eig(HermitianMatrix(pauli::dense_from_pauli(pencil.g())),
                      HermitianMatrix(pauli::dense_from_pauli(pencil.s())));
  std::vector<double> expect = {0.7 / 1.0471, 1.7 / 1.8349, 1.3 / 0.9529, 0.3 / 0.1651};
  std::sort(expect.begin(), expect.end());
  std::vector<double> distinct;
  for (Eigen::Index i = 0; i < r.values.size(); ++i)
    if (distinct.empty() || r.values(i) - distinct.back() > 1e-6)
      distinct.push_back(r.values(i));
  REQUIRE(distinct.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(distinct[static_cast<std::size_t>(i)] ==
          doctest::Approx(expect[static_cast<std::size_t>(i)]).epsilon(1e-10));
}

TEST_CASE("HermitianMatrix rejects non-Hermitian input") {
  Eigen::MatrixXcd bad(2, 2);
  bad << 1, 1, 0, 1;
  CHECK_THROWS_AS(HermitianMatrix{bad}, ValidityError);
}
