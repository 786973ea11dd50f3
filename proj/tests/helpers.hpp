#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "qpencil/pauli.hpp"

// Shared test utilities. The Kronecker oracle here is written from the
// literal 2x2 matrices and stays independent of the library's dense
// conversion path.
namespace test_helpers {

using qpencil::pauli::Letter;
using qpencil::pauli::PauliString;
using qpencil::pauli::PauliSum;

inline Eigen::Matrix2cd letter_matrix(Letter l) {
  using namespace std::complex_literals;
  Eigen::Matrix2cd m;
  switch (l) {
    case Letter::I: m << 1, 0, 0, 1; break;
    case Letter::X: m << 0, 1, 1, 0; break;
    case Letter::Y: m << 0, -1i, 1i, 0; break;
    case Letter::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Eigen::MatrixXcd kron_oracle(const PauliString& s) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < s.n_qubits(); ++q) out = kron(out, letter_matrix(s.letter(q)));
  return out;
}

inline Eigen::MatrixXcd dense_oracle(const PauliSum& p) {
  const Eigen::Index dim = Eigen::Index(1) << p.n_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : p.terms) out += t.coeff * kron_oracle(t.string);
  return out;
}

inline PauliString random_string(std::mt19937_64& eng, int n) {
  PauliString s(n);
  for (int q = 0; q < n; ++q)
    s = s.with_letter(q, static_cast<Letter>(eng() % 4));
  return s;
}

inline double random_real(std::mt19937_64& eng, double lo = -1.0, double hi = 1.0) {
  return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
}

inline PauliSum random_hermitian_sum(std::mt19937_64& eng, int n, int terms) {
  PauliSum p(n);
  for (int t = 0; t < terms; ++t)
    p.terms.push_back({random_real(eng), random_string(eng, n)});
  return qpencil::pauli::simplify(p);
}

inline PauliSum random_complex_sum(std::mt19937_64& eng, int n, int terms) {
  PauliSum p(n);
  for (int t = 0; t < terms; ++t)
    p.terms.push_back(
        {{random_real(eng), random_real(eng)}, random_string(eng, n)});
  return qpencil::pauli::simplify(p);
}

// Two-qubit reductions of the builtin pencils: identical distinct
// eigenvalues, far cheaper to scan.
inline std::pair<PauliSum, PauliSum> example1_small() {
  PauliSum g(2), s(2);
  g.add_term(1.0, "II").add_term(0.2, "XZ").add_term(0.5, "XI");
  s.add_term(1.0, "II").add_term(0.441, "XZ").add_term(0.3939, "XI");
  return {g, s};
}

inline std::pair<PauliSum, PauliSum> example2_small() {
  PauliSum g(2), s(2);
  g.add_term(1.0, "II").add_term(0.63, "XZ").add_term(1.2, "XI").add_term(0.2, "ZI");
  s.add_term(1.0, "II").add_term(0.1741, "XZ").add_term(0.2981, "XI");
  return {g, s};
}

}  // namespace test_helpers
