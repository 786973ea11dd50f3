#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qpencil/errors.hpp"

// Pauli-string algebra over n qubits. All values are immutable once built
// and all operations are pure functions, so they are safe to share across
// concurrent tasks.
namespace qpencil::pauli {

using Complex = std::complex<double>;

enum class Letter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(Letter l);
Letter letter_from_char(char c);

// Tensor product of single-qubit Pauli operators, one letter per qubit.
// Qubit 0 is the leftmost tensor factor and maps to the most significant
// bit of a dense basis index. Internally a letter is the bit pair
// (x, z): I=(0,0), X=(1,0), Y=(1,1), Z=(0,1).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits);  // all-I string
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  // Parses e.g. "XZIII" (leftmost letter = qubit 0).
  static PauliString from_string(const std::string& letters);

  int n_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  Letter letter(int qubit) const;
  PauliString with_letter(int qubit, Letter l) const;
  bool is_identity() const { return x_ == 0 && z_ == 0; }

  std::string to_string() const;

  bool operator==(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliTerm {
  Complex coeff{0.0, 0.0};
  PauliString string;
};

// Weighted sum of Pauli strings. Coefficients stay complex during algebra;
// Hermiticity (real coefficients after simplify) is asserted only at
// observable boundaries.
struct PauliSum {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;

  PauliSum() = default;
  explicit PauliSum(int n) : n_qubits(n) {}
  PauliSum(int n, std::vector<PauliTerm> t) : n_qubits(n), terms(std::move(t)) {}

  static PauliSum identity(int n_qubits, Complex coeff = 1.0);

  PauliSum& add_term(Complex coeff, const std::string& letters);
  std::string to_string() const;
};

inline constexpr double kDropTolDefault = 1e-12;
inline constexpr int kDenseCap = 12;  // dense conversion limit: 4096 x 4096

// Operator product of two single terms; the +/-1, +/-i phase is folded into
// the coefficient. Throws DimensionError on mismatched lengths.
PauliTerm multiply_terms(const PauliTerm& a, const PauliTerm& b);

// Merges like strings and drops coefficients below drop_tol.
PauliSum simplify(const PauliSum& p, double drop_tol = kDropTolDefault);

PauliSum add(const PauliSum& a, const PauliSum& b);
PauliSum scale(const PauliSum& a, Complex c);
PauliSum multiply(const PauliSum& a, const PauliSum& b,
                  double drop_tol = kDropTolDefault);

inline PauliSum operator+(const PauliSum& a, const PauliSum& b) { return add(a, b); }
inline PauliSum operator*(const PauliSum& a, const PauliSum& b) { return multiply(a, b); }
inline PauliSum operator*(Complex c, const PauliSum& a) { return scale(a, c); }

// True when every coefficient of simplify(p) has |imag| < tol.
bool is_hermitian(const PauliSum& p, double tol = 1e-10);

// 2^n x 2^n matrix by Kronecker expansion. Throws CapacityError above
// kDenseCap qubits.
Eigen::MatrixXcd dense_from_pauli(const PauliSum& p);

// Inverse direction: coefficients h_m = trace(sigma_m H) / 2^n. Throws
// DimensionError for non-power-of-two sizes and ValidityError when H is not
// Hermitian within 1e-10.
PauliSum pauli_from_dense(const Eigen::MatrixXcd& h,
                          double drop_tol = kDropTolDefault);

// True iff all coefficients of g*s - s*g are below tol.
bool commutes(const PauliSum& g, const PauliSum& s, double tol = 1e-10);

// g - tau*s, simplified.
PauliSum shift_pencil(const PauliSum& g, const PauliSum& s, double tau);

// ((g - tau*s)^2, s^2), both expanded and simplified. The caller is
// responsible for [g, s] = 0 when interpreting the result as a cost pencil.
std::pair<PauliSum, PauliSum> shift_square_pencil(const PauliSum& g,
                                                  const PauliSum& s,
                                                  double tau);

}  // namespace qpencil::pauli
