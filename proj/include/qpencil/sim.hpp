#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "qpencil/errors.hpp"
#include "qpencil/pauli.hpp"

// Statevector simulation of the variational ansatz, exact and shot-sampled
// expectation estimation, Rayleigh quotients, and swap-test overlap
// sampling. Statevectors are immutable once returned; sampling draws from
// named substreams of one explicit seed (see rng.hpp), so concurrent
// evaluation cannot change results.
namespace qpencil::sim {

using Complex = std::complex<double>;

// Normalized complex amplitude vector over n qubits. Qubit 0 is the most
// significant bit of the amplitude index, matching pauli::dense_from_pauli.
class Statevector {
 public:
  Statevector(int n_qubits, Eigen::VectorXcd amplitudes);

  // Validates 2^n length and unit norm (1e-10).
  static Statevector from_amplitudes(Eigen::VectorXcd amplitudes);
  static Statevector zero_state(int n_qubits);
  // Interprets a unit-norm real vector of power-of-two length as amplitudes.
  static Statevector from_unit_vector(const Eigen::VectorXd& v);

  int n_qubits() const { return n_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }

 private:
  int n_;
  Eigen::VectorXcd amps_;
};

enum class RotationKind { RyOnly, RzRy };

// Hardware-efficient ansatz: an initial rotation layer on |0...0>, then
// `layers` repetitions of (CZ entangler, rotation layer). Parameters are
// layer-major, qubit-minor; the RzRy variant uses two angles per qubit per
// layer (Rz first, then Ry), giving 2n(L+1) parameters instead of n(L+1).
struct AnsatzSpec {
  int n_qubits = 0;
  int layers = 0;
  RotationKind rotation_kind = RotationKind::RyOnly;
  std::vector<std::pair<int, int>> entangler;  // controlled-Z pairs

  // Chain entangler (0,1), (1,2), ..., (n-2, n-1); the default experiment
  // setting is n = 5, L = 1, RyOnly (10 parameters).
  static AnsatzSpec hardware_efficient(int n_qubits, int layers,
                                       RotationKind kind = RotationKind::RyOnly);

  // Chain plus the closing pair (0, n-1). The open chain with Ry rotations
  // carries a conserved quantity on three or more qubits and cannot reach
  // every real state; closing the ring (L >= 2) removes the obstruction, so
  // fits on generic pencils use this variant.
  static AnsatzSpec ring(int n_qubits, int layers,
                         RotationKind kind = RotationKind::RyOnly);

  int param_count() const;
  void validate() const;
};

using ParamVector = Eigen::VectorXd;

Statevector prepare_state(const AnsatzSpec& spec, const ParamVector& theta);

// shots == 0 selects exact expectations; otherwise per-term sampled
// estimation with `shots` measurements per Pauli term.
struct ExpectationMode {
  int shots = 0;
  std::uint64_t seed = 0;

  static ExpectationMode exact() { return {0, 0}; }
  static ExpectationMode sampled(int shots, std::uint64_t seed) {
    return {shots, seed};
  }
  bool is_exact() const { return shots == 0; }
};

// <phi| H |phi> without sampling. H must be Hermitian (real coefficients).
double expectation_exact(const Statevector& state, const pauli::PauliSum& h);

// Per-term quantum expectation estimation: each Pauli term is rotated to a
// Z-product basis and measured shots_per_term times; term means are combined
// with the coefficients. Unbiased and deterministic given the seed. The
// substream is named by the Pauli string, so two observables sharing a
// string at the same seed reuse the same simulated measurement data (shared
// measurement semantics).
double expectation_sampled(const Statevector& state, const pauli::PauliSum& h,
                           int shots_per_term, std::uint64_t seed);

double expectation(const Statevector& state, const pauli::PauliSum& h,
                   const ExpectationMode& mode);

inline constexpr double kDenominatorGuard = 1e-8;

// <G>/<S>; throws DegenerateDenominatorError when |<S>| < 1e-8.
double rayleigh_quotient(const Statevector& state, const pauli::PauliSum& g,
                         const pauli::PauliSum& s,
                         const ExpectationMode& mode = ExpectationMode::exact());

// Swap-test estimate of |<x|y>|^2: draws `shots` Bernoulli outcomes with
// success probability (1 + |<x|y>|^2) / 2 and returns clamp(2*p_hat - 1, 0, 1).
double swap_test_sample(const Statevector& x, const Statevector& y, int shots,
                        std::uint64_t seed);

// Exact |<x|y>|^2 (reference for the sampled path).
double overlap_squared(const Statevector& x, const Statevector& y);

}  // namespace qpencil::sim
