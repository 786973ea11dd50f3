#include "qpencil/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qpencil/rng.hpp"

namespace qpencil::sim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Eigen::Index dim_of(int n_qubits) { return Eigen::Index(1) << n_qubits; }

// Applies Ry(theta) = exp(-i theta Y / 2) on `qubit`.
void apply_ry(Eigen::VectorXcd& amps, int n, int qubit, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Eigen::Index stride = Eigen::Index(1) << (n - 1 - qubit);
  const Eigen::Index dim = amps.size();
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index i = base; i < base + stride; ++i) {
      const Complex a0 = amps(i);
      const Complex a1 = amps(i + stride);
      amps(i) = c * a0 - s * a1;
      amps(i + stride) = s * a0 + c * a1;
    }
  }
}

// Applies Rz(theta) = diag(e^{-i theta/2}, e^{i theta/2}) on `qubit`.
void apply_rz(Eigen::VectorXcd& amps, int n, int qubit, double theta) {
  const Complex e0 = std::polar(1.0, -theta / 2.0);
  const Complex e1 = std::polar(1.0, theta / 2.0);
  const Eigen::Index bit = Eigen::Index(1) << (n - 1 - qubit);
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    amps(i) *= (i & bit) ? e1 : e0;
}

void apply_cz(Eigen::VectorXcd& amps, int n, int qa, int qb) {
  const Eigen::Index ba = Eigen::Index(1) << (n - 1 - qa);
  const Eigen::Index bb = Eigen::Index(1) << (n - 1 - qb);
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    if ((i & ba) && (i & bb)) amps(i) = -amps(i);
}

// Hadamard on `qubit` (basis change for X measurements).
void apply_h(Eigen::VectorXcd& amps, int n, int qubit) {
  const Eigen::Index stride = Eigen::Index(1) << (n - 1 - qubit);
  const Eigen::Index dim = amps.size();
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index i = base; i < base + stride; ++i) {
      const Complex a0 = amps(i);
      const Complex a1 = amps(i + stride);
      amps(i) = kInvSqrt2 * (a0 + a1);
      amps(i + stride) = kInvSqrt2 * (a0 - a1);
    }
  }
}

// S^dagger on `qubit` (together with H: basis change for Y measurements).
void apply_sdg(Eigen::VectorXcd& amps, int n, int qubit) {
  const Eigen::Index bit = Eigen::Index(1) << (n - 1 - qubit);
  const Complex minus_i(0.0, -1.0);
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    if (i & bit) amps(i) *= minus_i;
}

}  // namespace

Statevector::Statevector(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_ < 1) throw DimensionError("statevector needs at least one qubit");
  if (amps_.size() != dim_of(n_))
    throw DimensionError("amplitude length does not match qubit count");
}

Statevector Statevector::from_amplitudes(Eigen::VectorXcd amplitudes) {
  const Eigen::Index len = amplitudes.size();
  if (len < 2 || (len & (len - 1)) != 0)
    throw DimensionError("amplitude length must be a power of two >= 2");
  int n = 0;
  while ((Eigen::Index(1) << n) < len) ++n;
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10)
    throw ValidityError("statevector is not normalized within 1e-10");
  return Statevector(n, std::move(amplitudes));
}

Statevector Statevector::zero_state(int n_qubits) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(dim_of(n_qubits));
  amps(0) = 1.0;
  return Statevector(n_qubits, std::move(amps));
}

Statevector Statevector::from_unit_vector(const Eigen::VectorXd& v) {
  return from_amplitudes(v.cast<Complex>());
}

AnsatzSpec AnsatzSpec::hardware_efficient(int n_qubits, int layers,
                                          RotationKind kind) {
  AnsatzSpec spec;
  spec.n_qubits = n_qubits;
  spec.layers = layers;
  spec.rotation_kind = kind;
  for (int q = 0; q + 1 < n_qubits; ++q) spec.entangler.emplace_back(q, q + 1);
  spec.validate();
  return spec;
}

AnsatzSpec AnsatzSpec::ring(int n_qubits, int layers, RotationKind kind) {
  AnsatzSpec spec = hardware_efficient(n_qubits, layers, kind);
  if (n_qubits >= 3) spec.entangler.emplace_back(0, n_qubits - 1);
  return spec;
}

int AnsatzSpec::param_count() const {
  const int per_layer = (rotation_kind == RotationKind::RyOnly ? 1 : 2) * n_qubits;
  return per_layer * (layers + 1);
}

void AnsatzSpec::validate() const {
  if (n_qubits < 1) throw DimensionError("ansatz needs at least one qubit");
  if (layers < 0) throw ValidityError("layer count must be >= 0");
  for (const auto& [a, b] : entangler) {
    if (a == b) throw ValidityError("entangler pair must use distinct qubits");
    if (a < 0 || b < 0 || a >= n_qubits || b >= n_qubits)
      throw DimensionError("entangler qubit index out of range");
  }
}

Statevector prepare_state(const AnsatzSpec& spec, const ParamVector& theta) {
  spec.validate();
  if (theta.size() != spec.param_count())
    throw DimensionError("parameter vector length does not match ansatz");
  const int n = spec.n_qubits;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(dim_of(n));
  amps(0) = 1.0;
  Eigen::Index idx = 0;
  auto rotation_layer = [&]() {
    for (int q = 0; q < n; ++q) {
      if (spec.rotation_kind == RotationKind::RzRy)
        apply_rz(amps, n, q, theta(idx++));
      apply_ry(amps, n, q, theta(idx++));
    }
  };
  rotation_layer();
  for (int layer = 0; layer < spec.layers; ++layer) {
    for (const auto& [a, b] : spec.entangler) apply_cz(amps, n, a, b);
    rotation_layer();
  }
  return Statevector(n, std::move(amps));
}

namespace {

// <phi| sigma |phi> for a single Pauli string.
Complex string_expectation(const Eigen::VectorXcd& amps, const pauli::PauliString& s) {
  const std::uint64_t flip = s.x_mask();
  Complex acc = 0.0;
  const Eigen::Index dim = amps.size();
  const std::uint64_t y = s.x_mask() & s.z_mask();
  const std::uint64_t z_only = s.z_mask() & ~s.x_mask();
  constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto m = static_cast<std::uint64_t>(i);
    int exp = static_cast<int>(std::popcount(y & ~m) % 4);
    exp += 3 * static_cast<int>(std::popcount(y & m) % 4);
    exp += 2 * static_cast<int>(std::popcount(z_only & m) % 2);
    acc += std::conj(amps(static_cast<Eigen::Index>(m ^ flip))) * kIPow[exp & 3] * amps(i);
  }
  return acc;
}

void check_match(const Statevector& state, const pauli::PauliSum& h) {
  if (state.n_qubits() != h.n_qubits)
    throw DimensionError("state and observable qubit counts differ");
}

}  // namespace

double expectation_exact(const Statevector& state, const pauli::PauliSum& h) {
  check_match(state, h);
  Complex acc = 0.0;
  for (const auto& t : h.terms)
    acc += t.coeff * string_expectation(state.amplitudes(), t.string);
  if (std::abs(acc.imag()) > 1e-10)
    throw ValidityError("expectation has imaginary residue; observable not Hermitian");
  return acc.real();
}

double expectation_sampled(const Statevector& state, const pauli::PauliSum& h,
                           int shots_per_term, std::uint64_t seed) {
  check_match(state, h);
  if (shots_per_term < 1) throw ValidityError("shots_per_term must be >= 1");
  const int n = state.n_qubits();
  const Eigen::Index dim = state.amplitudes().size();

  double acc = 0.0;
  for (const auto& t : h.terms) {
    if (std::abs(t.coeff.imag()) > 1e-10)
      throw ValidityError("sampled estimation requires real coefficients");
    const double coeff = t.coeff.real();
    if (t.string.is_identity()) {
      acc += coeff;  // identity needs no measurement
      continue;
    }
    // Rotate every non-Z letter into the Z basis, then sample bitstrings.
    Eigen::VectorXcd rotated = state.amplitudes();
    for (int q = 0; q < n; ++q) {
      switch (t.string.letter(q)) {
        case pauli::Letter::X:
          apply_h(rotated, n, q);
          break;
        case pauli::Letter::Y:
          apply_sdg(rotated, n, q);
          apply_h(rotated, n, q);
          break;
        default:
          break;
      }
    }
    Eigen::VectorXd cdf(dim);
    double run = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      run += std::norm(rotated(i));
      cdf(i) = run;
    }
    const double total = cdf(dim - 1);

    const std::uint64_t support = t.string.x_mask() | t.string.z_mask();
    auto eng = rng::substream(seed, "qee", t.string.x_mask(), t.string.z_mask());
    std::int64_t sum = 0;
    for (int shot = 0; shot < shots_per_term; ++shot) {
      const double u = rng::next_double(eng) * total;
      const auto* begin = cdf.data();
      const auto* it = std::upper_bound(begin, begin + dim, u);
      auto outcome = static_cast<std::uint64_t>(std::min<Eigen::Index>(
          static_cast<Eigen::Index>(it - begin), dim - 1));
      sum += (std::popcount(outcome & support) & 1) ? -1 : 1;
    }
    acc += coeff * static_cast<double>(sum) / shots_per_term;
  }
  return acc;
}

double expectation(const Statevector& state, const pauli::PauliSum& h,
                   const ExpectationMode& mode) {
  return mode.is_exact() ? expectation_exact(state, h)
                         : expectation_sampled(state, h, mode.shots, mode.seed);
}

double rayleigh_quotient(const Statevector& state, const pauli::PauliSum& g,
                         const pauli::PauliSum& s, const ExpectationMode& mode) {
  const double den = expectation(state, s, mode);
  if (std::abs(den) < kDenominatorGuard)
    throw DegenerateDenominatorError("Rayleigh denominator |<S>| below 1e-8");
  return expectation(state, g, mode) / den;
}

double overlap_squared(const Statevector& x, const Statevector& y) {
  if (x.n_qubits() != y.n_qubits())
    throw DimensionError("overlap of states with different qubit counts");
  return std::norm(x.amplitudes().dot(y.amplitudes()));
}

double swap_test_sample(const Statevector& x, const Statevector& y, int shots,
                        std::uint64_t seed) {
  if (shots < 1) throw ValidityError("shots must be >= 1");
  const double p = 0.5 * (1.0 + overlap_squared(x, y));
  auto eng = rng::substream(seed, "swap");
  int successes = 0;
  for (int shot = 0; shot < shots; ++shot)
    if (rng::next_double(eng) < p) ++successes;
  const double estimate = 2.0 * (static_cast<double>(successes) / shots) - 1.0;
  return std::clamp(estimate, 0.0, 1.0);
}

}  // namespace qpencil::sim
