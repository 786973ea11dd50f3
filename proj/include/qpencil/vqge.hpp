#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "qpencil/pauli.hpp"
#include "qpencil/sim.hpp"

// Variational generalized eigenvalue solver: interval estimation from the
// Rayleigh quotient, shifted cost functions, tau scan, and eigenvalue
// refinement. Grid points are evaluated sequentially because each point
// warm-starts from the previous optimum; restarts inside one minimization
// are independent.
namespace qpencil::vqge {

using sim::AnsatzSpec;
using sim::ExpectationMode;
using sim::ParamVector;
using sim::Statevector;

// Hermitian pencil (G, S) with S positive definite. Commutation is cached at
// construction and selects the cost family (squared pencil when [G,S] = 0,
// shifted-ratio otherwise). Positive definiteness is validated via a dense
// Cholesky up to kPdCheckCap qubits.
class MatrixPencil {
 public:
  MatrixPencil(pauli::PauliSum g, pauli::PauliSum s);

  const pauli::PauliSum& g() const { return g_; }
  const pauli::PauliSum& s() const { return s_; }
  bool commuting() const { return commuting_; }
  int n_qubits() const { return g_.n_qubits; }

  // Precomputed squares driving the scan costs: g^2, (gs + sg)/2, s^2.
  const pauli::PauliSum& g_squared() const { return g2_; }
  const pauli::PauliSum& gs_symmetric() const { return gs_; }
  const pauli::PauliSum& s_squared() const { return s2_; }

  static constexpr int kPdCheckCap = 10;

 private:
  pauli::PauliSum g_, s_;
  pauli::PauliSum g2_, gs_, s2_;
  bool commuting_ = false;
};

enum class OptimMethod { NelderMead, ParameterShiftGradientDescent };

struct OptimizerConfig {
  OptimMethod method = OptimMethod::NelderMead;
  int restarts = 8;
  int max_iters = 2000;
  double f_tol = 1e-9;
  double simplex_scale = 0.8;   // initial simplex edge for fresh starts
  double learning_rate = 0.1;   // parameter-shift gradient descent
  std::uint64_t seed = 0;

  void validate() const;
};

struct SolveConfig {
  OptimizerConfig optimizer;
  int grid_points = 1000;
  double detection_threshold = 1e-4;  // widened to max(thr, 9*delta^2) sampled
  int scan_restarts = 2;              // fresh starts per grid point
  int shots = 0;                      // 0 = exact expectations

  ExpectationMode mode() const {
    return shots == 0 ? ExpectationMode::exact()
                      : ExpectationMode::sampled(shots, optimizer.seed);
  }
};

enum class Direction { Min, Max };

struct MinimizeResult {
  double value = 0.0;
  ParamVector theta;
  bool converged = false;
};

struct Interval {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  ParamVector theta_min;
  ParamVector theta_max;
};

struct GenEigenpair {
  double eigenvalue = 0.0;
  ParamVector theta;
  Statevector state;
  std::optional<double> residual;  // ||G v - lambda S v||_2 when dense fits
  double cost_at_detection = 0.0;
};

struct ScanResult {
  Eigen::VectorXd tau_grid;
  Eigen::VectorXd min_cost;
  std::vector<ParamVector> theta_opt_per_tau;
  std::vector<GenEigenpair> detected;
};

// Extremal Rayleigh quotient over `restarts` random initializations.
MinimizeResult minimize_rayleigh(const MatrixPencil& pencil, const AnsatzSpec& spec,
                                 const OptimizerConfig& cfg, Direction direction,
                                 const ExpectationMode& mode = ExpectationMode::exact());

Interval estimate_interval(const MatrixPencil& pencil, const AnsatzSpec& spec,
                           const OptimizerConfig& cfg,
                           const ExpectationMode& mode = ExpectationMode::exact());

// Cost of the shifted pencil at (theta, tau): <(G - tau S)^2>/<S^2> for
// commuting pencils, ((<G> - tau <S>)/<S>)^2 otherwise. Nonnegative; equals
// (lambda - tau)^2 at a generalized eigenstate.
double cost_at(const MatrixPencil& pencil, const AnsatzSpec& spec,
               const ParamVector& theta, double tau,
               const ExpectationMode& mode = ExpectationMode::exact());

// Sweeps tau over [lambda_min, lambda_max]; per grid point the cost is
// minimized over theta warm-started from the previous point plus seeded
// fresh restarts, and below-threshold valleys are reported as detections.
ScanResult tau_scan(const MatrixPencil& pencil, const AnsatzSpec& spec,
                    const SolveConfig& cfg,
                    std::optional<Interval> interval = std::nullopt);

// lambda = tau* +/- sqrt(cost), sign chosen by probing cost at tau* +/- dtau.
GenEigenpair refine_eigenvalue(const MatrixPencil& pencil, const AnsatzSpec& spec,
                               double tau_star, const ParamVector& theta_star,
                               const ExpectationMode& mode = ExpectationMode::exact());

struct SolveResult {
  Interval interval;
  ScanResult scan;
  std::vector<GenEigenpair> eigenpairs;  // ascending, one per distinct value
};

// estimate_interval -> tau_scan -> refine, deduplicated and sorted.
SolveResult solve_full(const MatrixPencil& pencil, const AnsatzSpec& spec,
                       const SolveConfig& cfg);

std::vector<GenEigenpair> solve_all(const MatrixPencil& pencil,
                                    const AnsatzSpec& spec,
                                    const SolveConfig& cfg);

// Appendix-style bound: eigenvalue error <= delta / lambda_min(S) for
// per-expectation error delta.
double measurement_error_bound(double delta, double lambda_min_s);

// Analytic standard error of the sampled estimate of <H> at `state` with
// shots per term: sqrt(sum_m h_m^2 (1 - <sigma_m>^2) / shots).
double analytic_standard_error(const Statevector& state, const pauli::PauliSum& h,
                               int shots);

}  // namespace qpencil::vqge
