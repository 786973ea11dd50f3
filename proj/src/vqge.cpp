#include "qpencil/vqge.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "qpencil/dense.hpp"
#include "qpencil/rng.hpp"

namespace qpencil::vqge {

namespace {

using Objective = std::function<double(const ParamVector&)>;

constexpr double kInfCost = 1e300;

struct NelderMeadOptions {
  int max_iters = 2000;
  double f_tol = 1e-9;
  double scale = 0.8;
};

struct LocalMin {
  double value = kInfCost;
  ParamVector theta;
  bool converged = false;
};

// Standard Nelder-Mead with reflection/expansion/contraction/shrink;
// stops when the simplex f-spread drops below f_tol*(1 + |f_best|).
LocalMin nelder_mead(const Objective& f, const ParamVector& x0,
                     const NelderMeadOptions& opt) {
  const int p = static_cast<int>(x0.size());
  constexpr double kAlpha = 1.0, kGamma = 2.0, kRho = 0.5, kSigma = 0.5;

  std::vector<ParamVector> xs(p + 1, x0);
  std::vector<double> fs(p + 1);
  for (int i = 1; i <= p; ++i) xs[i](i - 1) += opt.scale;
  for (int i = 0; i <= p; ++i) fs[i] = f(xs[i]);

  std::vector<int> order(p + 1);
  LocalMin out;
  for (int iter = 0; iter < opt.max_iters; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fs[a] < fs[b]; });
    const int best = order[0], worst = order[p], second = order[p - 1];
    if (fs[worst] - fs[best] <= opt.f_tol * (1.0 + std::abs(fs[best]))) {
      out.converged = true;
      break;
    }
    ParamVector centroid = ParamVector::Zero(p);
    for (int k = 0; k < p; ++k) centroid += xs[order[k]];
    centroid /= p;

    ParamVector xr = centroid + kAlpha * (centroid - xs[worst]);
    const double fr = f(xr);
    if (fr < fs[best]) {
      ParamVector xe = centroid + kGamma * (xr - centroid);
      const double fe = f(xe);
      if (fe < fr) {
        xs[worst] = std::move(xe);
        fs[worst] = fe;
      } else {
        xs[worst] = std::move(xr);
        fs[worst] = fr;
      }
    } else if (fr < fs[second]) {
      xs[worst] = std::move(xr);
      fs[worst] = fr;
    } else {
      const bool outside = fr < fs[worst];
      ParamVector xc = outside ? (centroid + kRho * (xr - centroid)).eval()
                               : (centroid + kRho * (xs[worst] - centroid)).eval();
      const double fc = f(xc);
      if (fc < (outside ? fr : fs[worst])) {
        xs[worst] = std::move(xc);
        fs[worst] = fc;
      } else {
        for (int i = 1; i <= p; ++i) {
          const int k = order[i];
          xs[k] = xs[order[0]] + kSigma * (xs[k] - xs[order[0]]);
          fs[k] = f(xs[k]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= p; ++i)
    if (fs[i] < fs[best]) best = i;
  out.value = fs[best];
  out.theta = xs[best];
  return out;
}

ParamVector random_theta(int count, std::uint64_t seed, std::string_view label,
                         std::uint64_t c1, std::uint64_t c2) {
  auto eng = rng::substream(seed, label, c1, c2);
  ParamVector theta(count);
  for (int i = 0; i < count; ++i)
    theta(i) = rng::next_uniform(eng, 0.0, 2.0 * M_PI);
  return theta;
}

// Wraps an objective so denominator-guard hits become +inf instead of
// aborting the whole minimization.
Objective guarded(Objective f) {
  return [f = std::move(f)](const ParamVector& theta) {
    try {
      return f(theta);
    } catch (const DegenerateDenominatorError&) {
      return kInfCost;
    }
  };
}

}  // namespace

void OptimizerConfig::validate() const {
  if (restarts < 1) throw ValidityError("restarts must be >= 1");
  if (max_iters < 1) throw ValidityError("max_iters must be >= 1");
  if (!(f_tol > 0.0)) throw ValidityError("f_tol must be > 0");
  if (!(simplex_scale > 0.0)) throw ValidityError("simplex_scale must be > 0");
  if (!(learning_rate > 0.0)) throw ValidityError("learning_rate must be > 0");
}

MatrixPencil::MatrixPencil(pauli::PauliSum g, pauli::PauliSum s)
    : g_(pauli::simplify(g)), s_(pauli::simplify(s)) {
  if (g_.n_qubits != s_.n_qubits)
    throw DimensionError("pencil operators live on different registers");
  if (g_.n_qubits < 1) throw DimensionError("pencil needs at least one qubit");
  if (!pauli::is_hermitian(g_) || !pauli::is_hermitian(s_))
    throw ValidityError("pencil operators must be Hermitian");
  commuting_ = pauli::commutes(g_, s_);
  g2_ = pauli::multiply(g_, g_);
  gs_ = pauli::scale(pauli::add(pauli::multiply(g_, s_), pauli::multiply(s_, g_)), 0.5);
  s2_ = pauli::multiply(s_, s_);
  if (n_qubits() <= kPdCheckCap) {
    try {
      dense::cholesky(dense::HermitianMatrix(pauli::dense_from_pauli(s_)));
    } catch (const NumericalError&) {
      throw ValidityError("pencil S side is not positive definite");
    }
  }
}

namespace {

double guarded_denominator(double den) {
  if (std::abs(den) < sim::kDenominatorGuard)
    throw DegenerateDenominatorError("Rayleigh denominator |<S>| below 1e-8");
  return den;
}

// Expectation engine for one pencil at one mode. Exact expectations of
// term-heavy operators (the dense pencils coming from the fit pipelines) are
// served by cached dense matrices and matrix-vector products; sparse
// operators and sampled modes go through the per-term path.
class Evaluator {
 public:
  Evaluator(const MatrixPencil& pencil, const ExpectationMode& mode)
      : pencil_(pencil), mode_(mode) {
    const std::size_t total_terms =
        pencil.g().terms.size() + pencil.s().terms.size() +
        pencil.g_squared().terms.size() + pencil.gs_symmetric().terms.size() +
        pencil.s_squared().terms.size();
    const auto dim = static_cast<std::size_t>(1) << pencil.n_qubits();
    if (mode.is_exact() && pencil.n_qubits() <= 8 && total_terms > dim) {
      dense_ = true;
      dg_ = pauli::dense_from_pauli(pencil.g());
      ds_ = pauli::dense_from_pauli(pencil.s());
      dg2_ = pauli::dense_from_pauli(pencil.g_squared());
      dgs_ = pauli::dense_from_pauli(pencil.gs_symmetric());
      ds2_ = pauli::dense_from_pauli(pencil.s_squared());
    }
  }

  const MatrixPencil& pencil() const { return pencil_; }
  const ExpectationMode& mode() const { return mode_; }

  double eg(const Statevector& st) const { return expect(st, pencil_.g(), dg_); }
  double es(const Statevector& st) const { return expect(st, pencil_.s(), ds_); }
  double eg2(const Statevector& st) const {
    return expect(st, pencil_.g_squared(), dg2_);
  }
  double egs(const Statevector& st) const {
    return expect(st, pencil_.gs_symmetric(), dgs_);
  }
  double es2(const Statevector& st) const {
    return expect(st, pencil_.s_squared(), ds2_);
  }

 private:
  double expect(const Statevector& st, const pauli::PauliSum& sum,
                const Eigen::MatrixXcd& dense) const {
    if (dense_) {
      const Eigen::VectorXcd& v = st.amplitudes();
      return v.dot(dense * v).real();
    }
    return sim::expectation(st, sum, mode_);
  }

  const MatrixPencil& pencil_;
  ExpectationMode mode_;
  bool dense_ = false;
  Eigen::MatrixXcd dg_, ds_, dg2_, dgs_, ds2_;
};

// Rayleigh quotient of the squared shifted pencil, evaluated from the
// tau-independent expectations of g^2, (gs+sg)/2, s^2.
double squared_cost(const Evaluator& ev, const Statevector& state, double tau) {
  const double e_g2 = ev.eg2(state);
  const double e_gs = ev.egs(state);
  const double e_s2 = guarded_denominator(ev.es2(state));
  return std::max(0.0, (e_g2 - 2.0 * tau * e_gs + tau * tau * e_s2) / e_s2);
}

// ((<G> - tau <S>)/<S>)^2 for the non-commuting branch.
double ratio_cost(const Evaluator& ev, const Statevector& state, double tau) {
  const double e_s = guarded_denominator(ev.es(state));
  const double e_g = ev.eg(state);
  const double r = (e_g - tau * e_s) / e_s;
  return r * r;
}

// Eigenstate-residual surrogate <(G - R S)^2>/<S^2> with R = <G>/<S>.
// Vanishes exactly at generalized eigenstates; used to polish states in the
// non-commuting branch, where the literal minimum of the ratio cost is zero
// for every tau inside the spectral interval and carries no location
// information.
double residual_objective(const Evaluator& ev, const Statevector& state) {
  const double e_s = guarded_denominator(ev.es(state));
  const double e_g = ev.eg(state);
  const double r = e_g / e_s;
  const double e_g2 = ev.eg2(state);
  const double e_gs = ev.egs(state);
  const double e_s2 = guarded_denominator(ev.es2(state));
  return std::max(0.0, (e_g2 - 2.0 * r * e_gs + r * r * e_s2) / e_s2);
}

LocalMin gradient_descent_rayleigh(const MatrixPencil& pencil, const AnsatzSpec& spec,
                                   const OptimizerConfig& cfg, double sign,
                                   const ExpectationMode& mode,
                                   const ParamVector& theta0) {
  if (spec.rotation_kind != sim::RotationKind::RyOnly)
    throw ValidityError("parameter-shift gradient descent requires the RyOnly ansatz");
  const int p = spec.param_count();
  ParamVector theta = theta0;
  auto value_at = [&](const ParamVector& th) {
    return sign * sim::rayleigh_quotient(sim::prepare_state(spec, th), pencil.g(),
                                         pencil.s(), mode);
  };
  double f = value_at(theta);
  LocalMin out;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    ParamVector grad(p);
    for (int k = 0; k < p; ++k) {
      ParamVector plus = theta, minus = theta;
      plus(k) += M_PI / 2.0;
      minus(k) -= M_PI / 2.0;
      const auto sp = sim::prepare_state(spec, plus);
      const auto sm = sim::prepare_state(spec, minus);
      const double gp = sim::expectation(sp, pencil.g(), mode);
      const double gm = sim::expectation(sm, pencil.g(), mode);
      const double ssp = sim::expectation(sp, pencil.s(), mode);
      const double ssm = sim::expectation(sm, pencil.s(), mode);
      const auto s0 = sim::prepare_state(spec, theta);
      const double eg = sim::expectation(s0, pencil.g(), mode);
      const double es = guarded_denominator(sim::expectation(s0, pencil.s(), mode));
      const double dg = 0.5 * (gp - gm);
      const double ds = 0.5 * (ssp - ssm);
      grad(k) = sign * (dg * es - eg * ds) / (es * es);
    }
    theta -= cfg.learning_rate * grad;
    const double f_new = value_at(theta);
    if (std::abs(f_new - f) <= cfg.f_tol * (1.0 + std::abs(f_new))) {
      f = f_new;
      out.converged = true;
      break;
    }
    f = f_new;
  }
  out.value = f;
  out.theta = theta;
  return out;
}

}  // namespace

MinimizeResult minimize_rayleigh(const MatrixPencil& pencil, const AnsatzSpec& spec,
                                 const OptimizerConfig& cfg, Direction direction,
                                 const ExpectationMode& mode) {
  cfg.validate();
  const double sign = direction == Direction::Min ? 1.0 : -1.0;
  const auto label = direction == Direction::Min ? "rayleigh-min" : "rayleigh-max";
  Objective obj = guarded([&](const ParamVector& theta) {
    return sign * sim::rayleigh_quotient(sim::prepare_state(spec, theta), pencil.g(),
                                         pencil.s(), mode);
  });

  LocalMin best;
  for (int r = 0; r < cfg.restarts; ++r) {
    const ParamVector theta0 = random_theta(spec.param_count(), cfg.seed, label, r, 0);
    LocalMin lm;
    if (cfg.method == OptimMethod::NelderMead) {
      lm = nelder_mead(obj, theta0, {cfg.max_iters, cfg.f_tol, cfg.simplex_scale});
    } else {
      lm = gradient_descent_rayleigh(pencil, spec, cfg, sign, mode, theta0);
    }
    if (lm.value < best.value) best = lm;
  }
  if (best.value >= kInfCost)
    throw DegenerateDenominatorError("all restarts hit the denominator guard");
  return {sign * best.value, best.theta, best.converged};
}

Interval estimate_interval(const MatrixPencil& pencil, const AnsatzSpec& spec,
                           const OptimizerConfig& cfg, const ExpectationMode& mode) {
  MinimizeResult lo = minimize_rayleigh(pencil, spec, cfg, Direction::Min, mode);
  MinimizeResult hi = minimize_rayleigh(pencil, spec, cfg, Direction::Max, mode);
  if (lo.value > hi.value) std::swap(lo, hi);
  return {lo.value, hi.value, lo.theta, hi.theta};
}

namespace {

double cost_at_impl(const Evaluator& ev, const AnsatzSpec& spec,
                    const ParamVector& theta, double tau) {
  const Statevector state = sim::prepare_state(spec, theta);
  return ev.pencil().commuting() ? squared_cost(ev, state, tau)
                                 : ratio_cost(ev, state, tau);
}

}  // namespace

double cost_at(const MatrixPencil& pencil, const AnsatzSpec& spec,
               const ParamVector& theta, double tau, const ExpectationMode& mode) {
  const Evaluator ev(pencil, mode);
  return cost_at_impl(ev, spec, theta, tau);
}

namespace {

struct ScanPoint {
  double cost = kInfCost;
  ParamVector theta;
};

// Minimizes the branch objective from one start and reports the recorded
// scan cost at this tau. The commuting branch minimizes the squared-pencil
// quotient directly. The non-commuting branch runs two phases: first the
// eigenstate residual plus a tau-proximity term (the residual pins minima to
// eigenstates, the proximity term steers the search into the basin of the
// eigenstate nearest tau), then a pure-residual snap so the recorded ratio
// cost is evaluated at an actual eigenstate rather than a biased compromise.
ScanPoint scan_minimize(const Evaluator& ev, const AnsatzSpec& spec, double tau,
                        const ParamVector& start, const NelderMeadOptions& opt) {
  ScanPoint out;
  if (ev.pencil().commuting()) {
    Objective obj = guarded([&](const ParamVector& theta) {
      return squared_cost(ev, sim::prepare_state(spec, theta), tau);
    });
    LocalMin lm = nelder_mead(obj, start, opt);
    out.cost = lm.value;
    out.theta = lm.theta;
  } else {
    Objective combined = guarded([&](const ParamVector& theta) {
      const Statevector state = sim::prepare_state(spec, theta);
      return residual_objective(ev, state) + ratio_cost(ev, state, tau);
    });
    Objective residual_only = guarded([&](const ParamVector& theta) {
      return residual_objective(ev, sim::prepare_state(spec, theta));
    });
    const LocalMin seeded = nelder_mead(combined, start, opt);
    const NelderMeadOptions snap{opt.max_iters, opt.f_tol, 0.03};
    const LocalMin snapped = nelder_mead(residual_only, seeded.theta, snap);
    out.theta = snapped.theta;
    out.cost = ratio_cost(ev, sim::prepare_state(spec, snapped.theta), tau);
  }
  return out;
}

// Extra optimization pass applied to detected minima before refinement:
// polishes the state onto the eigenstate itself (tau-independent residual
// for the non-commuting branch, fixed-tau cost for the commuting one).
ParamVector deep_polish(const Evaluator& ev, const AnsatzSpec& spec, double tau,
                        const ParamVector& start, int max_iters) {
  const NelderMeadOptions opt{max_iters, 1e-13, 0.02};
  Objective obj = guarded([&](const ParamVector& theta) {
    const Statevector state = sim::prepare_state(spec, theta);
    return ev.pencil().commuting() ? squared_cost(ev, state, tau)
                                   : residual_objective(ev, state);
  });
  return nelder_mead(obj, start, opt).theta;
}

// Estimated eigenvalue of the branch a polished state sits on: the vertex
// of the frozen-state cost parabola (commuting) or the Rayleigh quotient.
double branch_value(const Evaluator& ev, const Statevector& state) {
  if (!ev.pencil().commuting())
    return ev.eg(state) / guarded_denominator(ev.es(state));
  const double e_gs = ev.egs(state);
  const double e_s2 = guarded_denominator(ev.es2(state));
  return e_gs / e_s2;
}

}  // namespace

ScanResult tau_scan(const MatrixPencil& pencil, const AnsatzSpec& spec,
                    const SolveConfig& cfg, std::optional<Interval> interval) {
  cfg.optimizer.validate();
  if (cfg.grid_points < 2) throw ValidityError("grid_points must be >= 2");
  if (!interval)
    interval = estimate_interval(pencil, spec, cfg.optimizer, cfg.mode());
  const ExpectationMode mode = cfg.mode();
  const Evaluator ev(pencil, mode);
  const int n_grid = cfg.grid_points;
  const double lo = interval->lambda_min;
  const double hi = interval->lambda_max;

  ScanResult result;
  result.tau_grid = Eigen::VectorXd::LinSpaced(n_grid, lo, hi);
  result.min_cost.resize(n_grid);
  result.theta_opt_per_tau.reserve(n_grid);

  const NelderMeadOptions warm_opt{cfg.optimizer.max_iters, cfg.optimizer.f_tol, 0.05};
  // Fresh restarts only need to land in a basin; the pool and warm polish
  // supply the precision afterwards.
  const NelderMeadOptions fresh_opt{std::max(200, cfg.optimizer.max_iters / 4),
                                    std::max(cfg.optimizer.f_tol, 1e-8),
                                    cfg.optimizer.simplex_scale};
  // Restarts are skipped while the warm-tracked state already sits at an
  // eigenvalue (cost far below the detection threshold).
  const double skip_restarts_below = 1e-2 * cfg.detection_threshold;
  const double grid_step = n_grid > 1 ? (hi - lo) / (n_grid - 1) : 0.0;

  // Every eigenstate branch discovered anywhere in the scan is remembered
  // and re-offered as a candidate at later grid points, so a basin only has
  // to be found once for its eigenvalue to be tracked across the sweep.
  std::vector<ParamVector> pool_theta;
  std::vector<double> pool_value;
  const double pool_tol = std::max(0.5 * grid_step, 1e-12 * (1.0 + std::abs(lo)));
  auto pool_insert = [&](const ParamVector& theta) {
    const double value = branch_value(ev, sim::prepare_state(spec, theta));
    for (std::size_t i = 0; i < pool_value.size(); ++i) {
      if (std::abs(pool_value[i] - value) <= pool_tol) {
        pool_theta[i] = theta;  // refresh the stored branch representative
        pool_value[i] = value;
        return;
      }
    }
    pool_theta.push_back(theta);
    pool_value.push_back(value);
  };

  ParamVector warm = interval->theta_min;
  Eigen::VectorXd delta_j = Eigen::VectorXd::Zero(n_grid);
  for (int j = 0; j < n_grid; ++j) {
    const double tau = result.tau_grid(j);
    ScanPoint winner = scan_minimize(ev, spec, tau, warm, warm_opt);
    if (winner.cost > skip_restarts_below) {
      // Best remembered branch for this tau, repolished.
      int best_pool = -1;
      double best_pool_cost = winner.cost;
      for (std::size_t i = 0; i < pool_theta.size(); ++i) {
        const double c = cost_at_impl(ev, spec, pool_theta[i], tau);
        if (c < best_pool_cost) {
          best_pool_cost = c;
          best_pool = static_cast<int>(i);
        }
      }
      if (best_pool >= 0) {
        ScanPoint cand = scan_minimize(
            ev, spec, tau, pool_theta[static_cast<std::size_t>(best_pool)], warm_opt);
        if (cand.cost < winner.cost) winner = cand;
      }
      for (int r = 0; r < cfg.scan_restarts; ++r) {
        const ParamVector theta0 = random_theta(
            spec.param_count(), cfg.optimizer.seed, "scan-restart",
            static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(r));
        ScanPoint cand = scan_minimize(ev, spec, tau, theta0, fresh_opt);
        if (cand.cost < winner.cost) winner = cand;
        pool_insert(cand.theta);
      }
    }
    pool_insert(winner.theta);
    result.min_cost(j) = winner.cost;
    result.theta_opt_per_tau.push_back(winner.theta);
    warm = winner.theta;
    if (!mode.is_exact()) {
      const Statevector state = sim::prepare_state(spec, winner.theta);
      double se = 0.0;
      if (pencil.commuting()) {
        se = std::max({analytic_standard_error(state, pencil.g_squared(), mode.shots),
                       analytic_standard_error(state, pencil.gs_symmetric(), mode.shots),
                       analytic_standard_error(state, pencil.s_squared(), mode.shots)});
      } else {
        se = std::max(analytic_standard_error(state, pencil.g(), mode.shots),
                      analytic_standard_error(state, pencil.s(), mode.shots));
      }
      delta_j(j) = se;
    }
  }

  // Detection: one candidate per contiguous below-threshold valley, at the
  // valley argmin; candidates closer than two grid steps are merged.
  std::vector<std::pair<int, double>> candidates;
  int j = 0;
  while (j < n_grid) {
    const double thr_j =
        std::max(cfg.detection_threshold, 9.0 * delta_j(j) * delta_j(j));
    if (result.min_cost(j) < thr_j) {
      int arg = j;
      int k = j;
      while (k < n_grid &&
             result.min_cost(k) <
                 std::max(cfg.detection_threshold, 9.0 * delta_j(k) * delta_j(k))) {
        if (result.min_cost(k) < result.min_cost(arg)) arg = k;
        ++k;
      }
      candidates.emplace_back(arg, result.min_cost(arg));
      j = k;
    } else {
      ++j;
    }
  }
  std::vector<std::pair<int, double>> merged;
  for (const auto& c : candidates) {
    if (!merged.empty() &&
        (result.tau_grid(c.first) - result.tau_grid(merged.back().first)) <=
            2.0 * grid_step + 1e-15) {
      if (c.second < merged.back().second) merged.back() = c;
    } else {
      merged.push_back(c);
    }
  }
  for (const auto& [idx, cost] : merged) {
    (void)cost;
    const ParamVector theta =
        deep_polish(ev, spec, result.tau_grid(idx),
                    result.theta_opt_per_tau[static_cast<std::size_t>(idx)],
                    cfg.optimizer.max_iters);
    if (!pencil.commuting()) {
      // In the ratio branch a non-eigenstate can fake a low cost by tracking
      // R = tau; true eigenstates are certified by the residual instead.
      const double v = residual_objective(ev, sim::prepare_state(spec, theta));
      const double gate = std::max(cfg.detection_threshold,
                                   9.0 * delta_j(idx) * delta_j(idx));
      if (v > gate) continue;
    }
    result.detected.push_back(
        refine_eigenvalue(pencil, spec, result.tau_grid(idx), theta, mode));
  }
  return result;
}

GenEigenpair refine_eigenvalue(const MatrixPencil& pencil, const AnsatzSpec& spec,
                               double tau_star, const ParamVector& theta_star,
                               const ExpectationMode& mode) {
  const Evaluator ev(pencil, mode);
  const double cost0 = cost_at_impl(ev, spec, theta_star, tau_star);
  const double dtau = 1e-5 * (1.0 + std::abs(tau_star));
  const double c_plus = cost_at_impl(ev, spec, theta_star, tau_star + dtau);
  const double c_minus = cost_at_impl(ev, spec, theta_star, tau_star - dtau);
  const double sign = c_plus < c_minus ? 1.0 : -1.0;
  const double lambda = tau_star + sign * std::sqrt(std::max(cost0, 0.0));

  GenEigenpair pair{lambda, theta_star, sim::prepare_state(spec, theta_star),
                    std::nullopt, cost0};
  if (pencil.n_qubits() <= pauli::kDenseCap) {
    const Eigen::MatrixXcd dg = pauli::dense_from_pauli(pencil.g());
    const Eigen::MatrixXcd ds = pauli::dense_from_pauli(pencil.s());
    const Eigen::VectorXcd v = pair.state.amplitudes();
    pair.residual = (dg * v - lambda * (ds * v)).norm();
  }
  return pair;
}

SolveResult solve_full(const MatrixPencil& pencil, const AnsatzSpec& spec,
                       const SolveConfig& cfg) {
  const ExpectationMode mode = cfg.mode();
  SolveResult out;
  out.interval = estimate_interval(pencil, spec, cfg.optimizer, mode);
  const double width = out.interval.lambda_max - out.interval.lambda_min;
  const double scale = 1.0 + std::abs(out.interval.lambda_min);

  SolveConfig scan_cfg = cfg;
  if (width <= 1e-10 * scale) scan_cfg.grid_points = 2;  // proportional pencil
  out.scan = tau_scan(pencil, spec, scan_cfg, out.interval);

  std::vector<GenEigenpair> candidates = out.scan.detected;
  candidates.push_back(refine_eigenvalue(pencil, spec, out.interval.lambda_min,
                                         out.interval.theta_min, mode));
  candidates.push_back(refine_eigenvalue(pencil, spec, out.interval.lambda_max,
                                         out.interval.theta_max, mode));
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const GenEigenpair& a, const GenEigenpair& b) {
                     return a.eigenvalue < b.eigenvalue;
                   });
  const double step =
      scan_cfg.grid_points > 1 ? width / (scan_cfg.grid_points - 1) : 0.0;
  const double merge_tol = std::max(2.0 * step, 1e-9 * scale);
  for (const auto& c : candidates) {
    if (!out.eigenpairs.empty() &&
        c.eigenvalue - out.eigenpairs.back().eigenvalue <= merge_tol) {
      if (c.cost_at_detection < out.eigenpairs.back().cost_at_detection)
        out.eigenpairs.back() = c;
    } else {
      out.eigenpairs.push_back(c);
    }
  }
  return out;
}

std::vector<GenEigenpair> solve_all(const MatrixPencil& pencil, const AnsatzSpec& spec,
                                    const SolveConfig& cfg) {
  return solve_full(pencil, spec, cfg).eigenpairs;
}

double measurement_error_bound(double delta, double lambda_min_s) {
  if (delta < 0.0) throw ValidityError("delta must be >= 0");
  if (!(lambda_min_s > 0.0))
    throw ValidityError("lambda_min(S) must be > 0");
  return delta / lambda_min_s;
}

double analytic_standard_error(const Statevector& state, const pauli::PauliSum& h,
                               int shots) {
  if (shots < 1) throw ValidityError("shots must be >= 1");
  double var = 0.0;
  for (const auto& t : h.terms) {
    if (t.string.is_identity()) continue;
    pauli::PauliSum single(h.n_qubits);
    single.terms.push_back({1.0, t.string});
    const double mean = sim::expectation_exact(state, single);
    var += std::norm(t.coeff) * std::max(0.0, 1.0 - mean * mean) / shots;
  }
  return std::sqrt(var);
}

}  // namespace qpencil::vqge
