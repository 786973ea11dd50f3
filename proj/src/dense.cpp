#include "qpencil/dense.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

namespace qpencil::dense {

using Complex = std::complex<double>;

double hermitian_residue(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DimensionError("matrix must be square");
  if (m_.rows() < 1) throw DimensionError("matrix must be non-empty");
  if (hermitian_residue(m_) >= 1e-10)
    throw ValidityError("matrix is not Hermitian within 1e-10");
}

HermitianMatrix HermitianMatrix::from_real(const Eigen::MatrixXd& m) {
  return HermitianMatrix(m.cast<Complex>());
}

Eigen::MatrixXcd cholesky(const HermitianMatrix& s) {
  const Eigen::Index n = s.dim();
  if (n > kDimCap) throw CapacityError("cholesky capped at 4096");
  const Eigen::MatrixXcd& a = s.mat();
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double diag = a(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (!(diag > 0.0) || !std::isfinite(diag))
      throw NumericalError("matrix is not positive definite (pivot " +
                           std::to_string(j) + ")");
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Complex v = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= l(i, k) * std::conj(l(j, k));
      l(i, j) = v / ljj;
    }
  }
  return l;
}

EigResult hermitian_eig(const HermitianMatrix& h) {
  const Eigen::Index n = h.dim();
  if (n > kDimCap) throw CapacityError("hermitian_eig capped at 4096");
  Eigen::MatrixXcd a = h.mat();
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);

  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  const double stop = 1e-14 * scale * static_cast<double>(n);

  constexpr int kSweepCap = 100;
  for (int sweep = 0; sweep <= kSweepCap; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off < stop) {
      Eigen::VectorXd values(n);
      for (Eigen::Index i = 0; i < n; ++i) values(i) = a(i, i).real();
      std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](Eigen::Index x, Eigen::Index y) { return values(x) < values(y); });
      EigResult out;
      out.values.resize(n);
      out.vectors.resize(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = values(order[static_cast<std::size_t>(i)]);
        out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
      }
      return out;
    }
    if (sweep == kSweepCap) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r < 1e-300) continue;
        const Complex phase = a(p, q) / r;  // a_pq = r * e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Zero a_pq with the unitary J: J_pp = c, J_pq = -s*phase,
        // J_qp = s*conj(phase), J_qq = c; tan(2 theta) = 2r / (app - aqq).
        double t;
        if (std::abs(app - aqq) < 1e-300 * std::max(1.0, r)) {
          t = 1.0;
        } else {
          const double tau = (app - aqq) / (2.0 * r);
          t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex spe = s * phase;          // s * e^{i phi}
        const Complex spc = s * std::conj(phase);
        // Rows p, q of A <- J^dagger A.
        for (Eigen::Index j = 0; j < n; ++j) {
          const Complex ap = a(p, j), aq = a(q, j);
          a(p, j) = c * ap + spe * aq;
          a(q, j) = -spc * ap + c * aq;
        }
        // Columns p, q of A <- A J, and accumulate V <- V J.
        for (Eigen::Index i = 0; i < n; ++i) {
          const Complex ap = a(i, p), aq = a(i, q);
          a(i, p) = c * ap + spc * aq;
          a(i, q) = -spe * ap + c * aq;
          const Complex vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp + spc * vq;
          v(i, q) = -spe * vp + c * vq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  throw NumericalError("Jacobi eigensolver did not converge in 100 sweeps");
}

Eigen::MatrixXcd solve_lower(const Eigen::MatrixXcd& l, const Eigen::MatrixXcd& b) {
  const Eigen::Index n = l.rows();
  if (l.cols() != n || b.rows() != n) throw DimensionError("triangular solve shape");
  Eigen::MatrixXcd x = b;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex v = x(i, c);
      for (Eigen::Index k = 0; k < i; ++k) v -= l(i, k) * x(k, c);
      x(i, c) = v / l(i, i);
    }
  }
  return x;
}

Eigen::MatrixXcd solve_upper(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& b) {
  const Eigen::Index n = u.rows();
  if (u.cols() != n || b.rows() != n) throw DimensionError("triangular solve shape");
  Eigen::MatrixXcd x = b;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      Complex v = x(i, c);
      for (Eigen::Index k = i + 1; k < n; ++k) v -= u(i, k) * x(k, c);
      x(i, c) = v / u(i, i);
    }
  }
  return x;
}

EigResult generalized_eig(const HermitianMatrix& g, const HermitianMatrix& s) {
  if (g.dim() != s.dim()) throw DimensionError("pencil matrices differ in size");
  const Eigen::MatrixXcd l = cholesky(s);
  // W = L^-1 G L^-dagger, hermitized against roundoff.
  const Eigen::MatrixXcd y = solve_lower(l, g.mat());
  Eigen::MatrixXcd w = solve_lower(l, y.adjoint()).adjoint();
  w = 0.5 * (w + w.adjoint()).eval();
  EigResult inner = hermitian_eig(HermitianMatrix(w));
  EigResult out;
  out.values = inner.values;
  out.vectors = solve_upper(l.adjoint(), inner.vectors);
  return out;
}

}  // namespace qpencil::dense
