#include "qpencil/pauli.hpp"

#include <bit>
#include <sstream>
#include <unordered_map>

namespace qpencil::pauli {

namespace {

constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Exponent t of i in P*Q = i^t * R for single-qubit letters, indexed by the
// (x,z) bit codes 2x+z: I=0, Z=1, X=2, Y=3.
constexpr int kPhaseExp[4][4] = {
    // I  Z  X  Y
    {0, 0, 0, 0},  // I *
    {0, 0, 1, 3},  // Z * : ZX=iY, ZY=-iX
    {0, 3, 0, 1},  // X * : XZ=-iY, XY=iZ
    {0, 1, 3, 0},  // Y * : YZ=iX, YX=-iZ
};

int code_at(const PauliString& p, int bit) {
  const int x = static_cast<int>((p.x_mask() >> bit) & 1);
  const int z = static_cast<int>((p.z_mask() >> bit) & 1);
  return 2 * x + z;
}

}  // namespace

char letter_char(Letter l) {
  switch (l) {
    case Letter::I: return 'I';
    case Letter::X: return 'X';
    case Letter::Y: return 'Y';
    case Letter::Z: return 'Z';
  }
  return '?';
}

Letter letter_from_char(char c) {
  switch (c) {
    case 'I': return Letter::I;
    case 'X': return Letter::X;
    case 'Y': return Letter::Y;
    case 'Z': return Letter::Z;
    default:
      throw ValidityError(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 64)
    throw DimensionError("qubit count must be in [1, 64]");
}

PauliString::PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : PauliString(n_qubits) {
  const std::uint64_t valid =
      n_qubits == 64 ? ~0ull : ((1ull << n_qubits) - 1);
  if ((x_mask & ~valid) || (z_mask & ~valid))
    throw DimensionError("Pauli mask exceeds qubit count");
  x_ = x_mask;
  z_ = z_mask;
}

PauliString PauliString::from_string(const std::string& letters) {
  PauliString p(static_cast<int>(letters.size()));
  for (int q = 0; q < p.n_; ++q)
    p = p.with_letter(q, letter_from_char(letters[q]));
  return p;
}

Letter PauliString::letter(int qubit) const {
  if (qubit < 0 || qubit >= n_) throw DimensionError("qubit index out of range");
  const int bit = n_ - 1 - qubit;
  const bool x = (x_ >> bit) & 1;
  const bool z = (z_ >> bit) & 1;
  if (x && z) return Letter::Y;
  if (x) return Letter::X;
  if (z) return Letter::Z;
  return Letter::I;
}

PauliString PauliString::with_letter(int qubit, Letter l) const {
  if (qubit < 0 || qubit >= n_) throw DimensionError("qubit index out of range");
  const std::uint64_t bit = 1ull << (n_ - 1 - qubit);
  PauliString out = *this;
  out.x_ &= ~bit;
  out.z_ &= ~bit;
  if (l == Letter::X || l == Letter::Y) out.x_ |= bit;
  if (l == Letter::Z || l == Letter::Y) out.z_ |= bit;
  return out;
}

std::string PauliString::to_string() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[q] = letter_char(letter(q));
  return s;
}

PauliSum PauliSum::identity(int n_qubits, Complex coeff) {
  PauliSum p(n_qubits);
  p.terms.push_back({coeff, PauliString(n_qubits)});
  return p;
}

PauliSum& PauliSum::add_term(Complex coeff, const std::string& letters) {
  PauliString s = PauliString::from_string(letters);
  if (n_qubits == 0) n_qubits = s.n_qubits();
  if (s.n_qubits() != n_qubits)
    throw DimensionError("term length does not match sum qubit count");
  terms.push_back({coeff, s});
  return *this;
}

std::string PauliSum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (!first) os << " + ";
    os << "(" << t.coeff.real();
    if (t.coeff.imag() != 0.0) os << (t.coeff.imag() < 0 ? "" : "+") << t.coeff.imag() << "i";
    os << ")*" << t.string.to_string();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

PauliTerm multiply_terms(const PauliTerm& a, const PauliTerm& b) {
  if (a.string.n_qubits() != b.string.n_qubits())
    throw DimensionError("cannot multiply Pauli terms of different lengths");
  const std::uint64_t support =
      a.string.x_mask() | a.string.z_mask() | b.string.x_mask() | b.string.z_mask();
  int exp = 0;
  for (std::uint64_t m = support; m != 0; m &= m - 1) {
    const int bit = std::countr_zero(m);
    exp += kPhaseExp[code_at(a.string, bit)][code_at(b.string, bit)];
  }
  PauliString s(a.string.n_qubits(), a.string.x_mask() ^ b.string.x_mask(),
                a.string.z_mask() ^ b.string.z_mask());
  return {a.coeff * b.coeff * kIPow[exp & 3], s};
}

namespace {
struct MaskPairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
    return k.first * 0x9e3779b97f4a7c15ull + k.second;
  }
};
}  // namespace

PauliSum simplify(const PauliSum& p, double drop_tol) {
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::size_t,
                     MaskPairHash>
      index;
  index.reserve(p.terms.size());
  PauliSum out(p.n_qubits);
  for (const auto& t : p.terms) {
    if (t.string.n_qubits() != p.n_qubits)
      throw DimensionError("term length does not match sum qubit count");
    auto [it, inserted] = index.try_emplace(
        std::make_pair(t.string.x_mask(), t.string.z_mask()), out.terms.size());
    if (inserted)
      out.terms.push_back(t);
    else
      out.terms[it->second].coeff += t.coeff;
  }
  std::size_t kept = 0;
  for (const auto& t : out.terms)
    if (std::abs(t.coeff) >= drop_tol) out.terms[kept++] = t;
  out.terms.resize(kept);
  return out;
}

PauliSum add(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits != b.n_qubits)
    throw DimensionError("cannot add Pauli sums on different registers");
  PauliSum out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return simplify(out);
}

PauliSum scale(const PauliSum& a, Complex c) {
  PauliSum out = a;
  for (auto& t : out.terms) t.coeff *= c;
  return out;
}

PauliSum multiply(const PauliSum& a, const PauliSum& b, double drop_tol) {
  if (a.n_qubits != b.n_qubits)
    throw DimensionError("cannot multiply Pauli sums on different registers");
  PauliSum out(a.n_qubits);
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) out.terms.push_back(multiply_terms(ta, tb));
  return simplify(out, drop_tol);
}

bool is_hermitian(const PauliSum& p, double tol) {
  for (const auto& t : simplify(p).terms)
    if (std::abs(t.coeff.imag()) >= tol) return false;
  return true;
}

namespace {

// sigma |m> = phase(m) |m ^ x_mask>; returns i^k phase for basis state m.
Complex basis_phase(const PauliString& s, std::uint64_t m) {
  int exp = 0;
  const std::uint64_t y = s.x_mask() & s.z_mask();
  const std::uint64_t z_only = s.z_mask() & ~s.x_mask();
  // Y: |0> -> i|1>, |1> -> -i|0>;  Z: (-1)^bit.
  exp += static_cast<int>(std::popcount(y & ~m));       // +i per Y on 0
  exp += 3 * static_cast<int>(std::popcount(y & m));    // -i per Y on 1
  exp += 2 * static_cast<int>(std::popcount(z_only & m));
  return kIPow[exp & 3];
}

}  // namespace

Eigen::MatrixXcd dense_from_pauli(const PauliSum& p) {
  if (p.n_qubits > kDenseCap)
    throw CapacityError("dense conversion capped at " + std::to_string(kDenseCap) +
                        " qubits");
  const std::int64_t dim = 1ll << p.n_qubits;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : p.terms) {
    if (t.string.n_qubits() != p.n_qubits)
      throw DimensionError("term length does not match sum qubit count");
    const std::uint64_t flip = t.string.x_mask();
    for (std::int64_t col = 0; col < dim; ++col) {
      const auto m = static_cast<std::uint64_t>(col);
      h(static_cast<std::int64_t>(m ^ flip), col) += t.coeff * basis_phase(t.string, m);
    }
  }
  return h;
}

PauliSum pauli_from_dense(const Eigen::MatrixXcd& h, double drop_tol) {
  const std::int64_t dim = h.rows();
  if (dim < 2 || h.cols() != dim || (dim & (dim - 1)) != 0)
    throw DimensionError("matrix dimension must be a power of two >= 2");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidityError("matrix is not Hermitian within 1e-10");
  int n = 0;
  while ((1ll << n) < dim) ++n;

  PauliSum out(n);
  const std::uint64_t nmasks = 1ull << n;
  for (std::uint64_t x = 0; x < nmasks; ++x) {
    for (std::uint64_t z = 0; z < nmasks; ++z) {
      const PauliString s(n, x, z);
      // trace(sigma H) = sum_m phase(m) H(m, m ^ x)
      Complex tr = 0.0;
      for (std::uint64_t m = 0; m < nmasks; ++m)
        tr += basis_phase(s, m) *
              h(static_cast<std::int64_t>(m), static_cast<std::int64_t>(m ^ x));
      const Complex coeff = tr / static_cast<double>(dim);
      if (std::abs(coeff) >= drop_tol) out.terms.push_back({coeff, s});
    }
  }
  return out;
}

bool commutes(const PauliSum& g, const PauliSum& s, double tol) {
  if (g.n_qubits != s.n_qubits)
    throw DimensionError("pencil operators live on different registers");
  const PauliSum comm = add(multiply(g, s, 0.0), scale(multiply(s, g, 0.0), -1.0));
  for (const auto& t : comm.terms)
    if (std::abs(t.coeff) >= tol) return false;
  return true;
}

PauliSum shift_pencil(const PauliSum& g, const PauliSum& s, double tau) {
  return add(g, scale(s, -tau));
}

std::pair<PauliSum, PauliSum> shift_square_pencil(const PauliSum& g,
                                                  const PauliSum& s,
                                                  double tau) {
  const PauliSum shifted = shift_pencil(g, s, tau);
  return {multiply(shifted, shifted), multiply(s, s)};
}

}  // namespace qpencil::pauli
