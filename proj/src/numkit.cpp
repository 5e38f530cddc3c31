// Copyright 2026 The pulseshape Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pulseshape/numkit.hpp"

#include <algorithm>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string_view>

namespace pulseshape {

namespace {
std::mutex g_warning_mutex;
WarningHandler g_warning_handler;
}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard<std::mutex> lock(g_warning_mutex);
  WarningHandler previous = std::move(g_warning_handler);
  g_warning_handler = std::move(handler);
  return previous;
}

void emit_warning(const std::string& message) {
  std::lock_guard<std::mutex> lock(g_warning_mutex);
  if (g_warning_handler) {
    g_warning_handler(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw ValidationError("ComplexMatrix: dim must be >= 1");
  data_.assign(static_cast<size_t>(dim * dim), Complex{});
}

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<Complex> row_major) : ComplexMatrix(dim) {
  if (row_major.size() != data_.size()) {
    throw ValidationError("ComplexMatrix: expected " + std::to_string(data_.size()) + " entries");
  }
  std::copy(row_major.begin(), row_major.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(static_cast<int>(values.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = values[static_cast<size_t>(i)];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t{};
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

static void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                          " vs " + std::to_string(b.dim()) + ")");
  }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator*");
  const int n = a.dim();
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (int c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> vec) const {
  if (static_cast<int>(vec.size()) != dim_) throw ValidationError("apply: vector length mismatch");
  std::vector<Complex> out(vec.size());
  for (int r = 0; r < dim_; ++r) {
    Complex s{};
    for (int c = 0; c < dim_; ++c) s += (*this)(r, c) * vec[static_cast<size_t>(c)];
    out[static_cast<size_t>(r)] = s;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

double hermitian_asymmetry(const ComplexMatrix& m) {
  double worst = 0.0;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = r; c < m.dim(); ++c) worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

double antihermitian_asymmetry(const ComplexMatrix& m) {
  double worst = 0.0;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = r; c < m.dim(); ++c) worst = std::max(worst, std::abs(m(r, c) + std::conj(m(c, r))));
  return worst;
}

double unitarity_error(const ComplexMatrix& u) {
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.dim()));
}

double distance_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b, double* phase_out) {
  require_same_dim(a, b, "distance_up_to_phase");
  // The phase maximizing Re(e^{-i phi} <b, a>) aligns a with b.
  const Complex overlap = (b.adjoint() * a).trace();
  const double phase = std::abs(overlap) > 0.0 ? std::arg(overlap) : 0.0;
  if (phase_out != nullptr) *phase_out = phase;
  return max_abs_diff(a, b * std::polar(1.0, phase));
}

void require_hermitian(const ComplexMatrix& m, double tol) {
  const double asym = hermitian_asymmetry(m);
  if (!(asym <= tol)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |M[i][j] - conj(M[j][i])| = " << asym << " exceeds "
        << tol;
    throw ValidationError(msg.str());
  }
}

namespace ops {
ComplexMatrix pauli_i() { return ComplexMatrix::identity(2); }
ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, -kI, kI, 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix pauli(int index) {
  switch (index) {
    case 0: return pauli_i();
    case 1: return pauli_x();
    case 2: return pauli_y();
    case 3: return pauli_z();
    default: throw ValidationError("pauli: index must be in 0..3");
  }
}

ComplexMatrix transition(int dim, int to, int from) {
  if (to < 0 || from < 0 || to >= dim || from >= dim) throw ValidationError("transition: index out of range");
  ComplexMatrix m(dim);
  m(to, from) = 1.0;
  return m;
}
}  // namespace ops

HermitianEigen eigh(const ComplexMatrix& hermitian) {
  require_hermitian(hermitian);
  const int n = hermitian.dim();
  ComplexMatrix a = hermitian;
  ComplexMatrix v = ComplexMatrix::identity(n);
  // Symmetrize exactly so rounding in the input does not leak into the rotations.
  for (int r = 0; r < n; ++r) {
    a(r, r) = a(r, r).real();
    for (int c = r + 1; c < n; ++c) {
      const Complex avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  const double scale = std::max(a.frobenius_norm(), 1e-300);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-17 * scale) break;
    if (sweep == kMaxSweeps - 1) throw NumericalError("eigh: Jacobi iteration did not converge");

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= 1e-300) continue;
        const Complex phase = a(p, q) / mag;  // e^{i alpha}
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = [[c, s e^{i alpha}], [-s e^{-i alpha}, c]] on (p, q); A <- G^dag A G.
        const Complex g_pq = s * phase;
        const Complex g_qp = -s * std::conj(phase);
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + g_qp * akq;
          a(k, q) = g_pq * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (int k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + g_qp * vkq;
          v(k, q) = g_pq * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out{std::vector<double>(static_cast<size_t>(n)), ComplexMatrix(n)};
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<size_t>(j)];
    out.values[static_cast<size_t>(j)] = a(src, src).real();
    for (int k = 0; k < n; ++k) out.vectors(k, j) = v(k, src);
  }
  // Re-orthonormalize the columns (modified Gram-Schmidt) so that products of
  // many exponentials built from them do not drift away from unitarity.
  ComplexMatrix& w = out.vectors;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      Complex dot{};
      for (int k = 0; k < n; ++k) dot += std::conj(w(k, i)) * w(k, j);
      for (int k = 0; k < n; ++k) w(k, j) -= dot * w(k, i);
    }
    double norm = 0.0;
    for (int k = 0; k < n; ++k) norm += std::norm(w(k, j));
    norm = std::sqrt(norm);
    for (int k = 0; k < n; ++k) w(k, j) /= norm;
  }
  return out;
}

namespace {

ComplexMatrix expm_two_level(const ComplexMatrix& h, double t) {
  // H = a I + bx X + by Y + bz Z
  const double a = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double bz = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const Complex off = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
  const double bx = off.real(), by = -off.imag();
  const double norm = std::sqrt(bx * bx + by * by + bz * bz);
  const double theta = norm * t;
  const double c = std::cos(theta);
  // sin(theta)/norm, stable as norm -> 0
  const double sinc_term = norm > 1e-300 ? std::sin(theta) / norm : t;
  const Complex global = std::polar(1.0, -a * t);
  // exp(-i t b.sigma) = cos I - i sin b^.sigma
  ComplexMatrix u(2);
  u(0, 0) = global * Complex(c, -sinc_term * bz);
  u(1, 1) = global * Complex(c, sinc_term * bz);
  u(0, 1) = global * (-kI * sinc_term * Complex(bx, -by));
  u(1, 0) = global * (-kI * sinc_term * Complex(bx, by));
  return u;
}

}  // namespace

ComplexMatrix expm_hermitian_generator(const ComplexMatrix& hermitian, double t) {
  require_hermitian(hermitian);
  if (hermitian.dim() == 2) return expm_two_level(hermitian, t);
  const HermitianEigen eig = eigh(hermitian);
  const int n = hermitian.dim();
  ComplexMatrix out(n);
  std::vector<Complex> phases(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) phases[static_cast<size_t>(k)] = std::polar(1.0, -eig.values[static_cast<size_t>(k)] * t);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex s{};
      for (int k = 0; k < n; ++k)
        s += eig.vectors(r, k) * phases[static_cast<size_t>(k)] * std::conj(eig.vectors(c, k));
      out(r, c) = s;
    }
  return out;
}

namespace {

// Solves X (I + U) = (I - U) style systems via Gaussian elimination with
// partial pivoting; returns the inverse of `m`, or throws on near-singularity.
ComplexMatrix inverse(const ComplexMatrix& m, double pivot_floor) {
  const int n = m.dim();
  ComplexMatrix a = m;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) < pivot_floor) {
      throw NumericalError("singular");
    }
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a(col, c), a(pivot, c));
        std::swap(inv(col, c), inv(pivot, c));
      }
    }
    const Complex d = a(col, col);
    for (int c = 0; c < n; ++c) {
      a(col, c) /= d;
      inv(col, c) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      if (f == Complex{}) continue;
      for (int c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

[[noreturn]] void throw_branch_error(double phase) {
  std::ostringstream msg;
  msg << "principal_log_unitary: eigenphase " << phase
      << " is within the branch margin of +-pi; the generator is ambiguous. "
         "Shorten the evolution time so that |H| t < pi.";
  throw NumericalError(msg.str());
}

}  // namespace

ComplexMatrix principal_log_unitary(const ComplexMatrix& unitary, double branch_margin) {
  const double uerr = unitarity_error(unitary);
  if (!(uerr <= 1e-10)) {
    std::ostringstream msg;
    msg << "principal_log_unitary: input is not unitary (max |U^dag U - I| = " << uerr << ")";
    throw ValidationError(msg.str());
  }
  const int n = unitary.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  // Cayley transform C = i (I - U)(I + U)^{-1} is Hermitian, shares U's
  // eigenvectors and maps eigenphase phi to tan(phi / 2) monotonically.
  ComplexMatrix inv_plus;
  try {
    inv_plus = inverse(id + unitary, 1e-14);
  } catch (const NumericalError&) {
    throw_branch_error(kPi);
  }
  ComplexMatrix cayley = kI * (id - unitary) * inv_plus;
  // Remove rounding asymmetry before the Hermitian solver.
  cayley = 0.5 * (cayley + cayley.adjoint());
  const HermitianEigen eig = eigh(cayley);
  const ComplexMatrix& v = eig.vectors;
  const ComplexMatrix diag = v.adjoint() * unitary * v;

  std::vector<Complex> generator_eigs(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double phase = std::arg(diag(k, k));
    if (std::abs(phase) > kPi - branch_margin) throw_branch_error(phase);
    generator_eigs[static_cast<size_t>(k)] = -phase;  // U = exp(-i H)
  }
  ComplexMatrix h = v * ComplexMatrix::diagonal(generator_eigs) * v.adjoint();
  return 0.5 * (h + h.adjoint());
}

double PauliCoefficients::operator[](std::string_view label) const {
  if (label.size() != 2) throw ValidationError("PauliCoefficients: label must have two letters");
  auto index = [](char ch) {
    switch (ch) {
      case 'I': return 0;
      case 'X': return 1;
      case 'Y': return 2;
      case 'Z': return 3;
      default: throw ValidationError("PauliCoefficients: bad Pauli letter");
    }
  };
  return at(index(label[0]), index(label[1]));
}

std::string PauliCoefficients::label(int flat_index) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  return {kLetters[flat_index / 4], kLetters[flat_index % 4]};
}

ComplexMatrix pauli_product(std::string_view label) {
  if (label.size() != 2) throw ValidationError("pauli_product: label must have two letters");
  auto single = [](char ch) {
    switch (ch) {
      case 'I': return ops::pauli_i();
      case 'X': return ops::pauli_x();
      case 'Y': return ops::pauli_y();
      case 'Z': return ops::pauli_z();
      default: throw ValidationError("pauli_product: bad Pauli letter");
    }
  };
  return kron(single(label[0]), single(label[1]));
}

PauliCoefficients pauli_decompose(const ComplexMatrix& m) {
  if (m.dim() != 4) throw ValidationError("pauli_decompose: requires a 4x4 matrix, got dim " + std::to_string(m.dim()));
  PauliCoefficients out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Complex c = (kron(ops::pauli(a), ops::pauli(b)) * m).trace() / 4.0;
      out.coeffs[static_cast<size_t>(4 * a + b)] = c.real();
      out.imag[static_cast<size_t>(4 * a + b)] = c.imag();
    }
  return out;
}

ComplexMatrix pauli_reconstruct(const PauliCoefficients& c) {
  ComplexMatrix out(4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double w = c.at(a, b);
      if (w != 0.0) out += kron(ops::pauli(a), ops::pauli(b)) * w;
    }
  return out;
}

QuadratureGrid gauss_legendre_grid(double a, double b, int panels) {
  if (!(b >= a)) throw ValidationError("gauss_legendre_grid: requires b >= a");
  if (panels < 1) throw ValidationError("gauss_legendre_grid: panel count must be >= 1");
  QuadratureGrid grid;
  grid.nodes.reserve(static_cast<size_t>(panels) * kGaussNodes.size());
  grid.weights.reserve(grid.nodes.capacity());
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (size_t k = 0; k < kGaussNodes.size(); ++k) {
      grid.nodes.push_back(mid + 0.5 * width * kGaussNodes[k]);
      grid.weights.push_back(0.5 * width * kGaussWeights[k]);
    }
  }
  return grid;
}

}  // namespace pulseshape
