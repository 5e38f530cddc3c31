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

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace pulseshape {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Raised when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot produce a trustworthy result
/// (branch ambiguity, non-convergence, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Receives non-fatal diagnostics (regime checks, sampling warnings). The
/// default handler prints "warning: <message>" to stderr.
using WarningHandler = std::function<void(const std::string&)>;
/// Installs `handler` (null restores the default) and returns the previous one.
WarningHandler set_warning_handler(WarningHandler handler);
void emit_warning(const std::string& message);

/// Small dense square complex matrix, row-major. Dimensions used in practice
/// are 2, 3, 4 and 9.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim);
  ComplexMatrix(int dim, std::initializer_list<Complex> row_major);

  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
  static ComplexMatrix identity(int dim);
  static ComplexMatrix diagonal(std::span<const Complex> values);

  int dim() const { return dim_; }
  Complex& operator()(int row, int col) { return data_[static_cast<size_t>(row * dim_ + col)]; }
  const Complex& operator()(int row, int col) const {
    return data_[static_cast<size_t>(row * dim_ + col)];
  }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  /// Largest entry magnitude.
  double max_abs() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= Complex(s); }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex(s); }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(ComplexMatrix a) { return a *= Complex(-1.0); }

  std::vector<Complex> apply(std::span<const Complex> vec) const;

 private:
  int dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max |M[i][j] - conj(M[j][i])|
double hermitian_asymmetry(const ComplexMatrix& m);
/// max |M[i][j] + conj(M[j][i])|
double antihermitian_asymmetry(const ComplexMatrix& m);
/// max |U^dagger U - I|
double unitarity_error(const ComplexMatrix& u);
/// Distance between two matrices after removing the best global phase;
/// returns the phase in `phase_out` when non-null (a = e^{i phase} b).
double distance_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b,
                            double* phase_out = nullptr);

void require_hermitian(const ComplexMatrix& m, double tol = 1e-10);

/// Pauli matrices and common qubit/qutrit operators.
namespace ops {
ComplexMatrix pauli_i();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
/// Pauli by index 0..3 = I, X, Y, Z.
ComplexMatrix pauli(int index);
/// |to><from| in dimension `dim`.
ComplexMatrix transition(int dim, int to, int from);
}  // namespace ops

/// Eigen-decomposition of a Hermitian matrix: H = V diag(values) V^dagger,
/// eigenvalues ascending, eigenvectors in the columns of `vectors`.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Cyclic complex Jacobi rotations.
HermitianEigen eigh(const ComplexMatrix& hermitian);

/// exp(-i H t) for Hermitian H.
ComplexMatrix expm_hermitian_generator(const ComplexMatrix& hermitian, double t);

/// Hermitian H with exp(-i H) = U and spectrum in (-pi, pi). Fails with a
/// NumericalError when an eigenphase lies within `branch_margin` of +-pi.
ComplexMatrix principal_log_unitary(const ComplexMatrix& unitary,
                                    double branch_margin = 1e-6);

/// Real coefficients of a 4x4 operator in the two-qubit Pauli product basis.
/// Index (a, b) with a, b in {0:I, 1:X, 2:Y, 3:Z}; flat index 4a+b.
struct PauliCoefficients {
  std::array<double, 16> coeffs{};
  /// Imaginary parts of Tr(P M)/4, all ~0 for Hermitian input.
  std::array<double, 16> imag{};

  double& at(int a, int b) { return coeffs[static_cast<size_t>(4 * a + b)]; }
  double at(int a, int b) const { return coeffs[static_cast<size_t>(4 * a + b)]; }
  /// Two-letter label lookup, e.g. "ZX".
  double operator[](std::string_view label) const;

  static std::string label(int flat_index);
};

PauliCoefficients pauli_decompose(const ComplexMatrix& m);
ComplexMatrix pauli_reconstruct(const PauliCoefficients& c);
/// P_a (x) P_b from a two-letter label such as "ZX".
ComplexMatrix pauli_product(std::string_view label);

/// Five-point Gauss-Legendre nodes and weights on [-1, 1].
inline constexpr std::array<double, 5> kGaussNodes = {
    -0.906179845938663992797626878299, -0.538469310105683091036314420700, 0.0,
    0.538469310105683091036314420700, 0.906179845938663992797626878299};
inline constexpr std::array<double, 5> kGaussWeights = {
    0.236926885056189087514264040720, 0.478628670499366468041291514836,
    0.568888888888888888888888888889, 0.478628670499366468041291514836,
    0.236926885056189087514264040720};

inline constexpr int kDefaultPanels = 64;

/// Quadrature nodes for a composite 5-point rule over `panels` equal panels.
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureGrid gauss_legendre_grid(double a, double b, int panels);

/// Composite Gauss-Legendre integral of `f` over [a, b]. Works for any value
/// type closed under addition and scaling by double (double, Complex,
/// ComplexMatrix).
template <class F>
auto quad_integrate(F&& f, double a, double b, int panels = kDefaultPanels) {
  if (!(b >= a)) throw ValidationError("quad_integrate: requires b >= a");
  if (panels < 1) throw ValidationError("quad_integrate: panel count must be >= 1");
  const double width = (b - a) / panels;
  const double half = 0.5 * width;
  using Value = std::decay_t<decltype(f(a))>;
  Value total{};
  bool first = true;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (size_t k = 0; k < kGaussNodes.size(); ++k) {
      Value term = f(mid + half * kGaussNodes[k]) * (half * kGaussWeights[k]);
      if (first) {
        total = std::move(term);
        first = false;
      } else {
        total += term;
      }
    }
  }
  return total;
}

}  // namespace pulseshape
