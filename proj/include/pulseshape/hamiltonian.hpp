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
#include <functional>
#include <string>
#include <vector>

#include "pulseshape/envelope.hpp"

namespace pulseshape {

/// One additive piece of a model Hamiltonian.
struct HamiltonianTerm {
  enum class Kind {
    /// coefficient(t).real() * op, op Hermitian.
    kReal,
    /// c op + conj(c) op^dagger with c = coefficient(t); op arbitrary.
    kPaired,
  };
  Kind kind = Kind::kReal;
  ComplexMatrix op;
  std::function<Complex(double)> coefficient;
  /// True when the coefficient does not depend on time.
  bool constant = false;
  std::string label;
};

/// H(t) = sum of operator terms weighted by scalar functions of time, in
/// rad per time unit. Hermitian by construction.
class TimeDependentHamiltonian {
 public:
  explicit TimeDependentHamiltonian(int dim);

  int dim() const { return dim_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }
  bool is_constant() const;

  TimeDependentHamiltonian& add_constant(const ComplexMatrix& hermitian, std::string label = {});
  TimeDependentHamiltonian& add_real(const ComplexMatrix& hermitian, std::function<double(double)> coefficient,
                                     std::string label = {});
  TimeDependentHamiltonian& add_paired(const ComplexMatrix& op, std::function<Complex(double)> coefficient,
                                       std::string label = {});
  /// Appends every term of `other` (same dimension).
  TimeDependentHamiltonian& append(const TimeDependentHamiltonian& other);

  ComplexMatrix evaluate(double t) const;

  /// Largest sum of |coefficient| * max|op| over `samples` points of [0, T];
  /// a cheap bound on the instantaneous generator strength.
  double coefficient_bound(double duration, int samples = 257) const;

 private:
  void check_dim(const ComplexMatrix& op) const;

  int dim_;
  std::vector<HamiltonianTerm> terms_;
};

/// Sign of the quadrature term on the 0-1 transition of the three-level model.
enum class QuadratureSign {
  /// H[1][0] = (I + iQ)/2, sharing the drive phase of the 1-2 coupling.
  kDerived,
  /// H[1][0] = (I - iQ)/2.
  kAsPrinted,
};

/// Effective cross-resonance coefficients, angular frequency units. The
/// generator is sum w_ab (P_a (x) P_b) / 2. w_iy and w_zy are zero in the
/// ideal model; they carry phase misalignment for the cancellation search.
struct CrCoefficients {
  double w_ix = 0.0;
  double w_iy = 0.0;
  double w_iz = 0.0;
  double w_zi = 0.0;
  double w_zx = 0.0;
  double w_zy = 0.0;
  double w_zz = 0.0;
};

/// -(wq/2) Z + A(t) sin(wd t + alpha) Y, lab frame.
TimeDependentHamiltonian two_level_lab(double wq, double wd, double alpha, const Envelope& env);
/// -(delta/2) Z + (A(t)/2) X, rotating frame.
TimeDependentHamiltonian two_level_rwa(double delta, const Envelope& env);
/// -(delta/2) Z + (Re W X + Im W Y)/2 for a complex drive W(t) = I + iQ.
TimeDependentHamiltonian two_level_iq(double delta, const ComplexEnvelope& env);
/// Three-level transmon in the frame rotating with the resonant 0-1 drive.
TimeDependentHamiltonian three_level_rwa(double anharm, double lam, const Envelope& env,
                                         QuadratureSign sign = QuadratureSign::kDerived);
/// Doubly rotated frame with LO phase noise:
/// (dw0 + phi_n')/2 Z + (A/2)(cos phi_c X + sin phi_c Y).
TimeDependentHamiltonian lo_noise_qubit(const Envelope& env, std::function<double(double)> phi_c,
                                        std::function<double(double)> phi_n_dot,
                                        std::function<double(double)> delta_w0);
/// Constant effective CR Hamiltonian; sign = -1 models the negated drive
/// amplitude, flipping the terms linear in the drive (IX, IY, ZX, ZY).
TimeDependentHamiltonian cr_effective(const CrCoefficients& c, int sign = +1);
/// Operator form of cr_effective.
ComplexMatrix cr_matrix(const CrCoefficients& c, int sign = +1);

/// w_ix = k1 J W, w_zx = k2 J W, w_zz = k3 J^2, w_zi = k4 W^2, w_iz = k5 J^2.
CrCoefficients scaling_model(double coupling, double drive, const std::array<double, 5>& k = {1, 1, 1, 1, 1});

}  // namespace pulseshape
