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

#include "pulseshape/hamiltonian.hpp"

namespace pulseshape {

/// First two Magnus orders of U(T, 0) = exp(Omega), Omega anti-Hermitian.
struct MagnusTerms {
  ComplexMatrix omega1;
  ComplexMatrix omega2;
  /// exp(omega1 + omega2).
  ComplexMatrix truncated_unitary;
};

/// exp(Omega) for anti-Hermitian Omega.
ComplexMatrix exp_antihermitian(const ComplexMatrix& omega);

/// Omega1 = -i int H, Omega2 = -(1/2) int dt' [H(t'), int_0^t' H]. The inner
/// integral at each outer node is the running panel total plus a five-point
/// sub-integral from the panel start, so the cost is linear in `panels`.
MagnusTerms magnus_numeric(const TimeDependentHamiltonian& model, double duration, int panels = kDefaultPanels);

/// -i int_0^T H_RWA dt = -(i/2)(-delta T Z + area X) for the two-level RWA model.
ComplexMatrix omega1_two_level(double delta, const Envelope& env, double duration);

/// A0^2/(A0^2 + delta^2) sin^2(w T / 2), w = sqrt(delta^2 + A0^2).
double p01_square_closed(double delta, double amplitude, double duration);

/// Second-order term of the triangular pulse as printed: (i delta/8)(A0/12)(T/2)^2 Y.
ComplexMatrix omega2_triangular_closed(double delta, double amplitude, double duration);

/// |<1|exp(Omega1 + Omega2)|0>|^2 for the triangular pulse with the closed
/// forms above: (1 - (delta T/2)^2/theta^2) sin^2 theta,
/// theta^2 = (A0 T/4)^2 + c^2 + (delta T/2)^2, c = (delta/8)(A0/12)(T/2)^2.
double p01_triangular_closed(double delta, double amplitude, double duration);

/// The printed triangular expression, kept for comparison.
double p01_triangular_as_printed(double delta, double amplitude, double duration);

struct DragCheck {
  /// |coefficient of sigma^y_01| in int H dt.
  double comp_error = 0.0;
  /// Frobenius magnitude of the sigma^+-_12 part of Omega1.
  double leak_error = 0.0;
};

/// First-order Magnus errors of the three-level model driven by `env`.
DragCheck drag_first_order_check(double anharm, double lam, const Envelope& env, int panels = 256,
                                 QuadratureSign sign = QuadratureSign::kDerived);

/// Omega2 of the three-level model projected on unit-norm channel operators.
struct ChannelMagnitudes {
  /// AC-Stark channels sigma^z_01 = |0><0| - |1><1| and sigma^z_12.
  double s01z = 0.0;
  double s12z = 0.0;
  /// 0-2 leakage channel: sigma^+_02 + h.c. and i(sigma^+_02 - h.c.) parts and
  /// their combined magnitude.
  double s02x = 0.0;
  double s02y = 0.0;
  double s02plus = 0.0;
  /// Frobenius norm of whatever lies outside the four channels.
  double residual = 0.0;
};

ChannelMagnitudes channel_decompose_omega2(double anharm, double lam, const Envelope& env,
                                           int panels = kDefaultPanels,
                                           QuadratureSign sign = QuadratureSign::kDerived);

}  // namespace pulseshape
