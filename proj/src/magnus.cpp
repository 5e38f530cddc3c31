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

#include "pulseshape/magnus.hpp"

namespace pulseshape {

ComplexMatrix exp_antihermitian(const ComplexMatrix& omega) {
  // exp(Omega) = exp(-i K) with K = i Omega Hermitian.
  ComplexMatrix k = kI * omega;
  k = 0.5 * (k + k.adjoint());
  return expm_hermitian_generator(k, 1.0);
}

MagnusTerms magnus_numeric(const TimeDependentHamiltonian& model, double duration, int panels) {
  if (panels < 8) throw ValidationError("magnus_numeric: panels must be >= 8");
  if (!(duration > 0.0)) throw ValidationError("magnus_numeric: duration must be > 0");
  const int dim = model.dim();
  const double width = duration / panels;
  const double half = 0.5 * width;

  ComplexMatrix running(dim);  // int_0^{panel start} H
  ComplexMatrix k2(dim);       // int dt' [H(t'), int_0^t' H]
  for (int p = 0; p < panels; ++p) {
    const double a = p * width;
    const double mid = a + half;
    ComplexMatrix panel_total(dim);
    for (size_t j = 0; j < kGaussNodes.size(); ++j) {
      const double t = mid + half * kGaussNodes[j];
      const ComplexMatrix h = model.evaluate(t);
      panel_total += h * (half * kGaussWeights[j]);
      // Inner integral over [a, t] with its own five-point rule.
      ComplexMatrix inner = running;
      const double sub_half = 0.5 * (t - a);
      for (size_t m = 0; m < kGaussNodes.size(); ++m) {
        const double s = a + sub_half * (1.0 + kGaussNodes[m]);
        inner += model.evaluate(s) * (sub_half * kGaussWeights[m]);
      }
      k2 += commutator(h, inner) * (half * kGaussWeights[j]);
    }
    running += panel_total;
  }
  MagnusTerms out;
  out.omega1 = -kI * running;
  // Omega2 = (1/2) int int [-iH', -iH''] = -(1/2) int int [H', H''].
  out.omega2 = -0.5 * k2;
  out.truncated_unitary = exp_antihermitian(out.omega1 + out.omega2);
  return out;
}

ComplexMatrix omega1_two_level(double delta, const Envelope& env, double duration) {
  if (env.has_quadrature()) throw ValidationError("omega1_two_level: envelope Q must be zero");
  const double a = quad_integrate([&](double t) { return env.in_phase(t); }, 0.0, duration);
  return (-0.5 * kI) * (ops::pauli_z() * (-delta * duration) + ops::pauli_x() * a);
}

double p01_square_closed(double delta, double amplitude, double duration) {
  const double w2 = delta * delta + amplitude * amplitude;
  if (w2 == 0.0) return 0.0;
  const double s = std::sin(0.5 * std::sqrt(w2) * duration);
  return amplitude * amplitude / w2 * s * s;
}

ComplexMatrix omega2_triangular_closed(double delta, double amplitude, double duration) {
  const double c = (delta / 8.0) * (amplitude / 12.0) * (0.5 * duration) * (0.5 * duration);
  return kI * c * ops::pauli_y();
}

double p01_triangular_closed(double delta, double amplitude, double duration) {
  const double x = amplitude * duration / 4.0;
  const double z = delta * duration / 2.0;
  const double c = (delta / 8.0) * (amplitude / 12.0) * (0.5 * duration) * (0.5 * duration);
  const double theta2 = x * x + c * c + z * z;
  if (theta2 == 0.0) return 0.0;
  const double s = std::sin(std::sqrt(theta2));
  return (1.0 - z * z / theta2) * s * s;
}

double p01_triangular_as_printed(double delta, double amplitude, double duration) {
  const double dt = delta * duration;
  const double a = amplitude * duration / 2.0;
  const double c = delta * amplitude * duration * duration / 192.0;
  const double r2 = dt * dt + a * a + c * c;
  if (r2 == 0.0) return 0.0;
  const double s = std::sin(std::sqrt(r2));
  return (1.0 - dt * dt / r2) * s * s;
}

DragCheck drag_first_order_check(double anharm, double lam, const Envelope& env, int panels, QuadratureSign sign) {
  const auto model = three_level_rwa(anharm, lam, env, sign);
  const ComplexMatrix k = quad_integrate([&](double t) { return model.evaluate(t); }, 0.0, env.duration(), panels);
  DragCheck out;
  // The 0-1 block of int H is a X + b Y with K[1][0] = a + i b.
  out.comp_error = std::abs(k(1, 0).imag());
  out.leak_error = std::sqrt(std::norm(k(2, 1)) + std::norm(k(1, 2)));
  return out;
}

ChannelMagnitudes channel_decompose_omega2(double anharm, double lam, const Envelope& env, int panels,
                                           QuadratureSign sign) {
  const auto model = three_level_rwa(anharm, lam, env, sign);
  const MagnusTerms terms = magnus_numeric(model, env.duration(), panels);
  ComplexMatrix k = kI * terms.omega2;  // Hermitian
  k = 0.5 * (k + k.adjoint());
  ChannelMagnitudes out;
  const double root2 = std::sqrt(2.0);
  // Traceless diagonal = a sigma^z_01 + b sigma^z_12 with a = d0, b = -d2.
  const double tr3 = k.trace().real() / 3.0;
  const double d0 = k(0, 0).real() - tr3;
  const double d2 = k(2, 2).real() - tr3;
  out.s01z = std::abs(d0) * root2;
  out.s12z = std::abs(d2) * root2;
  // K[2][0] (sigma^+_02 + h.c.)-part is Re, the i(sigma^+ - h.c.) part is Im.
  out.s02x = std::abs(k(2, 0).real()) * root2;
  out.s02y = std::abs(k(2, 0).imag()) * root2;
  out.s02plus = std::hypot(out.s02x, out.s02y);
  const double off = std::norm(k(0, 1)) + std::norm(k(1, 0)) + std::norm(k(1, 2)) + std::norm(k(2, 1));
  out.residual = std::sqrt(off + 3.0 * tr3 * tr3);
  return out;
}

}  // namespace pulseshape
