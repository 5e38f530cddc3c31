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

#include <functional>
#include <string>
#include <vector>

#include "pulseshape/numkit.hpp"

namespace pulseshape {

/// Highest derivative order an analytic profile must provide.
inline constexpr int kMaxDerivativeOrder = 4;

/// How Gaussian edges are brought to zero.
enum class EdgeLift {
  /// Subtract the edge value and rescale: I(0) = I(T) = 0 with a kink in
  /// the first derivative at the ends.
  kConstant,
  /// Subtract a quartic that also zeroes the first and second derivatives at
  /// the ends and keeps the third derivative zero at the peak. Required when
  /// the envelope feeds the recursive DRAG construction.
  kSmooth,
};

/// Real baseband pulse with in-phase I(t) and quadrature Q(t) parts on
/// [0, T]. Outside the support every component evaluates to zero.
class Envelope {
 public:
  /// f(order, t) returns the order-th time derivative at t in [0, T].
  using Profile = std::function<double(int, double)>;

  Envelope() = default;
  /// Analytic backing. A null quadrature profile means Q is identically 0.
  static Envelope analytic(double duration, Profile in_phase, Profile quadrature = nullptr);
  /// Uniform samples at t_n = n * dt, n = 0..N-1, so T = (N - 1) dt.
  /// Between samples values are linearly interpolated; derivatives use
  /// second-order central differences with one-sided ends.
  static Envelope sampled(double dt, std::vector<double> in_phase, std::vector<double> quadrature = {});

  double duration() const { return duration_; }
  bool is_analytic() const { return analytic_; }
  /// True when Q was never set (or is zero by construction).
  bool has_quadrature() const { return has_q_; }

  double in_phase(double t, int order = 0) const;
  double quadrature(double t, int order = 0) const;
  Complex value(double t) const { return {in_phase(t), quadrature(t)}; }

  /// Sample period for sampled backing, 0 otherwise.
  double sample_period() const { return dt_; }

  /// Same shape, every component multiplied by `factor`.
  Envelope scaled(double factor) const;
  /// Same I, new quadrature Q = -beta * dI/dt.
  Envelope with_derivative_quadrature(double beta) const;

 private:
  double eval_sampled(const std::vector<std::vector<double>>& table, double t, int order) const;

  double duration_ = 0.0;
  bool analytic_ = true;
  bool has_q_ = false;
  Profile i_;
  Profile q_;
  double dt_ = 0.0;
  // table[order][n]
  std::vector<std::vector<double>> i_table_;
  std::vector<std::vector<double>> q_table_;
};

/// Complex baseband value(t) = I(t) + i Q(t), zero outside [0, T].
class ComplexEnvelope {
 public:
  using Function = std::function<Complex(double)>;

  ComplexEnvelope() = default;
  ComplexEnvelope(double duration, Function fn);
  static ComplexEnvelope from(const Envelope& env);

  double duration() const { return duration_; }
  Complex value(double t) const;
  double in_phase(double t) const { return value(t).real(); }
  double quadrature(double t) const { return value(t).imag(); }

 private:
  double duration_ = 0.0;
  Function fn_;
};

Envelope make_square(double amplitude, double duration);
Envelope make_triangular(double amplitude, double duration);
/// Gaussian centred at T/2. `lifted` brings the edges to zero (see EdgeLift)
/// and rescales so the peak is exactly `amplitude`.
Envelope make_gaussian(double amplitude, double sigma, double duration, bool lifted = true,
                       EdgeLift lift = EdgeLift::kConstant);
/// Default Gaussian duration used across the experiments: T = 4 sigma.
inline double default_gaussian_duration(double sigma) { return 4.0 * sigma; }
/// Lifted Gaussian rise over [0, ramp], plateau over the hold, mirrored fall.
Envelope make_flat_top_gaussian(double amplitude, double sigma, double ramp, double hold,
                                EdgeLift lift = EdgeLift::kConstant);

/// DRAG quadrature Q(t) = -I'(t) / delta.
Envelope drag_quadrature(const Envelope& env, double delta);

/// Every level of the recursive DRAG chain at one instant.
struct RecursiveDragLevels {
  Complex omega2, omega2_dot;
  Complex omega1, omega1_dot;
  Complex omega_cr;
};

/// Evaluates the chain Omega2 = sqrt(Omega3^2 - 2i Omega3 Omega3'/d20),
/// Omega1 = Omega2 - i Omega2'/d21, Omega_CR = Omega1 - i Omega1'/d10 from
/// the analytic derivatives of `base` (Omega3). Points where the base
/// vanishes return zero.
RecursiveDragLevels recursive_drag_levels(const Envelope& base, double d10, double d21, double d20,
                                          double t);

/// Recursive multi-derivative DRAG drive for the cross-resonance line.
/// Requires an analytic, non-negative base that vanishes with its first two
/// derivatives at both ends.
ComplexEnvelope recursive_drag_cr(const Envelope& base, double d10, double d21, double d20);

/// Integral of I over the support.
double area(const Envelope& env, int panels = kDefaultPanels);

/// Writes (t, I, Q) at `samples` evenly spaced points including both ends.
void write_envelope_csv(const std::string& path, const Envelope& env, int samples);

}  // namespace pulseshape
