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

#include "pulseshape/crgate.hpp"

namespace pulseshape {

struct TomographyResult {
  CrCoefficients coefficients;
  PauliCoefficients pauli;
  /// Norm of the Pauli components outside II and the seven CR terms.
  double residual = 0.0;
  double tau_probe = 0.0;
};

/// Generator of a constant two-qubit model from a short evolution:
/// H = log(U(tau)) / tau, decomposed on Pauli products. tau_probe = 0 picks
/// 1 / (spectral radius) so every eigenphase stays well inside (-pi, pi).
TomographyResult effective_tomography(const TimeDependentHamiltonian& model, double tau_probe = 0.0);

/// Pauli coefficients of the effective generator of a full schedule,
/// log(U_total) / T.
PauliCoefficients schedule_generator(const GateSchedule& schedule, int steps = 0);

/// sqrt(w_ix^2 + w_iy^2) of the CR model with a target drive
/// amp (cos(phase) IX + sin(phase) IY)/2 added.
double cancellation_objective(const CrCoefficients& model, double amp, double phase);

struct CancellationResult {
  double best_amp = 0.0;
  double best_phase = 0.0;
  double residual = 0.0;
  double uncalibrated = 0.0;
  int evaluations = 0;
};

inline constexpr int kGoldenEvaluations = 40;

/// Default grids: 21 amplitudes over [0, 2 w] with w the uncalibrated IX/IY
/// magnitude, and 24 phases over [0, 2 pi).
std::vector<double> default_amp_grid(const CrCoefficients& model);
std::vector<double> default_phase_grid();

/// Coarse scan of `amp_grid` x `phase_grid`, then `refine_iters` rounds of
/// golden-section refinement (40 evaluations per coordinate) alternating
/// between amplitude and phase.
CancellationResult cancellation_search(const CrCoefficients& model, const std::vector<double>& amp_grid,
                                       const std::vector<double>& phase_grid, int refine_iters = 4);

struct SweepResult {
  std::vector<double> axis;
  std::vector<PauliCoefficients> coefficients;
  std::vector<double> objective;
  /// Empty on success; otherwise the failure message for that point (its
  /// objective is NaN).
  std::vector<std::string> errors;
};

struct SweepMetric {
  enum class Kind { kFidelity, kLeakage, kCoefficient };
  Kind kind = Kind::kFidelity;
  double duration = 1.0;
  int steps = 0;
  /// Fidelity: target on the leading comp_dim block. Leakage: levels kept.
  ComplexMatrix target;
  int comp_dim = 2;
  int initial = 0;
  /// Coefficient metric: two-letter Pauli label; objective is |w|.
  std::string label = "ZX";
};

/// Evaluates `metric` on factory(x) for every axis value, in order.
SweepResult parameter_sweep(const std::function<TimeDependentHamiltonian(double)>& factory,
                            const std::vector<double>& axis, const SweepMetric& metric);

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section minimum of f on [lo, hi] with a fixed evaluation budget.
ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                             int evaluations = kGoldenEvaluations);

/// CR-drive detuning in [lo, hi] minimizing |IZ| of the schedule generator.
ScalarMinimum detuning_search(const std::function<GateSchedule(double)>& factory, double lo, double hi,
                              int evaluations = kGoldenEvaluations);

void write_sweep_csv(const std::string& path, const SweepResult& sweep);

}  // namespace pulseshape
