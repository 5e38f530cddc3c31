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

#include "pulseshape/calibrate.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "pulseshape/csv.hpp"
#include "pulseshape/propagate.hpp"

namespace pulseshape {

namespace {

constexpr const char* kCrLabels[] = {"IX", "IY", "IZ", "ZI", "ZX", "ZY", "ZZ"};

CrCoefficients from_pauli(const PauliCoefficients& p) {
  // Generator sum w (P)/2, so each coefficient is twice the Pauli weight.
  CrCoefficients c;
  c.w_ix = 2.0 * p["IX"];
  c.w_iy = 2.0 * p["IY"];
  c.w_iz = 2.0 * p["IZ"];
  c.w_zi = 2.0 * p["ZI"];
  c.w_zx = 2.0 * p["ZX"];
  c.w_zy = 2.0 * p["ZY"];
  c.w_zz = 2.0 * p["ZZ"];
  return c;
}

}  // namespace

TomographyResult effective_tomography(const TimeDependentHamiltonian& model, double tau_probe) {
  if (model.dim() != 4) throw ValidationError("effective_tomography: two-qubit (dim 4) model required");
  if (tau_probe < 0.0) throw ValidationError("effective_tomography: tau_probe must be >= 0");
  if (tau_probe == 0.0) {
    const auto eig = eigh(model.evaluate(0.0));
    const double radius = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    tau_probe = radius > 0.0 ? 1.0 / radius : 1.0;
  }
  const ComplexMatrix u = propagate_unitary(model, tau_probe);
  ComplexMatrix h;
  try {
    h = principal_log_unitary(u) * (1.0 / tau_probe);
  } catch (const NumericalError& e) {
    std::ostringstream msg;
    msg << "effective_tomography: " << e.what() << " (tau_probe = " << tau_probe << "; reduce tau_probe)";
    throw NumericalError(msg.str());
  }
  TomographyResult out;
  out.tau_probe = tau_probe;
  out.pauli = pauli_decompose(h);
  out.coefficients = from_pauli(out.pauli);
  double r2 = 0.0;
  for (int k = 1; k < 16; ++k) {
    const std::string label = PauliCoefficients::label(k);
    if (std::find(std::begin(kCrLabels), std::end(kCrLabels), label) != std::end(kCrLabels)) continue;
    r2 += out.pauli.coeffs[static_cast<size_t>(k)] * out.pauli.coeffs[static_cast<size_t>(k)];
  }
  out.residual = std::sqrt(r2);
  return out;
}

PauliCoefficients schedule_generator(const GateSchedule& schedule, int steps) {
  const double duration = schedule.total_duration();
  if (!(duration > 0.0)) throw ValidationError("schedule_generator: schedule has zero duration");
  const ComplexMatrix h = principal_log_unitary(schedule.total_unitary(steps)) * (1.0 / duration);
  return pauli_decompose(h);
}

double cancellation_objective(const CrCoefficients& model, double amp, double phase) {
  TimeDependentHamiltonian h(4);
  h.add_constant(cr_matrix(model) +
                 (pauli_product("IX") * std::cos(phase) + pauli_product("IY") * std::sin(phase)) * (0.5 * amp));
  const TomographyResult t = effective_tomography(h);
  return std::hypot(t.coefficients.w_ix, t.coefficients.w_iy);
}

std::vector<double> default_amp_grid(const CrCoefficients& model) {
  const double w = std::hypot(model.w_ix, model.w_iy);
  std::vector<double> grid(21);
  for (int k = 0; k < 21; ++k) grid[static_cast<size_t>(k)] = 2.0 * w * k / 20.0;
  return grid;
}

std::vector<double> default_phase_grid() {
  std::vector<double> grid(24);
  for (int k = 0; k < 24; ++k) grid[static_cast<size_t>(k)] = 2.0 * kPi * k / 24.0;
  return grid;
}

ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi, int evaluations) {
  if (!(hi >= lo)) throw ValidationError("golden_section: requires hi >= lo");
  if (evaluations < 2) throw ValidationError("golden_section: need at least 2 evaluations");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int k = 2; k < evaluations; ++k) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? ScalarMinimum{x1, f1} : ScalarMinimum{x2, f2};
}

CancellationResult cancellation_search(const CrCoefficients& model, const std::vector<double>& amp_grid,
                                       const std::vector<double>& phase_grid, int refine_iters) {
  if (amp_grid.empty() || phase_grid.empty()) throw ValidationError("cancellation_search: grids must be non-empty");
  if (refine_iters < 0) throw ValidationError("cancellation_search: refine_iters must be >= 0");
  CancellationResult out;
  auto objective = [&](double amp, double phase) {
    ++out.evaluations;
    return cancellation_objective(model, amp, phase);
  };
  out.uncalibrated = objective(0.0, 0.0);
  out.residual = std::numeric_limits<double>::infinity();
  for (double a : amp_grid)
    for (double p : phase_grid) {
      const double v = objective(a, p);
      if (v < out.residual) out = {a, p, v, out.uncalibrated, out.evaluations};
    }

  auto step_of = [](const std::vector<double>& g, double fallback) {
    double step = fallback;
    for (size_t k = 1; k < g.size(); ++k) {
      const double d = std::abs(g[k] - g[k - 1]);
      if (d > 0.0) step = std::min(step, d);
    }
    return step;
  };
  double amp_step = step_of(amp_grid, std::max(std::abs(amp_grid.front()), 1e-3));
  double phase_step = step_of(phase_grid, kPi / 12.0);
  for (int it = 0; it < refine_iters; ++it) {
    const double p0 = out.best_phase;
    const auto a = golden_section([&](double x) { return objective(x, p0); }, std::max(0.0, out.best_amp - amp_step),
                                  out.best_amp + amp_step);
    if (a.value <= out.residual) {
      out.best_amp = a.x;
      out.residual = a.value;
    }
    const double a0 = out.best_amp;
    const auto p = golden_section([&](double x) { return objective(a0, x); }, out.best_phase - phase_step,
                                  out.best_phase + phase_step);
    if (p.value <= out.residual) {
      out.best_phase = p.x;
      out.residual = p.value;
    }
    amp_step *= 0.5;
    phase_step *= 0.5;
  }
  out.best_phase = std::remainder(out.best_phase - kPi, 2.0 * kPi) + kPi;  // [0, 2 pi)
  return out;
}

SweepResult parameter_sweep(const std::function<TimeDependentHamiltonian(double)>& factory,
                            const std::vector<double>& axis, const SweepMetric& metric) {
  if (axis.empty()) throw ValidationError("parameter_sweep: axis must be non-empty");
  SweepResult out;
  out.axis = axis;
  for (double x : axis) {
    PauliCoefficients coeffs;
    double value = std::numeric_limits<double>::quiet_NaN();
    std::string error;
    try {
      const TimeDependentHamiltonian model = factory(x);
      switch (metric.kind) {
        case SweepMetric::Kind::kFidelity: {
          const ComplexMatrix u = propagate_unitary(model, metric.duration, metric.steps);
          value = average_gate_fidelity(u, metric.target, metric.comp_dim);
          break;
        }
        case SweepMetric::Kind::kLeakage: {
          const auto res = propagate(model, metric.duration, metric.steps, metric.initial);
          value = leakage(res, metric.comp_dim);
          break;
        }
        case SweepMetric::Kind::kCoefficient: {
          const TomographyResult t = effective_tomography(model);
          coeffs = t.pauli;
          value = std::abs(2.0 * coeffs[metric.label]);
          break;
        }
      }
    } catch (const std::exception& e) {
      error = e.what();
      value = std::numeric_limits<double>::quiet_NaN();
    }
    out.coefficients.push_back(coeffs);
    out.objective.push_back(value);
    out.errors.push_back(std::move(error));
  }
  return out;
}

ScalarMinimum detuning_search(const std::function<GateSchedule(double)>& factory, double lo, double hi,
                              int evaluations) {
  return golden_section([&](double d) { return std::abs(schedule_generator(factory(d))["IZ"]); }, lo, hi,
                        evaluations);
}

void write_sweep_csv(const std::string& path, const SweepResult& sweep) {
  std::vector<std::string> header{"axis", "objective"};
  for (int k = 0; k < 16; ++k) header.push_back(PauliCoefficients::label(k));
  header.push_back("error");
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 0; i < sweep.axis.size(); ++i) {
    std::vector<std::string> row{format_double(sweep.axis[i]), format_double(sweep.objective[i])};
    for (double c : sweep.coefficients[i].coeffs) row.push_back(format_double(c));
    row.push_back(sweep.errors[i]);
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

}  // namespace pulseshape
