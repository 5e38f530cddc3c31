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

#include "pulseshape/propagate.hpp"

#include <algorithm>
#include <sstream>

#include "pulseshape/csv.hpp"

namespace pulseshape {

int default_steps(const TimeDependentHamiltonian& model, double duration) {
  const double bound = model.coefficient_bound(duration);
  const double wanted = 64.0 * duration * bound / (2.0 * kPi);
  if (!(wanted < kMaxDefaultSteps)) return kMaxDefaultSteps;
  return std::max(kMinDefaultSteps, static_cast<int>(std::ceil(wanted)));
}

namespace {

// One step of the fourth-order Magnus integrator with two Gauss nodes:
// H_eff = (H1 + H2)/2 - i (sqrt(3)/12) h [H2, H1], step = exp(-i H_eff h).
ComplexMatrix magnus4_step(const TimeDependentHamiltonian& model, double t, double h) {
  constexpr double kOffset = 0.28867513459481288225;  // sqrt(3)/6
  const ComplexMatrix h1 = model.evaluate(t + (0.5 - kOffset) * h);
  const ComplexMatrix h2 = model.evaluate(t + (0.5 + kOffset) * h);
  ComplexMatrix eff = (h1 + h2) * 0.5 + commutator(h2, h1) * (-kI * (0.5 * kOffset * h));
  // Symmetrize away rounding so the generator is exactly Hermitian.
  eff = (eff + eff.adjoint()) * 0.5;
  return expm_hermitian_generator(eff, h);
}

int resolve_steps(const TimeDependentHamiltonian& model, double duration, int steps) {
  if (!(duration > 0.0)) throw ValidationError("propagate: duration must be > 0");
  if (steps == 0) return default_steps(model, duration);
  if (steps < 8) throw ValidationError("propagate: steps must be >= 8, got " + std::to_string(steps));
  return steps;
}

}  // namespace

PropagationResult propagate(const TimeDependentHamiltonian& model, double duration, int steps,
                            std::span<const Complex> initial_state, double t0) {
  const int n = resolve_steps(model, duration, steps);
  const int dim = model.dim();
  if (static_cast<int>(initial_state.size()) != dim) {
    throw ValidationError("propagate: initial state length does not match model dimension");
  }
  double norm = 0.0;
  for (const auto& a : initial_state) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-9) throw ValidationError("propagate: initial state must be normalized");

  PropagationResult res;
  res.populations.assign(static_cast<size_t>(dim), std::vector<double>(static_cast<size_t>(n) + 1));
  res.times.resize(static_cast<size_t>(n) + 1);
  res.coherence01.resize(static_cast<size_t>(n) + 1);
  std::vector<Complex> psi(initial_state.begin(), initial_state.end());
  ComplexMatrix u = ComplexMatrix::identity(dim);
  const double h = duration / n;

  auto record = [&](int k, double t) {
    res.times[static_cast<size_t>(k)] = t;
    for (int s = 0; s < dim; ++s) res.populations[static_cast<size_t>(s)][static_cast<size_t>(k)] = std::norm(psi[static_cast<size_t>(s)]);
    res.coherence01[static_cast<size_t>(k)] = dim >= 2 ? psi[0] * std::conj(psi[1]) : Complex{};
  };
  record(0, t0);
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix step = magnus4_step(model, t0 + k * h, h);
    u = step * u;
    psi = step.apply(psi);
    record(k + 1, t0 + (k + 1) * h);
  }
  res.final_unitary = std::move(u);
  res.final_state = std::move(psi);
  return res;
}

PropagationResult propagate(const TimeDependentHamiltonian& model, double duration, int steps, int initial_index,
                            double t0) {
  if (initial_index < 0 || initial_index >= model.dim()) throw ValidationError("propagate: initial index out of range");
  std::vector<Complex> psi(static_cast<size_t>(model.dim()));
  psi[static_cast<size_t>(initial_index)] = 1.0;
  return propagate(model, duration, steps, psi, t0);
}

ComplexMatrix propagate_unitary(const TimeDependentHamiltonian& model, double duration, int steps, double t0) {
  if (model.is_constant()) {
    if (!(duration >= 0.0)) throw ValidationError("propagate: duration must be >= 0");
    return expm_hermitian_generator(model.evaluate(t0), duration);
  }
  const int n = resolve_steps(model, duration, steps);
  const double h = duration / n;
  ComplexMatrix u = ComplexMatrix::identity(model.dim());
  for (int k = 0; k < n; ++k) u = magnus4_step(model, t0 + k * h, h) * u;
  return u;
}

double transition_probability(const ComplexMatrix& u, int from, int to) {
  if (from < 0 || to < 0 || from >= u.dim() || to >= u.dim()) {
    throw ValidationError("transition_probability: index out of range");
  }
  return std::norm(u(to, from));
}

double leakage(const PropagationResult& result, int comp_dim) {
  const int dim = static_cast<int>(result.populations.size());
  if (comp_dim < 1 || comp_dim > dim) throw ValidationError("leakage: comp_dim out of range");
  double kept = 0.0;
  for (int s = 0; s < comp_dim; ++s) kept += result.populations[static_cast<size_t>(s)].back();
  return std::clamp(1.0 - kept, 0.0, 1.0);
}

double average_gate_fidelity(const ComplexMatrix& u, const ComplexMatrix& target, int comp_dim) {
  if (target.dim() != comp_dim || comp_dim > u.dim()) {
    throw ValidationError("average_gate_fidelity: target must be comp_dim x comp_dim and fit inside U");
  }
  Complex tr{};
  for (int r = 0; r < comp_dim; ++r)
    for (int c = 0; c < comp_dim; ++c) tr += std::conj(target(r, c)) * u(r, c);
  const double d = comp_dim;
  return (std::norm(tr) + d) / (d * (d + 1.0));
}

void write_propagation_csv(const std::string& path, const PropagationResult& result) {
  std::vector<std::string> header{"t"};
  for (size_t s = 0; s < result.populations.size(); ++s) header.push_back("P" + std::to_string(s));
  header.push_back("Re_c01");
  header.push_back("Im_c01");
  std::vector<std::vector<double>> rows;
  rows.reserve(result.times.size());
  for (size_t k = 0; k < result.times.size(); ++k) {
    std::vector<double> row{result.times[k]};
    for (const auto& p : result.populations) row.push_back(p[k]);
    row.push_back(result.coherence01[k].real());
    row.push_back(result.coherence01[k].imag());
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

}  // namespace pulseshape
