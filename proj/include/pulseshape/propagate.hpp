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

#include <span>
#include <string>
#include <vector>

#include "pulseshape/hamiltonian.hpp"

namespace pulseshape {

/// Final propagator plus state trajectories sampled at every step boundary.
struct PropagationResult {
  ComplexMatrix final_unitary;
  std::vector<double> times;
  /// populations[k][n] = |<k|psi(times[n])>|^2.
  std::vector<std::vector<double>> populations;
  /// rho_01 = psi_0 conj(psi_1) at each sample.
  std::vector<Complex> coherence01;
  std::vector<Complex> final_state;
};

inline constexpr int kMinDefaultSteps = 4096;
inline constexpr int kMaxDefaultSteps = 1 << 20;

/// max(4096, 64 T max|H| / 2 pi), capped at 2^20.
int default_steps(const TimeDependentHamiltonian& model, double duration);

/// Fourth-order Magnus stepping over [t0, t0 + duration] with two Gauss
/// nodes per step (H sampled at t + h (1/2 -+ sqrt(3)/6)); each step is an
/// exact exponential, so the result is unitary at any step count.
/// steps = 0 selects default_steps.
PropagationResult propagate(const TimeDependentHamiltonian& model, double duration, int steps,
                            std::span<const Complex> initial_state, double t0 = 0.0);
PropagationResult propagate(const TimeDependentHamiltonian& model, double duration, int steps,
                            int initial_index, double t0 = 0.0);
/// Propagator only, no trajectories.
ComplexMatrix propagate_unitary(const TimeDependentHamiltonian& model, double duration, int steps = 0,
                                double t0 = 0.0);

/// |U[to][from]|^2.
double transition_probability(const ComplexMatrix& u, int from, int to);
/// 1 - final population of the first comp_dim levels.
double leakage(const PropagationResult& result, int comp_dim);
/// (|Tr(T^dagger U_c)|^2 + d) / (d (d + 1)) on the leading d x d block U_c.
double average_gate_fidelity(const ComplexMatrix& u, const ComplexMatrix& target, int comp_dim);

/// Columns t, P0, P1[, P2 ...], Re c01, Im c01.
void write_propagation_csv(const std::string& path, const PropagationResult& result);

}  // namespace pulseshape
