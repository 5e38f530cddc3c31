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

#include <gtest/gtest.h>

#include "pulseshape/propagate.hpp"

using namespace pulseshape;

namespace {

Envelope pi_gaussian(double sigma) {
  const Envelope g = make_gaussian(1.0, sigma, 4 * sigma);
  return g.scaled(kPi / area(g));
}

}  // namespace

TEST(Propagate, ResonantPiPulse) {
  const auto r = propagate(two_level_rwa(0.0, make_square(kPi, 1.0)), 1.0, 0, 0);
  EXPECT_NEAR(r.populations[1].back(), 1.0, 1e-8);
  EXPECT_NEAR(transition_probability(r.final_unitary, 0, 1), 1.0, 1e-8);
}

TEST(Propagate, DetunedSquarePeak) {
  const double delta = 0.5, amp = kPi;
  const double w = std::hypot(delta, amp);
  const double p = transition_probability(propagate_unitary(two_level_rwa(delta, make_square(amp, kPi / w)), kPi / w), 0, 1);
  EXPECT_NEAR(p, amp * amp / (w * w), 1e-9);
  EXPECT_NEAR(p, 0.9753, 1e-4);
}

TEST(Propagate, StepDoublingConverges) {
  const auto model = three_level_rwa(-2.827, std::sqrt(2.0), drag_quadrature(make_gaussian(1.2566, 6.5, 26.0), -2.827));
  EXPECT_GE(default_steps(model, 26.0), kMinDefaultSteps);
  const ComplexMatrix a = propagate_unitary(model, 26.0, 4096);
  const ComplexMatrix b = propagate_unitary(model, 26.0, 8192);
  EXPECT_LT(max_abs_diff(a, b), 1e-8);
}

TEST(Propagate, UnitaryAndNormPreserved) {
  const auto model = three_level_rwa(-2.0, 1.4, make_gaussian(1.0, 3.0, 12.0));
  const auto r = propagate(model, 12.0, 512, 1);
  EXPECT_LT(unitarity_error(r.final_unitary), 1e-12);
  for (size_t k = 0; k < r.times.size(); k += 37) {
    EXPECT_NEAR(r.populations[0][k] + r.populations[1][k] + r.populations[2][k], 1.0, 1e-12);
  }
  EXPECT_EQ(r.times.size(), 513u);
}

TEST(Propagate, InvalidInputs) {
  const auto model = two_level_rwa(0.0, make_square(1.0, 1.0));
  EXPECT_THROW(propagate(model, 1.0, 4, 0), ValidationError);
  EXPECT_THROW(propagate(model, 1.0, 0, 2), ValidationError);
  EXPECT_THROW(propagate(model, -1.0, 0, 0), ValidationError);
}

TEST(TransitionProbability, Basics) {
  EXPECT_EQ(transition_probability(ComplexMatrix::identity(2), 0, 1), 0.0);
  EXPECT_DOUBLE_EQ(transition_probability(ops::pauli_x(), 0, 1), 1.0);
  const ComplexMatrix u = propagate_unitary(three_level_rwa(-1.0, 1.4, make_gaussian(1.0, 2.0, 8.0)), 8.0);
  for (int from = 0; from < 3; ++from) {
    double s = 0.0;
    for (int to = 0; to < 3; ++to) s += transition_probability(u, from, to);
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Leakage, TwoLevelIsZero) {
  const auto r = propagate(two_level_rwa(0.3, make_square(1.0, 2.0)), 2.0, 64, 0);
  EXPECT_EQ(leakage(r, 2), 0.0);
}

TEST(Leakage, StartingInSecondExcitedState) {
  const auto r = propagate(three_level_rwa(-2.0, 1.4, make_square(0.0, 1.0)), 1.0, 16, 2);
  EXPECT_DOUBLE_EQ(leakage(r, 2), 1.0);
}

TEST(Leakage, DragBeatsPlainAtFigureParameters) {
  const double anharm = -2.0 * kPi * 0.45, amp = 2.0 * kPi * 0.2;
  const Envelope g = make_gaussian(amp, 6.5, 26.0);
  const double plain = leakage(propagate(three_level_rwa(anharm, std::sqrt(2.0), g), 26.0, 0, 0), 2);
  const double drag = leakage(propagate(three_level_rwa(anharm, std::sqrt(2.0), drag_quadrature(g, anharm)), 26.0, 0, 0), 2);
  EXPECT_GT(plain, drag);
  EXPECT_GT(plain, 0.0);
}

TEST(Fidelity, IdentityAndOrthogonal) {
  EXPECT_DOUBLE_EQ(average_gate_fidelity(ops::pauli_x(), ops::pauli_x(), 2), 1.0);
  EXPECT_DOUBLE_EQ(average_gate_fidelity(ops::pauli_x(), ComplexMatrix::identity(2), 2), 1.0 / 3.0);
  EXPECT_THROW(average_gate_fidelity(ops::pauli_x(), ComplexMatrix::identity(3), 2), ValidationError);
}

TEST(Fidelity, DragPiPulseBeatsPlainWhenLeakageDominates) {
  // Short pulse on a weakly anharmonic level structure: leakage is the
  // dominant error, and removing it outweighs the uncorrected Stark shift.
  const double anharm = -1.0, sigma = 2.0, T = 4 * sigma;
  const Envelope g = pi_gaussian(sigma);
  const double f_plain =
      average_gate_fidelity(propagate_unitary(three_level_rwa(anharm, std::sqrt(2.0), g), T), ops::pauli_x(), 2);
  const double f_drag = average_gate_fidelity(
      propagate_unitary(three_level_rwa(anharm, std::sqrt(2.0), drag_quadrature(g, anharm)), T), ops::pauli_x(), 2);
  EXPECT_GT(f_drag, f_plain);
}

TEST(Propagate, ConstantModelIsExact) {
  CrCoefficients c;
  c.w_zx = 0.3;
  c.w_ix = 0.1;
  const ComplexMatrix u = propagate_unitary(cr_effective(c), 7.0);
  EXPECT_LT(max_abs_diff(u, expm_hermitian_generator(cr_matrix(c), 7.0)), 1e-14);
}
