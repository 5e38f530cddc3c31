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

#include <random>

#include "pulseshape/calibrate.hpp"
#include "pulseshape/crgate.hpp"

using namespace pulseshape;

namespace {

ComplexMatrix cnot() {
  ComplexMatrix m(4);
  m(0, 0) = m(1, 1) = 1.0;
  m(2, 3) = m(3, 2) = 1.0;
  return m;
}

}  // namespace

TEST(CrTarget, Values) {
  EXPECT_LT(max_abs_diff(cr_target(0.0), ComplexMatrix::identity(4)), 1e-15);
  EXPECT_LT(max_abs_diff(cr_target(kPi), -kI * pauli_product("ZX")), 1e-15);
  EXPECT_LT(max_abs_diff(cr_target(0.83), expm_hermitian_generator(pauli_product("ZX") * 0.5, 0.83)), 1e-12);
}

TEST(Cnot, ProductIsCnotUpToPhase) {
  const CnotReport r = cnot_from_cr();
  EXPECT_LT(r.distance, 1e-12);
  EXPECT_LT(distance_up_to_phase(r.product, cnot()), 1e-12);
  EXPECT_NEAR(std::abs(r.product(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(r.phase, -kPi / 4, 1e-12);
}

TEST(Echo, ExactZxRotation) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    CrCoefficients c;
    c.w_ix = 0.2 * u(rng);
    c.w_zi = 0.5 * u(rng);
    c.w_zx = 0.1 * u(rng);
    const double tau = 1 + 30 * u(rng);
    const ComplexMatrix total = echo_sequence(c, tau).total_unitary();
    EXPECT_LT(max_abs_diff(total, expm_hermitian_generator(pauli_product("ZX") * c.w_zx, tau)), 1e-10);
  }
}

TEST(Echo, IndependentOfZi) {
  CrCoefficients c;
  c.w_ix = 0.05;
  c.w_zx = 0.02;
  CrCoefficients d = c;
  d.w_zi = 0.3;
  EXPECT_LT(max_abs_diff(echo_sequence(c, 20.0).total_unitary(), echo_sequence(d, 20.0).total_unitary()), 1e-12);
}

TEST(Echo, SmallStaticTermsLeaveBoundedResiduals) {
  CrCoefficients c;
  c.w_ix = 0.05;
  c.w_zx = 0.02;
  c.w_zi = 0.3;
  c.w_iz = 0.002;
  c.w_zz = 0.001;
  const double tau = 20.0;
  const PauliCoefficients g = schedule_generator(echo_sequence(c, tau));
  const double bound = 10 * std::pow(std::max(c.w_zz, c.w_iz) * tau, 2) + 1e-12;
  for (int k = 0; k < 16; ++k) {
    const std::string label = PauliCoefficients::label(k);
    if (label == "II" || label == "IY" || label == "IZ" || label == "ZX") continue;
    EXPECT_LT(std::abs(g.coeffs[static_cast<size_t>(k)]), bound) << label;
  }
}

TEST(Echo, ShapedPiPulseApproachesIdeal) {
  CrCoefficients c;
  c.w_zx = 0.02;
  const Envelope g = make_gaussian(1.0, 2.0, 8.0);
  const PiPulse shaped{g.scaled(kPi / area(g))};
  const ComplexMatrix ideal = echo_sequence(c, 20.0).total_unitary();
  const ComplexMatrix real = echo_sequence(c, 20.0, shaped).total_unitary();
  EXPECT_LT(distance_up_to_phase(real, ideal), 1e-6);
  EXPECT_DOUBLE_EQ(echo_sequence(c, 20.0, shaped).total_duration(), 56.0);
}

TEST(ActiveCancellation, ZeroAmplitudeIsEcho) {
  const CrCoefficients c{.w_ix = 0.03, .w_iy = 0.01, .w_zi = 0.2, .w_zx = 0.02};
  EXPECT_LT(max_abs_diff(active_cancellation_schedule(c, 0.0, 1.3, 15.0).total_unitary(),
                         echo_sequence(c, 15.0).total_unitary()),
            1e-15);
}

TEST(ActiveCancellation, OppositePhaseCancelsIx) {
  const CrCoefficients c{.w_ix = 0.03, .w_zx = 0.02};
  const GateSchedule s = active_cancellation_schedule(c, c.w_ix, kPi, 15.0);
  const ScheduleSegment& first = s.segments().front();
  ASSERT_TRUE(first.model.has_value());
  const PauliCoefficients p = pauli_decompose(first.model->evaluate(0.0));
  EXPECT_NEAR(p["IX"], 0.0, 1e-15);
  EXPECT_NEAR(p["ZX"], 0.01, 1e-15);
}

TEST(ActiveCancellation, CalibratedReducesResiduals) {
  const CrCoefficients c{.w_ix = 0.02, .w_iy = 0.01, .w_zi = 0.2, .w_zx = 0.03};
  const CancellationResult r = cancellation_search(c, default_amp_grid(c), default_phase_grid());
  EXPECT_LT(r.residual, 1e-3 * r.uncalibrated);
}

TEST(Multiderivative, ZeroBaseIsIdentity) {
  MultiDerivativeOptions o;
  o.d10 = -0.6;
  o.d21 = -2.6;
  o.d20 = -3.2;
  o.coefficients.w_zx = 0.01;
  o.coefficients.w_ix = 0.001;
  const Envelope zero = make_flat_top_gaussian(0.0, 5.0, 20.0, 30.0, EdgeLift::kSmooth);
  EXPECT_LT(distance_up_to_phase(multiderivative_cr_schedule(zero, o).total_unitary(), ComplexMatrix::identity(4)),
            1e-12);
}

TEST(Multiderivative, PlateauMatchesPlainFlatTop) {
  MultiDerivativeOptions o;
  o.d10 = -0.6;
  o.d21 = -2.6;
  o.d20 = -3.2;
  o.coefficients = {.w_ix = 0.001, .w_zi = 0.02, .w_zx = 0.01};
  o.reference_amplitude = 0.05;
  const Envelope base = make_flat_top_gaussian(0.05, 5.0, 20.0, 60.0, EdgeLift::kSmooth);
  MultiDerivativeOptions plain = o;
  plain.recursive = false;
  const auto a = multiderivative_cr_model(base, o);
  const auto b = multiderivative_cr_model(base, plain);
  for (double t : {25.0, 50.0, 75.0}) EXPECT_LT(max_abs_diff(a.evaluate(t), b.evaluate(t)), 1e-15);
  EXPECT_GT(max_abs_diff(a.evaluate(10.0), b.evaluate(10.0)), 1e-6);
}

TEST(Multiderivative, ShorterRampsSaveThirtySixNs) {
  MultiDerivativeOptions o;
  o.d10 = -0.6;
  o.d21 = -2.6;
  o.d20 = -3.2;
  o.coefficients.w_zx = 0.01;
  const auto slow = multiderivative_cr_schedule(make_flat_top_gaussian(0.05, 5.0, 28.0, 100.0, EdgeLift::kSmooth), o);
  const auto fast = multiderivative_cr_schedule(make_flat_top_gaussian(0.05, 5.0, 10.0, 100.0, EdgeLift::kSmooth), o);
  EXPECT_DOUBLE_EQ(slow.total_duration() - fast.total_duration(), 36.0);
}

TEST(IdleZz, EchoRefocuses) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix total = idle_zz_echo(0.05 * u(rng), 100 * u(rng) + 1).total_unitary();
    EXPECT_LT(distance_up_to_phase(total, ComplexMatrix::identity(4)), 1e-12);
  }
}

TEST(IdleZz, StateChecksWithoutEcho) {
  const ComplexMatrix zz = pauli_product("ZZ");
  const double r = 1 / std::sqrt(2.0);
  const std::vector<Complex> phi{r, 0, 0, r}, sup{r, r, 0, 0};
  const auto a = zz.apply(phi);
  const auto b = zz.apply(sup);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(a[static_cast<size_t>(k)], phi[static_cast<size_t>(k)]);
  EXPECT_EQ(b[0], Complex(r));
  EXPECT_EQ(b[1], Complex(-r));
}

TEST(Schedule, OrderingAndValidation) {
  GateSchedule s(2);
  s.add_instant("X", ops::pauli_x());
  s.add_instant("Z", ops::pauli_z());
  // First segment acts first: total = Z X.
  EXPECT_LT(max_abs_diff(s.total_unitary(), ops::pauli_z() * ops::pauli_x()), 1e-15);
  ComplexMatrix bad(2);
  bad(0, 0) = 2.0;
  EXPECT_THROW(s.add_instant("bad", bad), ValidationError);
  EXPECT_THROW(s.add_instant("dim", ComplexMatrix::identity(3)), ValidationError);
}
