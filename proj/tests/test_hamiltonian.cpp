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

#include "pulseshape/hamiltonian.hpp"
#include "pulseshape/propagate.hpp"

using namespace pulseshape;

TEST(TwoLevelLab, ZeroDriveIsStatic) {
  const auto h = two_level_lab(5.0, 5.0, 0.3, make_square(0.0, 10.0));
  for (double t : {0.0, 1.3, 7.0}) EXPECT_LT(max_abs_diff(h.evaluate(t), ops::pauli_z() * -2.5), 1e-15);
}

TEST(TwoLevelLab, DriveVanishesAtSineZero) {
  const double wd = 4.0, alpha = 0.5;
  const auto h = two_level_lab(4.0, wd, alpha, make_square(0.3, 10.0));
  const double t = (kPi - alpha) / wd;
  EXPECT_LT(max_abs_diff(h.evaluate(t), ops::pauli_z() * -2.0), 1e-15);
}

TEST(TwoLevelLab, AgreesWithRwaForFastCarrier) {
  const double amp = 0.2, wd = 50 * amp;
  const double T = kPi / amp;
  const Envelope env = make_square(amp, T);
  for (double frac : {0.25, 0.5, 1.0}) {
    const double p_lab = transition_probability(propagate_unitary(two_level_lab(wd, wd, 0.0, env), frac * T), 0, 1);
    const double p_rwa = transition_probability(propagate_unitary(two_level_rwa(0.0, env), frac * T), 0, 1);
    EXPECT_LT(std::abs(p_lab - p_rwa), 3 * amp / wd) << frac;
  }
}

TEST(TwoLevelRwa, ResonantSquareIsConstant) {
  const auto h = two_level_rwa(0.0, make_square(kPi, 1.0));
  EXPECT_LT(max_abs_diff(h.evaluate(0.4), ops::pauli_x() * (kPi / 2)), 1e-15);
}

TEST(TwoLevelRwa, ZeroEnvelopeIsDetuningOnly) {
  const auto h = two_level_rwa(0.5, make_square(0.0, 1.0));
  EXPECT_LT(max_abs_diff(h.evaluate(0.3), ops::pauli_z() * -0.25), 1e-15);
}

TEST(TwoLevelRwa, RejectsQuadrature) {
  EXPECT_THROW(two_level_rwa(0.0, drag_quadrature(make_gaussian(1.0, 2.0, 8.0), 1.0)), ValidationError);
}

TEST(TwoLevelIq, ComplexDriveSplitsOntoXY) {
  const ComplexEnvelope w(1.0, [](double) { return Complex(0.3, -0.4); });
  const auto h = two_level_iq(0.0, w);
  EXPECT_LT(max_abs_diff(h.evaluate(0.5), ops::pauli_x() * 0.15 + ops::pauli_y() * -0.2), 1e-15);
}

TEST(ThreeLevel, ZeroEnvelopeIsZero) {
  EXPECT_EQ(three_level_rwa(-2.827, std::sqrt(2.0), make_square(0.0, 26.0)).evaluate(4.0).max_abs(), 0.0);
}

TEST(ThreeLevel, HermitianAtRandomTimes) {
  const Envelope drag = drag_quadrature(make_gaussian(1.2566, 6.5, 26.0), -2.827);
  const auto h = three_level_rwa(-2.827, std::sqrt(2.0), drag);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 26.0);
  for (int k = 0; k < 20; ++k) EXPECT_LT(hermitian_asymmetry(h.evaluate(u(rng))), 1e-12);
}

TEST(ThreeLevel, CouplingStructure) {
  const auto h = three_level_rwa(-2.0, 1.5, make_square(0.8, 1.0));
  const ComplexMatrix m = h.evaluate(0.0);
  EXPECT_NEAR(std::abs(m(1, 0)), 0.4, 1e-15);
  EXPECT_NEAR(std::abs(m(2, 1)), 0.6, 1e-15);
  EXPECT_EQ(m(2, 0), Complex(0.0));
}

TEST(LoNoise, QuietIsPureX) {
  auto zero = [](double) { return 0.0; };
  const auto h = lo_noise_qubit(make_square(0.6, 1.0), zero, zero, zero);
  EXPECT_LT(max_abs_diff(h.evaluate(0.2), ops::pauli_x() * 0.3), 1e-15);
}

TEST(LoNoise, QuarterPhaseIsPureY) {
  auto zero = [](double) { return 0.0; };
  const auto h = lo_noise_qubit(make_square(0.6, 1.0), [](double) { return kPi / 2; }, zero, zero);
  EXPECT_LT(max_abs_diff(h.evaluate(0.2), ops::pauli_y() * 0.3), 1e-15);
}

TEST(LoNoise, DephasingTermsAreInterchangeable) {
  auto f = [](double t) { return 0.1 * t; };
  auto g = [](double t) { return std::cos(t); };
  auto zero = [](double) { return 0.0; };
  const Envelope env = make_square(0.6, 2.0);
  const auto a = lo_noise_qubit(env, zero, f, g);
  const auto b = lo_noise_qubit(env, zero, g, f);
  for (double t : {0.1, 0.9, 1.7}) EXPECT_LT(max_abs_diff(a.evaluate(t), b.evaluate(t)), 1e-15);
}

TEST(CrEffective, OnlyZx) {
  CrCoefficients c;
  c.w_zx = 0.3;
  EXPECT_LT(max_abs_diff(cr_effective(c).evaluate(0.0), pauli_product("ZX") * 0.15), 1e-15);
  EXPECT_TRUE(cr_effective(c).is_constant());
}

TEST(CrEffective, SignFlipsDriveLinearTerms) {
  const CrCoefficients c{.w_ix = 0.1, .w_iy = 0.05, .w_iz = 0.2, .w_zi = 0.3, .w_zx = 0.4, .w_zy = 0.06, .w_zz = 0.5};
  const PauliCoefficients p = pauli_decompose(cr_matrix(c, -1));
  EXPECT_NEAR(p["IX"], -0.05, 1e-15);
  EXPECT_NEAR(p["IY"], -0.025, 1e-15);
  EXPECT_NEAR(p["ZX"], -0.2, 1e-15);
  EXPECT_NEAR(p["ZY"], -0.03, 1e-15);
  EXPECT_NEAR(p["IZ"], 0.1, 1e-15);
  EXPECT_NEAR(p["ZI"], 0.15, 1e-15);
  EXPECT_NEAR(p["ZZ"], 0.25, 1e-15);
  EXPECT_THROW(cr_matrix(c, 0), ValidationError);
}

TEST(ScalingModel, NoCouplingLeavesOnlyZi) {
  const CrCoefficients c = scaling_model(0.0, 0.2);
  EXPECT_EQ(c.w_ix, 0.0);
  EXPECT_EQ(c.w_zx, 0.0);
  EXPECT_EQ(c.w_zz, 0.0);
  EXPECT_EQ(c.w_iz, 0.0);
  EXPECT_NEAR(c.w_zi, 0.04, 1e-15);
}

TEST(ScalingModel, DriveDoubling) {
  const CrCoefficients a = scaling_model(0.01, 0.2), b = scaling_model(0.01, 0.4);
  EXPECT_NEAR(b.w_ix, 2 * a.w_ix, 1e-15);
  EXPECT_NEAR(b.w_zx, 2 * a.w_zx, 1e-15);
  EXPECT_NEAR(b.w_zi, 4 * a.w_zi, 1e-15);
  EXPECT_EQ(b.w_zz, a.w_zz);
  EXPECT_EQ(b.w_iz, a.w_iz);
}

TEST(ScalingModel, OrdersOfMagnitude) {
  const CrCoefficients c = scaling_model(0.01, 0.2);
  EXPECT_NEAR(c.w_ix, 0.002, 1e-15);
  EXPECT_NEAR(c.w_zz, 1e-4, 1e-18);
  EXPECT_NEAR(c.w_zi, 0.04, 1e-15);
  EXPECT_NEAR(c.w_zx, 0.002, 1e-15);
  EXPECT_NEAR(c.w_iz, 1e-4, 1e-18);
  EXPECT_GT(c.w_zi, c.w_ix);
  EXPECT_GT(c.w_zx, c.w_iz);
}

TEST(ScalingModel, WarnsOutsideWeakCoupling) {
  int warnings = 0;
  const WarningHandler prev = set_warning_handler([&](const std::string&) { ++warnings; });
  scaling_model(0.05, 0.2);
  set_warning_handler(prev);
  EXPECT_EQ(warnings, 1);
}

TEST(Hamiltonian, DimensionMismatchRejected) {
  TimeDependentHamiltonian h(2);
  EXPECT_THROW(h.add_constant(ComplexMatrix::identity(3)), ValidationError);
}
