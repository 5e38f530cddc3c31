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

#include <filesystem>
#include <fstream>

#include "pulseshape/calibrate.hpp"
#include "pulseshape/csv.hpp"

using namespace pulseshape;

TEST(Tomography, RecoversKnownCoefficients) {
  const CrCoefficients c{.w_ix = 0.02, .w_iy = -0.01, .w_iz = 0.003, .w_zi = 0.2, .w_zx = 0.03, .w_zy = 0.004, .w_zz = 0.001};
  const TomographyResult t = effective_tomography(cr_effective(c));
  EXPECT_NEAR(t.coefficients.w_ix, c.w_ix, 1e-9);
  EXPECT_NEAR(t.coefficients.w_iy, c.w_iy, 1e-9);
  EXPECT_NEAR(t.coefficients.w_iz, c.w_iz, 1e-9);
  EXPECT_NEAR(t.coefficients.w_zi, c.w_zi, 1e-9);
  EXPECT_NEAR(t.coefficients.w_zx, c.w_zx, 1e-9);
  EXPECT_NEAR(t.coefficients.w_zy, c.w_zy, 1e-9);
  EXPECT_NEAR(t.coefficients.w_zz, c.w_zz, 1e-9);
  EXPECT_LT(t.residual, 1e-12);
}

TEST(Tomography, ZeroModel) {
  const TomographyResult t = effective_tomography(cr_effective(CrCoefficients{}));
  for (double v : t.pauli.coeffs) EXPECT_EQ(v, 0.0);
}

TEST(Tomography, ProbeDurationIndependent) {
  const CrCoefficients c{.w_ix = 0.02, .w_zi = 0.2, .w_zx = 0.03};
  const TomographyResult a = effective_tomography(cr_effective(c), 4.0);
  const TomographyResult b = effective_tomography(cr_effective(c), 2.0);
  for (size_t k = 0; k < 16; ++k) EXPECT_NEAR(a.pauli.coeffs[k], b.pauli.coeffs[k], 1e-9);
}

TEST(Tomography, RejectsWrongDimension) {
  EXPECT_THROW(effective_tomography(two_level_rwa(0.0, make_square(1.0, 1.0))), ValidationError);
}

TEST(CancellationSearch, AlignedModel) {
  const CrCoefficients c{.w_ix = 0.02, .w_zi = 0.2, .w_zx = 0.03};
  const CancellationResult r = cancellation_search(c, default_amp_grid(c), default_phase_grid());
  EXPECT_NEAR(r.best_amp, 0.02, 1e-6);
  EXPECT_NEAR(std::remainder(r.best_phase - kPi, 2 * kPi), 0.0, 1e-4);
  EXPECT_LT(r.residual, 1e-6);
}

TEST(CancellationSearch, NothingToCancel) {
  const CrCoefficients c{.w_zi = 0.2, .w_zx = 0.03};
  const CancellationResult r = cancellation_search(c, default_amp_grid(c), default_phase_grid());
  EXPECT_NEAR(r.best_amp, 0.0, 1e-9);
  EXPECT_LT(r.residual, 1e-9);
}

TEST(CancellationSearch, ObjectiveContinuousInAmplitude) {
  const CrCoefficients c{.w_ix = 0.02, .w_iy = 0.01, .w_zx = 0.03};
  const auto amps = default_amp_grid(c);
  const double step = amps[1] - amps[0];
  for (size_t k = 1; k < amps.size(); ++k) {
    // The objective is a norm of an affine function of the cancel drive: 1-Lipschitz.
    EXPECT_LE(std::abs(cancellation_objective(c, amps[k], 0.4) - cancellation_objective(c, amps[k - 1], 0.4)),
              step * (1 + 1e-9));
  }
}

TEST(GoldenSection, FindsParabolaMinimum) {
  const ScalarMinimum m = golden_section([](double x) { return (x - 0.3) * (x - 0.3); }, -1.0, 2.0);
  EXPECT_NEAR(m.x, 0.3, 1e-6);
}

TEST(Sweep, ConstantFactory) {
  SweepMetric m;
  m.kind = SweepMetric::Kind::kFidelity;
  m.duration = 1.0;
  m.target = ops::pauli_x();
  const SweepResult r = parameter_sweep([](double) { return two_level_rwa(0.0, make_square(kPi, 1.0)); },
                                        {0.0, 1.0, 2.0}, m);
  EXPECT_EQ(r.objective[0], r.objective[1]);
  EXPECT_EQ(r.objective[1], r.objective[2]);
}

TEST(Sweep, FailuresRecordedPerPoint) {
  SweepMetric m;
  m.kind = SweepMetric::Kind::kLeakage;
  m.duration = 1.0;
  const SweepResult r = parameter_sweep(
      [](double x) {
        if (x > 0.5) throw ValidationError("boom");
        return three_level_rwa(-1.0, 1.4, make_square(0.1, 1.0));
      },
      {0.0, 1.0}, m);
  EXPECT_TRUE(std::isfinite(r.objective[0]));
  EXPECT_TRUE(std::isnan(r.objective[1]));
  EXPECT_EQ(r.errors[1], "boom");
}

TEST(Sweep, DragCoefficientOptimumNearInverseAnharmonicity) {
  const double anharm = -2.0 * kPi * 0.45;
  const Envelope g = make_gaussian(2.0 * kPi * 0.2, 6.5, 26.0);
  std::vector<double> axis;
  for (int k = 0; k <= 20; ++k) axis.push_back(0.1 * k / anharm);
  SweepMetric m;
  m.kind = SweepMetric::Kind::kLeakage;
  m.duration = 26.0;
  const SweepResult r = parameter_sweep(
      [&](double beta) { return three_level_rwa(anharm, std::sqrt(2.0), g.with_derivative_quadrature(beta)); }, axis, m);
  const auto best = std::min_element(r.objective.begin(), r.objective.end()) - r.objective.begin();
  EXPECT_NEAR(axis[static_cast<size_t>(best)] * anharm, 1.0, 0.2);
}

TEST(Sweep, ResonantRabiAngleLinearInAmplitude) {
  std::vector<double> axis;
  for (int k = 1; k <= 10; ++k) axis.push_back(0.25 * k);
  SweepMetric m;
  m.kind = SweepMetric::Kind::kLeakage;  // population outside |0>
  m.comp_dim = 1;
  m.duration = 1.0;
  const SweepResult r =
      parameter_sweep([](double a) { return two_level_rwa(0.0, make_square(a, 1.0)); }, axis, m);
  // Rabi angle 2 asin(sqrt(P1)) versus amplitude: least-squares line and R^2.
  std::vector<double> y;
  for (double p : r.objective) y.push_back(2 * std::asin(std::sqrt(p)));
  const double n = static_cast<double>(axis.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < axis.size(); ++k) {
    sx += axis[k];
    sy += y[k];
    sxx += axis[k] * axis[k];
    sxy += axis[k] * y[k];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  for (size_t k = 0; k < axis.size(); ++k) {
    ss_res += std::pow(y[k] - (slope * axis[k] + icpt), 2);
    ss_tot += std::pow(y[k] - sy / n, 2);
  }
  EXPECT_GT(1 - ss_res / ss_tot, 0.999);
}

TEST(Csv, FormattingAndQuoting) {
  const auto dir = std::filesystem::temp_directory_path() / "pulseshape_csv_test";
  const std::string path = (dir / "out.csv").string();
  write_csv(path, {"a", "b,c"}, std::vector<std::vector<std::string>>{{"1", "say \"hi\""}});
  std::ifstream in(path, std::ios::binary);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text, "a,\"b,c\"\r\n1,\"say \"\"hi\"\"\"\r\n");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  std::filesystem::remove_all(dir);
}
