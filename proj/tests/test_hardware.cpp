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

#include "pulseshape/hardware.hpp"
#include "pulseshape/propagate.hpp"

using namespace pulseshape;

namespace {

SampledWaveform waveform(double period, std::vector<double> values) { return {period, std::move(values)}; }

size_t peak_bin(const Spectrum& s, double lo, double hi) {
  size_t best = 0;
  double m = -1.0;
  for (size_t k = 0; k < s.freqs.size(); ++k) {
    if (s.freqs[k] < lo || s.freqs[k] > hi) continue;
    if (s.magnitude[k] > m) {
      m = s.magnitude[k];
      best = k;
    }
  }
  return best;
}

}  // namespace

TEST(SampleAndHold, ConstantEnvelope) {
  const IqPair s = sample_and_hold(make_square(0.7, 20.0), 2.0);
  ASSERT_EQ(s.first.values.size(), 41u);
  for (double v : s.first.values) EXPECT_EQ(v, 0.7);
  for (double v : s.second.values) EXPECT_EQ(v, 0.0);
  EXPECT_DOUBLE_EQ(s.first.rate(), 2.0);
}

TEST(SampleAndHold, TooFewSamplesRejected) { EXPECT_THROW(sample_and_hold(make_square(1.0, 3.0), 1.0), ValidationError); }

TEST(SampleAndHold, GaussianSpectrumMatchesContinuousTransform) {
  // Unlifted Gaussian over +-5 sigma: its transform is A sigma sqrt(2 pi) exp(-2 pi^2 sigma^2 f^2).
  const double amp = 1.0, sigma = 2.0, T = 20.0, fs = 1.0;
  const IqPair s = sample_and_hold(make_gaussian(amp, sigma, T, false), fs);
  const Spectrum spec = dft_spectrum(s.first.values, fs);
  for (double f = 0.0; f <= 0.2; f += 0.01) {
    const double analytic = amp * sigma * std::sqrt(2 * kPi) * std::exp(-2 * kPi * kPi * sigma * sigma * f * f);
    EXPECT_NEAR(magnitude_at(spec, f) / fs / analytic, 1.0, 0.02) << f;
  }
}

TEST(SampleAndHold, AliasedSineLandsAtDifference) {
  const double fs = 1.0, f0 = 0.7;
  const Envelope tone = Envelope::analytic(100.0, [=](int order, double t) {
    return order == 0 ? std::sin(2 * kPi * f0 * t) : 0.0;
  });
  const WarningHandler prev = set_warning_handler([](const std::string&) {});
  const IqPair s = sample_and_hold(tone, fs);
  set_warning_handler(prev);
  const Spectrum spec = dft_spectrum(s.first.values, fs);
  EXPECT_NEAR(spec.freqs[peak_bin(spec, 0.0, 0.5)], fs - f0, spec.resolution);
}

TEST(Staircase, HoldsEachSample) {
  const SampledWaveform w = staircase(waveform(1.0, {1.0, 2.0}), 3);
  EXPECT_EQ(w.values, (std::vector<double>{1, 1, 1, 2, 2, 2}));
  EXPECT_DOUBLE_EQ(w.period, 1.0 / 3.0);
}

TEST(IqSkew, IdentityWithoutImpairment) {
  const SampledWaveform i = waveform(1.0, {0.1, 0.5, -0.2}), q = waveform(1.0, {0.3, -0.4, 0.9});
  const IqPair out = apply_iq_skew(i, q, 0.0, 1.0);
  EXPECT_EQ(out.first.values, i.values);
  EXPECT_EQ(out.second.values, q.values);
}

TEST(IqSkew, QuarterTurnFoldsQIntoI) {
  const SampledWaveform i = waveform(1.0, {0.1, 0.5, -0.2}), q = waveform(1.0, {0.3, -0.4, 0.9});
  const IqPair out = apply_iq_skew(i, q, kPi / 2, 1.0);
  for (size_t n = 0; n < 3; ++n) {
    EXPECT_NEAR(out.first.values[n], i.values[n] - q.values[n], 1e-15);
    EXPECT_NEAR(out.second.values[n], 0.0, 1e-16);
  }
  EXPECT_THROW(apply_iq_skew(i, waveform(1.0, {1.0}), 0.1), ValidationError);
}

TEST(IqSkew, SkewIncreasesDragLeakage) {
  const double anharm = -2.0 * kPi * 0.45, amp = 2.0 * kPi * 0.2;
  const Envelope drag = drag_quadrature(make_gaussian(amp, 6.5, 26.0), anharm);
  const double clean = leakage(propagate(three_level_rwa(anharm, std::sqrt(2.0), drag), 26.0, 0, 0), 2);
  const double skewed =
      leakage(propagate(three_level_rwa(anharm, std::sqrt(2.0), apply_iq_skew(drag, 0.1)), 26.0, 0, 0), 2);
  EXPECT_GT(skewed, clean);
}

TEST(Upconvert, InPhaseOnlyIsCosine) {
  const SampledWaveform i = waveform(1.0, std::vector<double>(16, 1.0)), q = waveform(1.0, std::vector<double>(16, 0.0));
  const double lo = 2 * kPi * 0.75;
  for (UpconvertPath path : {UpconvertPath::kAnalogIq, UpconvertPath::kDuc}) {
    const SampledWaveform s = upconvert(i, q, lo, 8.0, path);
    ASSERT_EQ(s.values.size(), 128u);
    for (size_t m = 0; m < s.values.size(); ++m) EXPECT_NEAR(s.values[m], std::cos(lo * m / 8.0), 1e-12);
  }
}

TEST(Upconvert, SumAndDifferenceProducts) {
  // I = cos(2 pi fb t), Q = 0 mixes to f_LO +- fb.
  const double fb = 0.125, f_lo = 1.5, fs = 1.0, fs_rf = 8.0;
  std::vector<double> iv(64);
  for (size_t n = 0; n < iv.size(); ++n) iv[n] = std::cos(2 * kPi * fb * n / fs);
  const SampledWaveform s =
      upconvert(waveform(1.0 / fs, iv), waveform(1.0 / fs, std::vector<double>(64, 0.0)), 2 * kPi * f_lo, fs_rf,
                UpconvertPath::kDuc);
  const Spectrum spec = dft_spectrum(s.values, fs_rf);
  EXPECT_NEAR(spec.freqs[peak_bin(spec, f_lo - 0.4, f_lo - 0.01)], f_lo - fb, spec.resolution);
  EXPECT_NEAR(spec.freqs[peak_bin(spec, f_lo + 0.01, f_lo + 0.4)], f_lo + fb, spec.resolution);
}

TEST(Upconvert, NyquistViolationRejected) {
  const SampledWaveform i = waveform(1.0, std::vector<double>(16, 1.0));
  EXPECT_THROW(upconvert(i, i, 2 * kPi * 2.0, 3.0), ValidationError);
}

TEST(Upconvert, DucAndAnalogAgreeAfterInverseSinc) {
  const double fs = 1.0, fs_rf = 16.0, f_lo = 3.0;
  const IqPair s = sample_and_hold(make_gaussian(1.0, 4.0, 32.0), fs);
  const SampledWaveform analog = upconvert(s.first, s.second, 2 * kPi * f_lo, fs_rf, UpconvertPath::kAnalogIq);
  const SampledWaveform duc = upconvert(s.first, s.second, 2 * kPi * f_lo, fs_rf, UpconvertPath::kDuc);
  const Spectrum a = inverse_sinc_compensate(dft_spectrum(analog.values, fs_rf), fs, f_lo);
  const Spectrum d = dft_spectrum(duc.values, fs_rf);
  const double peak = magnitude_at(d, f_lo);
  int checked = 0;
  for (size_t k = 0; k < d.freqs.size(); ++k) {
    if (std::abs(d.freqs[k] - f_lo) >= 0.5 * fs || d.magnitude[k] < 0.1 * peak) continue;
    EXPECT_NEAR(a.magnitude[k] / d.magnitude[k], 1.0, 0.01) << d.freqs[k];
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(VirtualZ, IdentityAndQuarterTurns) {
  const ComplexEnvelope e(1.0, [](double) { return Complex(1.0, 0.0); });
  EXPECT_EQ(virtual_z(e, 0.0).value(0.5), Complex(1.0, 0.0));
  const Complex q = virtual_z(e, kPi / 2).value(0.5);
  EXPECT_NEAR(q.real(), 0.0, 1e-15);
  EXPECT_NEAR(q.imag(), -1.0, 1e-15);
  const ComplexEnvelope g(2.0, [](double t) { return Complex(std::sin(t), 0.3 * t); });
  ComplexEnvelope r = g;
  for (int k = 0; k < 4; ++k) r = virtual_z(r, kPi / 2);
  for (double t : {0.1, 0.9, 1.7}) EXPECT_LT(std::abs(r.value(t) - g.value(t)), 1e-12);
}

TEST(VirtualZ, FrameUpdateEqualsGeneratorConjugation) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = 1 + u(rng), b = u(rng), c = u(rng), theta = 3 * u(rng), delta = 0.3 * u(rng);
    const ComplexEnvelope env(4.0, [=](double t) { return Complex(a * std::sin(0.8 * t), b + c * t); });
    const ComplexMatrix framed = propagate_unitary(two_level_iq(delta, virtual_z(env, theta)), 4.0, 2048);
    const ComplexMatrix rz = expm_hermitian_generator(ops::pauli_z() * (-0.5 * theta), 1.0);
    const ComplexMatrix conj = rz * propagate_unitary(two_level_iq(delta, env), 4.0, 2048) * rz.adjoint();
    EXPECT_LT(distance_up_to_phase(framed, conj), 1e-9);
  }
}

TEST(LoDephasing, NoNoiseKeepsCoherence) {
  const DephasingCurve c = lo_dephasing_run(make_square(0.0, 10.0), 0.0, 1, 10.0, 50, 3);
  for (double v : c.coherence) EXPECT_NEAR(v, 0.5, 1e-12);
}

TEST(LoDephasing, MonotoneInNoiseStrength) {
  const Envelope idle = make_square(0.0, 20.0);
  double prev = 1.0;
  for (double sigma : {0.05, 0.1, 0.2}) {
    const double c = lo_dephasing_run(idle, sigma, 42, 20.0, 100, 1000).coherence.back();
    EXPECT_LT(c, prev);
    prev = c;
  }
}

TEST(LoDephasing, SeededRunsReproduce) {
  const Envelope idle = make_square(0.0, 5.0);
  const auto a = lo_dephasing_run(idle, 0.2, 7, 5.0, 20, 50);
  const auto b = lo_dephasing_run(idle, 0.2, 7, 5.0, 20, 50);
  EXPECT_EQ(a.coherence, b.coherence);
}

TEST(SignalChain, Validation) {
  SignalChainConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.fs = 0.0;
  EXPECT_THROW(cfg.validate(), ValidationError);
}
