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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pulseshape/spectral.hpp"

namespace pulseshape {

enum class UpconvertPath {
  /// Analog IQ mixer fed by zero-order-hold DAC outputs.
  kAnalogIq,
  /// Digital up-conversion: the baseband is interpolated band-limited before
  /// the NCO mixes it, so no staircase reaches the output.
  kDuc,
};

struct SignalChainConfig {
  double fs = 1.0;
  double lo_freq = 0.0;  // angular
  double iq_skew = 0.0;
  double gain_imbalance = 1.0;
  double lo_noise_sigma = 0.0;
  std::uint64_t seed = 0;
  UpconvertPath path = UpconvertPath::kAnalogIq;

  void validate() const;
};

/// Real samples x[n] at t_n = n * period.
struct SampledWaveform {
  double period = 1.0;
  std::vector<double> values;

  double rate() const { return 1.0 / period; }
  double duration() const { return period * static_cast<double>(values.size()); }
};

using IqPair = std::pair<SampledWaveform, SampledWaveform>;

/// Samples I and Q at t_n = n / fs for t_n <= T. Warns when fs is below
/// twice the envelope's spectral FWHM.
IqPair sample_and_hold(const Envelope& env, double fs);
IqPair sample_and_hold(const ComplexEnvelope& env, double fs);

/// Spectrum of the DAC output modelled as DFT magnitude times the
/// zero-order-hold sinc response.
Spectrum held_spectrum(const SampledWaveform& samples, const DftOptions& options = {});

/// Brute-force staircase: every sample repeated `oversample` times at rate
/// oversample * fs.
SampledWaveform staircase(const SampledWaveform& samples, int oversample);

/// |sum_n x[n] exp(-i 2 pi f n T_s)| at a single frequency.
double dft_magnitude_at(const SampledWaveform& samples, double f);

/// I_eff = I - g Q sin(phi), Q_eff = g Q cos(phi).
IqPair apply_iq_skew(const SampledWaveform& in_phase, const SampledWaveform& quadrature, double phi,
                     double gain = 1.0);
/// Same impairment applied to an analytic envelope.
Envelope apply_iq_skew(const Envelope& env, double phi, double gain = 1.0);

/// S(t) = I(t) cos(w_LO t) - Q(t) sin(w_LO t) sampled at fs_rf over the
/// baseband duration. The analog path holds each baseband sample; the DUC
/// path interpolates the baseband band-limited (trigonometric interpolation).
SampledWaveform upconvert(const SampledWaveform& in_phase, const SampledWaveform& quadrature, double lo_freq,
                          double fs_rf, UpconvertPath path = UpconvertPath::kAnalogIq);

/// Divides each bin by sinc((f - center)/fs) for |f - center| < fs/2 and
/// zeroes the rest: inverse-sinc equalization of a held baseband.
Spectrum inverse_sinc_compensate(const Spectrum& spec, double fs, double center);

/// value'(t) = value(t) exp(-i phase).
ComplexEnvelope virtual_z(const ComplexEnvelope& env, double phase);

struct DephasingCurve {
  std::vector<double> times;
  /// |<c01(t)>| over the ensemble.
  std::vector<double> coherence;
  std::vector<Complex> mean_c01;
};

/// White frequency noise on the LO: for member i (seed + i) draw
/// phi_N'(t) piecewise constant with std sigma / sqrt(h) per step, propagate
/// |+> under lo_noise_qubit and average c01(t).
DephasingCurve lo_dephasing_run(const Envelope& env, double noise_sigma, std::uint64_t seed, double duration,
                                int steps, int ensemble);

void write_waveform_csv(const std::string& path, const SampledWaveform& w);

}  // namespace pulseshape
