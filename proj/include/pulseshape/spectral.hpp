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

#include "pulseshape/envelope.hpp"

namespace pulseshape {

/// Magnitude spectrum on a uniform, strictly increasing frequency grid.
struct Spectrum {
  std::vector<double> freqs;
  std::vector<double> magnitude;
  /// Bin width fs / (zero-padded length).
  double resolution = 0.0;
};

inline constexpr int kDefaultZeroPad = 8;

struct DftOptions {
  int zero_pad = kDefaultZeroPad;
  /// Number of sampling-rate periods [0, zones * fs) to report.
  int zones = 1;
  bool hann = false;
};

/// |X_d(f)| of the zero-padded sequence at f_k = k fs / (N * zero_pad).
/// Direct O(N^2) evaluation; frequencies beyond fs repeat the first zone.
Spectrum dft_spectrum(std::span<const double> samples, double fs, const DftOptions& options = {});

/// Linear interpolation of the magnitude at `f`; |X(-f)| = |X(f)| for real input.
double magnitude_at(const Spectrum& spec, double f);

/// Samples I(t) of `env` at t_n = n / fs over its support.
std::vector<double> sample_envelope(const Envelope& env, double fs);

/// Spectrum of the sampled in-phase component.
Spectrum envelope_spectrum(const Envelope& env, double fs, const DftOptions& options = {});

/// Sorted unique |C fs +- f0| for C = 0..max_zone.
std::vector<double> image_frequencies(double f0, double fs, int max_zone);

/// |sin(pi f / fs) / (pi f / fs)|, 1 at f = 0.
double sinc_rolloff(double f, double fs);

/// Full width at half maximum of the unique global peak, linearly
/// interpolated between bins. A peak at f = 0 is treated as the centre of a
/// symmetric baseband spectrum, so the width is twice the one-sided extent.
double spectral_fwhm(const Spectrum& spec);

void write_spectrum_csv(const std::string& path, const Spectrum& spec);

}  // namespace pulseshape
