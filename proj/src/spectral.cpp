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

#include "pulseshape/spectral.hpp"

#include <algorithm>
#include <sstream>

#include "pulseshape/csv.hpp"

namespace pulseshape {

Spectrum dft_spectrum(std::span<const double> samples, double fs, const DftOptions& options) {
  if (samples.empty()) throw ValidationError("dft_spectrum: empty input");
  if (samples.size() < 2) throw ValidationError("dft_spectrum: need at least 2 samples");
  if (!(fs > 0.0)) throw ValidationError("dft_spectrum: sample rate must be > 0");
  if (options.zero_pad < 1) throw ValidationError("dft_spectrum: zero_pad must be >= 1");
  if (options.zones < 1) throw ValidationError("dft_spectrum: zones must be >= 1");

  const size_t n = samples.size();
  std::vector<double> x(samples.begin(), samples.end());
  if (options.hann) {
    for (size_t k = 0; k < n; ++k) x[k] *= 0.5 * (1.0 - std::cos(2.0 * kPi * k / static_cast<double>(n - 1)));
  }
  const size_t padded = n * static_cast<size_t>(options.zero_pad);
  // Twiddles indexed by (n k) mod padded keep the zones bitwise periodic.
  std::vector<Complex> twiddle(padded);
  for (size_t k = 0; k < padded; ++k) {
    twiddle[k] = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / static_cast<double>(padded));
  }

  Spectrum spec;
  spec.resolution = fs / static_cast<double>(padded);
  std::vector<double> zone(padded);
  for (size_t k = 0; k < padded; ++k) {
    Complex acc{};
    size_t idx = 0;
    for (size_t m = 0; m < n; ++m) {
      acc += x[m] * twiddle[idx];
      idx += k;
      if (idx >= padded) idx %= padded;
    }
    zone[k] = std::abs(acc);
  }
  const size_t total = padded * static_cast<size_t>(options.zones);
  spec.freqs.resize(total);
  spec.magnitude.resize(total);
  for (size_t k = 0; k < total; ++k) {
    spec.freqs[k] = static_cast<double>(k) * spec.resolution;
    spec.magnitude[k] = zone[k % padded];
  }
  return spec;
}

double magnitude_at(const Spectrum& spec, double f) {
  f = std::abs(f);
  if (spec.freqs.empty()) throw ValidationError("magnitude_at: empty spectrum");
  const double pos = (f - spec.freqs.front()) / spec.resolution;
  if (pos >= static_cast<double>(spec.freqs.size() - 1)) return spec.magnitude.back();
  const size_t k = static_cast<size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(k);
  return spec.magnitude[k] + frac * (spec.magnitude[k + 1] - spec.magnitude[k]);
}

std::vector<double> sample_envelope(const Envelope& env, double fs) {
  if (!(fs > 0.0)) throw ValidationError("sample_envelope: sample rate must be > 0");
  const auto count = static_cast<size_t>(std::floor(env.duration() * fs + 1e-9)) + 1;
  std::vector<double> out(count);
  for (size_t k = 0; k < count; ++k) out[k] = env.in_phase(static_cast<double>(k) / fs);
  return out;
}

Spectrum envelope_spectrum(const Envelope& env, double fs, const DftOptions& options) {
  const auto samples = sample_envelope(env, fs);
  return dft_spectrum(samples, fs, options);
}

std::vector<double> image_frequencies(double f0, double fs, int max_zone) {
  if (!(fs > 0.0)) throw ValidationError("image_frequencies: sample rate must be > 0");
  if (max_zone < 1) throw ValidationError("image_frequencies: max_zone must be >= 1");
  if (!(f0 > 0.0 && f0 < 0.5 * fs)) {
    std::ostringstream msg;
    msg << "image_frequencies: f0 = " << f0 << " lies outside the first Nyquist zone (0, fs/2 = " << 0.5 * fs
        << "); by the sampling theorem a band-limited signal must stay below fs/2";
    throw ValidationError(msg.str());
  }
  std::vector<double> out;
  for (int c = 0; c <= max_zone; ++c) {
    out.push_back(std::abs(c * fs + f0));
    out.push_back(std::abs(c * fs - f0));
  }
  std::sort(out.begin(), out.end());
  const double tol = 1e-12 * fs;
  out.erase(std::unique(out.begin(), out.end(), [tol](double a, double b) { return std::abs(a - b) <= tol; }),
            out.end());
  return out;
}

double sinc_rolloff(double f, double fs) {
  if (!(fs > 0.0)) throw ValidationError("sinc_rolloff: sample rate must be > 0");
  const double x = kPi * f / fs;
  if (x == 0.0) return 1.0;
  return std::abs(std::sin(x) / x);
}

double spectral_fwhm(const Spectrum& spec) {
  const auto& m = spec.magnitude;
  if (m.size() < 3) throw ValidationError("spectral_fwhm: spectrum too short");
  const auto peak_it = std::max_element(m.begin(), m.end());
  const size_t peak = static_cast<size_t>(peak_it - m.begin());
  const double peak_val = *peak_it;
  if (!(peak_val > 0.0)) throw ValidationError("spectral_fwhm: spectrum is identically zero");
  for (size_t k = 0; k < m.size(); ++k) {
    if (k != peak && std::abs(m[k] - peak_val) <= 1e-12 * peak_val) {
      throw ValidationError("spectral_fwhm: global maximum is not unique");
    }
  }
  if (peak == m.size() - 1) throw ValidationError("spectral_fwhm: maximum touches the spectrum boundary");
  const double half = 0.5 * peak_val;

  auto crossing = [&](int step) -> double {
    long k = static_cast<long>(peak);
    while (true) {
      const long next = k + step;
      if (next < 0 || next >= static_cast<long>(m.size())) {
        throw ValidationError("spectral_fwhm: half-maximum region touches the spectrum boundary");
      }
      if (m[static_cast<size_t>(next)] < half) {
        const double a = m[static_cast<size_t>(k)], b = m[static_cast<size_t>(next)];
        const double frac = (a - half) / (a - b);
        return spec.freqs[static_cast<size_t>(k)] + frac * (spec.freqs[static_cast<size_t>(next)] - spec.freqs[static_cast<size_t>(k)]);
      }
      k = next;
    }
  };

  const double right = crossing(+1);
  if (peak == 0) return 2.0 * (right - spec.freqs[0]);
  return right - crossing(-1);
}

void write_spectrum_csv(const std::string& path, const Spectrum& spec) {
  std::vector<std::vector<double>> rows;
  rows.reserve(spec.freqs.size());
  for (size_t k = 0; k < spec.freqs.size(); ++k) rows.push_back({spec.freqs[k], spec.magnitude[k]});
  write_csv(path, {"freq", "magnitude"}, rows);
}

}  // namespace pulseshape
