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

#include "pulseshape/hardware.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <sstream>

#include "pulseshape/csv.hpp"
#include "pulseshape/hamiltonian.hpp"
#include "pulseshape/propagate.hpp"

namespace pulseshape {

void SignalChainConfig::validate() const {
  if (!(fs > 0.0)) throw ValidationError("fs: sample rate must be > 0");
  if (!(gain_imbalance > 0.0)) throw ValidationError("gain_imbalance: must be > 0");
  if (lo_noise_sigma < 0.0) throw ValidationError("lo_noise_sigma: must be >= 0");
}

namespace {

// FWHM of a finely sampled reference of f on [0, T]; 0 when undefined.
template <class F>
double reference_fwhm(F&& f, double duration) {
  constexpr int kPoints = 512;
  std::vector<double> x(kPoints);
  for (int n = 0; n < kPoints; ++n) x[static_cast<size_t>(n)] = f(duration * n / (kPoints - 1));
  try {
    return spectral_fwhm(dft_spectrum(x, (kPoints - 1) / duration, {.zero_pad = 8}));
  } catch (const ValidationError&) {
    return 0.0;
  }
}

template <class Env>
IqPair sample_impl(const Env& env, double fs) {
  if (!(fs > 0.0)) throw ValidationError("sample_and_hold: fs must be > 0");
  const double duration = env.duration();
  if (fs * duration < 8.0) {
    std::ostringstream msg;
    msg << "sample_and_hold: fs * T = " << fs * duration << " gives fewer than 8 samples";
    throw ValidationError(msg.str());
  }
  const double fwhm = reference_fwhm([&](double t) { return std::abs(env.value(t)); }, duration);
  if (fs < 2.0 * fwhm) {
    std::ostringstream msg;
    msg << "sample_and_hold: fs = " << fs << " is below twice the envelope spectral FWHM (" << fwhm
        << "); samples spaced wider than 1/(2B) cannot represent the band-limited envelope";
    emit_warning(msg.str());
  }
  const auto count = static_cast<size_t>(std::floor(duration * fs + 1e-9)) + 1;
  IqPair out;
  out.first.period = out.second.period = 1.0 / fs;
  out.first.values.resize(count);
  out.second.values.resize(count);
  for (size_t n = 0; n < count; ++n) {
    const Complex v = env.value(static_cast<double>(n) / fs);
    out.first.values[n] = v.real();
    out.second.values[n] = v.imag();
  }
  return out;
}

void require_same_length(const SampledWaveform& a, const SampledWaveform& b, const char* who) {
  if (a.values.size() != b.values.size()) {
    throw ValidationError(std::string(who) + ": I and Q sample counts differ (" + std::to_string(a.values.size()) +
                          " vs " + std::to_string(b.values.size()) + ")");
  }
}

}  // namespace

IqPair sample_and_hold(const Envelope& env, double fs) { return sample_impl(env, fs); }
IqPair sample_and_hold(const ComplexEnvelope& env, double fs) { return sample_impl(env, fs); }

Spectrum held_spectrum(const SampledWaveform& samples, const DftOptions& options) {
  Spectrum spec = dft_spectrum(samples.values, samples.rate(), options);
  for (size_t k = 0; k < spec.freqs.size(); ++k) spec.magnitude[k] *= sinc_rolloff(spec.freqs[k], samples.rate());
  return spec;
}

SampledWaveform staircase(const SampledWaveform& samples, int oversample) {
  if (oversample < 1) throw ValidationError("staircase: oversample must be >= 1");
  SampledWaveform out;
  out.period = samples.period / oversample;
  out.values.reserve(samples.values.size() * static_cast<size_t>(oversample));
  for (double v : samples.values)
    for (int k = 0; k < oversample; ++k) out.values.push_back(v);
  return out;
}

double dft_magnitude_at(const SampledWaveform& samples, double f) {
  Complex acc{};
  for (size_t n = 0; n < samples.values.size(); ++n) {
    acc += samples.values[n] * std::polar(1.0, -2.0 * kPi * f * static_cast<double>(n) * samples.period);
  }
  return std::abs(acc);
}

IqPair apply_iq_skew(const SampledWaveform& in_phase, const SampledWaveform& quadrature, double phi, double gain) {
  require_same_length(in_phase, quadrature, "apply_iq_skew");
  IqPair out{in_phase, quadrature};
  const double s = gain * std::sin(phi), c = gain * std::cos(phi);
  for (size_t n = 0; n < in_phase.values.size(); ++n) {
    const double q = quadrature.values[n];
    out.first.values[n] = in_phase.values[n] - s * q;
    out.second.values[n] = c * q;
  }
  return out;
}

Envelope apply_iq_skew(const Envelope& env, double phi, double gain) {
  if (!env.is_analytic()) throw ValidationError("apply_iq_skew: analytic envelope expected");
  const double s = gain * std::sin(phi), c = gain * std::cos(phi);
  return Envelope::analytic(
      env.duration(), [env, s](int order, double t) { return env.in_phase(t, order) - s * env.quadrature(t, order); },
      [env, c](int order, double t) { return c * env.quadrature(t, order); });
}

SampledWaveform upconvert(const SampledWaveform& in_phase, const SampledWaveform& quadrature, double lo_freq,
                          double fs_rf, UpconvertPath path) {
  require_same_length(in_phase, quadrature, "upconvert");
  if (in_phase.values.size() < 2) throw ValidationError("upconvert: need at least 2 baseband samples");
  double fwhm = 0.0;
  try {
    fwhm = spectral_fwhm(dft_spectrum(in_phase.values, in_phase.rate()));
  } catch (const ValidationError&) {
  }
  const double f_max = std::abs(lo_freq) / (2.0 * kPi) + fwhm;
  if (!(fs_rf > 2.0 * f_max)) {
    std::ostringstream msg;
    msg << "upconvert: output rate fs_rf = " << fs_rf << " violates the sampling theorem; need fs_rf > "
        << 2.0 * f_max << " (2 x (f_LO + baseband FWHM))";
    throw ValidationError(msg.str());
  }

  const size_t n_in = in_phase.values.size();
  const double ts = in_phase.period;
  const double duration = ts * static_cast<double>(n_in);
  const auto n_out = static_cast<size_t>(std::floor(duration * fs_rf + 1e-9));

  // Band-limited interpolant of a length-N sequence through its DFT bins.
  std::vector<Complex> ci, cq;
  if (path == UpconvertPath::kDuc) {
    ci.resize(n_in);
    cq.resize(n_in);
    for (size_t k = 0; k < n_in; ++k) {
      Complex a{}, b{};
      for (size_t n = 0; n < n_in; ++n) {
        const Complex w = std::polar(1.0, -2.0 * kPi * static_cast<double>((k * n) % n_in) / static_cast<double>(n_in));
        a += in_phase.values[n] * w;
        b += quadrature.values[n] * w;
      }
      ci[k] = a / static_cast<double>(n_in);
      cq[k] = b / static_cast<double>(n_in);
    }
  }
  auto interpolate = [&](const std::vector<Complex>& c, double t) {
    const double x = t / ts;  // in sample units
    double s = c[0].real();
    const size_t half = n_in / 2;
    for (size_t k = 1; k <= half; ++k) {
      const Complex term = c[k] * std::polar(1.0, 2.0 * kPi * static_cast<double>(k) * x / static_cast<double>(n_in));
      // Bin k and its mirror N - k combine into 2 Re; the Nyquist bin of an
      // even length appears once.
      s += (2 * k == n_in) ? term.real() : 2.0 * term.real();
    }
    return s;
  };

  SampledWaveform out;
  out.period = 1.0 / fs_rf;
  out.values.resize(n_out);
  for (size_t m = 0; m < n_out; ++m) {
    const double t = static_cast<double>(m) / fs_rf;
    double i, q;
    if (path == UpconvertPath::kAnalogIq) {
      const size_t idx = std::min(n_in - 1, static_cast<size_t>(std::floor(t / ts + 1e-12)));
      i = in_phase.values[idx];
      q = quadrature.values[idx];
    } else {
      i = interpolate(ci, t);
      q = interpolate(cq, t);
    }
    out.values[m] = i * std::cos(lo_freq * t) - q * std::sin(lo_freq * t);
  }
  return out;
}

Spectrum inverse_sinc_compensate(const Spectrum& spec, double fs, double center) {
  Spectrum out = spec;
  for (size_t k = 0; k < out.freqs.size(); ++k) {
    const double off = out.freqs[k] - center;
    out.magnitude[k] = std::abs(off) < 0.5 * fs ? out.magnitude[k] / sinc_rolloff(off, fs) : 0.0;
  }
  return out;
}

ComplexEnvelope virtual_z(const ComplexEnvelope& env, double phase) {
  const Complex rot = std::polar(1.0, -phase);
  return ComplexEnvelope(env.duration(), [env, rot](double t) { return env.value(t) * rot; });
}

DephasingCurve lo_dephasing_run(const Envelope& env, double noise_sigma, std::uint64_t seed, double duration,
                                int steps, int ensemble) {
  if (ensemble < 1) throw ValidationError("lo_dephasing_run: ensemble must be >= 1");
  if (steps < 8) throw ValidationError("lo_dephasing_run: steps must be >= 8");
  if (noise_sigma < 0.0) throw ValidationError("lo_dephasing_run: noise_sigma must be >= 0");
  const double h = duration / steps;
  const double step_std = noise_sigma / std::sqrt(h);
  const std::vector<Complex> plus{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};

  DephasingCurve curve;
  curve.mean_c01.assign(static_cast<size_t>(steps) + 1, Complex{});
  for (int member = 0; member < ensemble; ++member) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(member));
    std::normal_distribution<double> normal(0.0, 1.0);
    auto noise = std::make_shared<std::vector<double>>(static_cast<size_t>(steps));
    for (auto& v : *noise) v = noise_sigma > 0.0 ? step_std * normal(rng) : 0.0;
    auto phi_n_dot = [noise, h, steps](double t) {
      const int k = std::clamp(static_cast<int>(std::floor(t / h)), 0, steps - 1);
      return (*noise)[static_cast<size_t>(k)];
    };
    const auto model = lo_noise_qubit(env, [](double) { return 0.0; }, phi_n_dot, [](double) { return 0.0; });
    const auto res = propagate(model, duration, steps, plus);
    for (size_t k = 0; k < res.coherence01.size(); ++k) curve.mean_c01[k] += res.coherence01[k];
    if (member == 0) curve.times = res.times;
  }
  curve.coherence.resize(curve.mean_c01.size());
  for (size_t k = 0; k < curve.mean_c01.size(); ++k) {
    curve.mean_c01[k] /= static_cast<double>(ensemble);
    curve.coherence[k] = std::abs(curve.mean_c01[k]);
  }
  return curve;
}

void write_waveform_csv(const std::string& path, const SampledWaveform& w) {
  std::vector<std::vector<double>> rows;
  rows.reserve(w.values.size());
  for (size_t n = 0; n < w.values.size(); ++n) rows.push_back({static_cast<double>(n), n * w.period, w.values[n]});
  write_csv(path, {"n", "t", "value"}, rows);
}

}  // namespace pulseshape
