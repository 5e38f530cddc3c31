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

#include "pulseshape/experiments.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "pulseshape/calibrate.hpp"
#include "pulseshape/csv.hpp"
#include "pulseshape/hardware.hpp"
#include "pulseshape/magnus.hpp"
#include "pulseshape/propagate.hpp"

#ifndef PULSESHAPE_VERSION
#define PULSESHAPE_VERSION "0.0.0"
#endif

namespace pulseshape::cli {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// Values shared by the three-level experiments (internal units: rad/ns, ns).
const double kFig6Anharm = -kTwoPi * 0.450;
const double kFig6Amplitude = kTwoPi * 0.200;

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 1469598103934665603ULL;
  char ch;
  while (in.get(ch)) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

class Context {
 public:
  Context(const ExperimentInfo& info, bool mhz_ns, const json& user, std::string out_dir, std::uint64_t seed)
      : info_(info), mhz_ns_(mhz_ns), out_dir_(std::move(out_dir)), seed_(seed) {
    for (const auto& p : info.params) {
      if (user.contains(p.name)) {
        values_[p.name] = convert(p, user.at(p.name));
      } else {
        values_[p.name] = p.default_value;
      }
    }
  }

  std::uint64_t seed() const { return seed_; }
  json resolved() const { return json(values_); }
  json summary = json::object();
  json interpretations = json::array();

  double num(const std::string& name) const {
    const json& v = lookup(name);
    if (!v.is_number()) throw ConfigError(name, "expected a number");
    return v.get<double>();
  }
  int integer(const std::string& name) const {
    const json& v = lookup(name);
    if (!v.is_number_integer()) throw ConfigError(name, "expected an integer");
    return v.get<int>();
  }
  std::string str(const std::string& name) const {
    const json& v = lookup(name);
    if (!v.is_string()) throw ConfigError(name, "expected a string");
    return v.get<std::string>();
  }
  std::vector<double> list(const std::string& name) const {
    const json& v = lookup(name);
    if (!v.is_array() || v.empty()) throw ConfigError(name, "expected a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(name, "expected a non-empty array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }
  double positive(const std::string& name) const {
    const double v = num(name);
    if (!(v > 0.0)) throw ConfigError(name, "must be > 0");
    return v;
  }
  int at_least(const std::string& name, int lo) const {
    const int v = integer(name);
    if (v < lo) throw ConfigError(name, "must be >= " + std::to_string(lo));
    return v;
  }

  /// Output path for an artifact; records it for the manifest checksum.
  std::string artifact(const std::string& file) {
    artifacts_.push_back(file);
    return (std::filesystem::path(out_dir_) / file).string();
  }
  const std::vector<std::string>& artifacts() const { return artifacts_; }
  const std::string& out_dir() const { return out_dir_; }

 private:
  const json& lookup(const std::string& name) const {
    const auto it = values_.find(name);
    if (it == values_.end()) throw ConfigError(name, "unknown parameter");
    return it->second;
  }

  json convert(const ParamSpec& p, const json& v) const {
    auto scale = [&](double x) {
      if (!mhz_ns_) return x;
      switch (p.kind) {
        case ParamKind::kAngularFrequency: return kTwoPi * x * 1e-3;
        case ParamKind::kLinearFrequency: return x * 1e-3;
        default: return x;
      }
    };
    switch (p.kind) {
      case ParamKind::kString:
        if (!v.is_string()) throw ConfigError(p.name, "expected a string");
        return v;
      case ParamKind::kInteger:
        if (!v.is_number_integer()) throw ConfigError(p.name, "expected an integer");
        return v;
      default:
        break;
    }
    if (v.is_number()) return scale(v.get<double>());
    if (v.is_array()) {
      json out = json::array();
      for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(p.name, "array entries must be numbers");
        out.push_back(scale(e.get<double>()));
      }
      return out;
    }
    throw ConfigError(p.name, "expected a number or an array of numbers");
  }

  const ExperimentInfo& info_;
  bool mhz_ns_;
  std::map<std::string, json> values_;
  std::string out_dir_;
  std::uint64_t seed_;
  std::vector<std::string> artifacts_;
};

ParamSpec param(std::string name, ParamKind kind, json def, std::string description) {
  return {std::move(name), kind, std::move(def), std::move(description)};
}

// ---------------------------------------------------------------- fig2

void run_fig2(Context& ctx) {
  const double delta = ctx.num("delta");
  const double amp = ctx.num("A0");
  const double t_max = ctx.positive("T_max");
  const int points = ctx.at_least("points", 2);
  const int steps = ctx.integer("steps");

  double square_peak = 0.0, square_gap = 0.0, tri_closed_gap = 0.0;
  for (const std::string shape : {"square", "triangular"}) {
    std::vector<std::vector<double>> magnus_rows, exact_rows;
    for (int i = 0; i < points; ++i) {
      const double T = t_max * i / (points - 1);
      double p_magnus = 0.0, p_closed = 0.0, p_exact = 0.0;
      if (T > 0.0) {
        const Envelope env = shape == "square" ? make_square(amp, T) : make_triangular(amp, T);
        const auto model = two_level_rwa(delta, env);
        p_magnus = transition_probability(magnus_numeric(model, T).truncated_unitary, 0, 1);
        p_closed = shape == "square" ? p01_square_closed(delta, amp, T) : p01_triangular_closed(delta, amp, T);
        p_exact = transition_probability(propagate_unitary(model, T, steps), 0, 1);
      }
      magnus_rows.push_back({T, p_magnus, p_closed});
      exact_rows.push_back({T, p_exact});
      if (shape == "square") {
        square_peak = std::max(square_peak, p_exact);
        square_gap = std::max(square_gap, std::abs(p_magnus - p_exact));
      } else {
        tri_closed_gap = std::max(tri_closed_gap, std::abs(p_closed - p_exact));
      }
    }
    write_csv(ctx.artifact("fig2_" + shape + "_magnus.csv"), {"T", "P01_magnus2", "P01_closed"}, magnus_rows);
    write_csv(ctx.artifact("fig2_" + shape + "_exact.csv"), {"T", "P01_exact"}, exact_rows);
  }
  const double w = std::sqrt(delta * delta + amp * amp);
  const double expected = amp * amp / (w * w);
  double at_pi = 0.0;
  if (w > 0.0) {
    const double t_pi = kPi / w;
    at_pi = transition_probability(propagate_unitary(two_level_rwa(delta, make_square(amp, t_pi)), t_pi, steps), 0, 1);
  }
  ctx.summary["square_exact_peak_on_grid"] = square_peak;
  ctx.summary["square_exact_at_pi_time"] = at_pi;
  ctx.summary["square_expected_peak"] = expected;
  ctx.summary["square_magnus_vs_exact_max_abs"] = square_gap;
  ctx.summary["triangular_closed_vs_exact_max_abs"] = tri_closed_gap;
}

// ---------------------------------------------------------------- fig4 / fig5

void write_spectrum_with_norm(const std::string& path, const Spectrum& spec) {
  const double dc = spec.magnitude.empty() ? 1.0 : std::max(spec.magnitude[0], 1e-300);
  std::vector<std::vector<double>> rows;
  for (size_t k = 0; k < spec.freqs.size(); ++k) rows.push_back({spec.freqs[k], spec.magnitude[k], spec.magnitude[k] / dc});
  write_csv(path, {"freq", "magnitude", "normalized"}, rows);
}

void run_fig4(Context& ctx) {
  const double amp = ctx.num("A0");
  const double duration = ctx.positive("duration");
  const double sigma = ctx.num("sigma") > 0.0 ? ctx.num("sigma") : duration / 4.0;
  const double fs = ctx.positive("fs");
  const double offset = std::abs(ctx.num("anharm")) / kTwoPi;
  const DftOptions opt{.zero_pad = ctx.at_least("zero_pad", 1)};

  const Envelope square = make_square(amp, duration);
  const Envelope gauss = make_gaussian(amp, sigma, duration);
  const Spectrum s_sq = envelope_spectrum(square, fs, opt);
  const Spectrum s_g = envelope_spectrum(gauss, fs, opt);
  write_spectrum_with_norm(ctx.artifact("fig4_square_spectrum.csv"), s_sq);
  write_spectrum_with_norm(ctx.artifact("fig4_gaussian_spectrum.csv"), s_g);
  write_envelope_csv(ctx.artifact("fig4_square_envelope.csv"), square, 401);
  write_envelope_csv(ctx.artifact("fig4_gaussian_envelope.csv"), gauss, 401);
  const double sq = magnitude_at(s_sq, offset) / s_sq.magnitude[0];
  const double g = magnitude_at(s_g, offset) / s_g.magnitude[0];
  ctx.summary["offset_frequency"] = offset;
  ctx.summary["square_normalized_at_offset"] = sq;
  ctx.summary["gaussian_normalized_at_offset"] = g;
  ctx.summary["square_exceeds_gaussian"] = sq > g;
}

void run_fig5(Context& ctx) {
  const auto durations = ctx.list("durations");
  const double fs = ctx.positive("fs");
  const double amp = ctx.num("A0");
  const DftOptions opt{.zero_pad = ctx.at_least("zero_pad", 1)};
  std::vector<std::vector<double>> rows;
  json widths = json::array();
  for (double T : durations) {
    if (!(T > 0.0)) throw ConfigError("durations", "entries must be > 0");
    const Envelope env = make_gaussian(amp, T / 4.0, T);
    const Spectrum spec = envelope_spectrum(env, fs, opt);
    const double fwhm = spectral_fwhm(spec);
    rows.push_back({T, T / 4.0, fwhm, fwhm * T});
    widths.push_back({{"duration", T}, {"fwhm", fwhm}});
    std::ostringstream name;
    name << "fig5_spectrum_T" << T << ".csv";
    write_spectrum_with_norm(ctx.artifact(name.str()), spec);
  }
  write_csv(ctx.artifact("fig5_fwhm.csv"), {"T", "sigma", "fwhm", "fwhm_times_T"}, rows);
  ctx.summary["fwhm"] = widths;
}

// ---------------------------------------------------------------- fig6 and friends

QuadratureSign parse_sign(const Context& ctx) {
  const std::string s = ctx.str("quadrature_sign");
  if (s == "derived") return QuadratureSign::kDerived;
  if (s == "as-printed") return QuadratureSign::kAsPrinted;
  throw ConfigError("quadrature_sign", "must be \"derived\" or \"as-printed\"");
}

void run_fig6(Context& ctx) {
  const double anharm = ctx.num("anharm");
  const double amp = ctx.num("A0");
  const double sigma = ctx.positive("sigma");
  const double lam = ctx.num("lam");
  const double duration = ctx.num("duration") > 0.0 ? ctx.num("duration") : default_gaussian_duration(sigma);
  const int steps = ctx.integer("steps");
  if (anharm == 0.0) throw ConfigError("anharm", "must be nonzero for the DRAG quadrature");
  const QuadratureSign sign = parse_sign(ctx);

  const Envelope plain = make_gaussian(amp, sigma, duration);
  const Envelope drag = drag_quadrature(plain, anharm);
  const auto r_plain = propagate(three_level_rwa(anharm, lam, plain, sign), duration, steps, 0);
  const auto r_drag = propagate(three_level_rwa(anharm, lam, drag, sign), duration, steps, 0);
  write_propagation_csv(ctx.artifact("fig6_gaussian.csv"), r_plain);
  write_propagation_csv(ctx.artifact("fig6_drag.csv"), r_drag);
  write_envelope_csv(ctx.artifact("fig6_drag_envelope.csv"), drag, 401);

  const double l_plain = leakage(r_plain, 2), l_drag = leakage(r_drag, 2);
  const double p1_plain = r_plain.populations[1].back(), p1_drag = r_drag.populations[1].back();
  ctx.summary["duration"] = duration;
  ctx.summary["leakage_plain"] = l_plain;
  ctx.summary["leakage_drag"] = l_drag;
  ctx.summary["leakage_ratio"] = l_plain > 0.0 ? l_drag / l_plain : 0.0;
  ctx.summary["P1_plain"] = p1_plain;
  ctx.summary["P1_drag"] = p1_drag;
  ctx.summary["leakage_ratio_le_0_1"] = l_drag <= 0.1 * l_plain;
  ctx.summary["P1_drag_gt_plain"] = p1_drag > p1_plain;
  ctx.interpretations.push_back(
      "A0 is the angular peak amplitude with A0/2pi = 200 MHz under MHz-ns units (caption reads 200 MHz/2pi)");
  ctx.interpretations.push_back("sigma is in ns; duration defaults to 4 sigma");
}

void run_iq_skew(Context& ctx) {
  const double anharm = ctx.num("anharm");
  const double amp = ctx.num("A0");
  const double sigma = ctx.positive("sigma");
  const double lam = ctx.num("lam");
  const double gain = ctx.positive("gain");
  const auto skews = ctx.list("skews");
  const double duration = default_gaussian_duration(sigma);
  if (anharm == 0.0) throw ConfigError("anharm", "must be nonzero for the DRAG quadrature");
  const Envelope drag = drag_quadrature(make_gaussian(amp, sigma, duration), anharm);
  std::vector<std::vector<double>> rows;
  double base = -1.0;
  bool all_worse = true;
  for (double phi : skews) {
    const auto res = propagate(three_level_rwa(anharm, lam, apply_iq_skew(drag, phi, gain)), duration, 0, 0);
    const double leak = leakage(res, 2);
    rows.push_back({phi, leak, res.populations[1].back()});
    if (phi == 0.0) base = leak;
  }
  for (const auto& r : rows)
    if (r[0] != 0.0 && base >= 0.0 && !(r[1] > base)) all_worse = false;
  write_csv(ctx.artifact("iq_skew_leakage.csv"), {"phi", "leakage", "P1"}, rows);
  ctx.summary["leakage_unskewed"] = base;
  ctx.summary["skew_increases_leakage"] = all_worse;
}

// ---------------------------------------------------------------- sampling

std::vector<double> sampled_sine(double f0, double fs, int n) {
  std::vector<double> x(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) x[static_cast<size_t>(k)] = std::sin(kTwoPi * f0 * k / fs);
  return x;
}

double peak_frequency(const Spectrum& spec, double lo, double hi) {
  double best = -1.0, f = 0.0;
  for (size_t k = 0; k < spec.freqs.size(); ++k) {
    if (spec.freqs[k] < lo || spec.freqs[k] > hi) continue;
    if (spec.magnitude[k] > best) {
      best = spec.magnitude[k];
      f = spec.freqs[k];
    }
  }
  return f;
}

void run_fig7(Context& ctx) {
  const double fs = ctx.positive("fs");
  const double f0 = ctx.positive("f0");
  const int n = ctx.at_least("samples", 8);
  const DftOptions opt{.zero_pad = ctx.at_least("zero_pad", 1)};
  if (!(f0 > 0.5 * fs)) throw ConfigError("f0", "must exceed fs/2 to demonstrate aliasing");
  const double alias = std::abs(fs * std::round(f0 / fs) - f0);
  const Spectrum s = dft_spectrum(sampled_sine(f0, fs, n), fs, opt);
  const Spectrum a = dft_spectrum(sampled_sine(alias, fs, n), fs, opt);
  std::vector<std::vector<double>> rows;
  double diff = 0.0;
  for (size_t k = 0; k < s.freqs.size(); ++k) {
    rows.push_back({s.freqs[k], s.magnitude[k], a.magnitude[k]});
    diff = std::max(diff, std::abs(s.magnitude[k] - a.magnitude[k]));
  }
  write_csv(ctx.artifact("fig7_spectrum.csv"), {"freq", "magnitude_f0", "magnitude_alias"}, rows);
  ctx.summary["alias_frequency"] = alias;
  ctx.summary["observed_peak"] = peak_frequency(s, 0.0, 0.5 * fs);
  ctx.summary["max_abs_diff_vs_alias"] = diff;
}

void run_nyquist(Context& ctx) {
  const double fs = ctx.positive("fs");
  const double ratio = ctx.positive("f0_over_fs");
  const int zones = ctx.at_least("zones", 1);
  const int n = ctx.at_least("samples", 8);
  const int oversample = ctx.at_least("oversample", 1);
  const DftOptions opt{.zero_pad = ctx.at_least("zero_pad", 1), .zones = zones + 1};
  const double f0 = ratio * fs;
  const std::vector<double> images = image_frequencies(f0, fs, zones);

  SampledWaveform wave{1.0 / fs, sampled_sine(f0, fs, n)};
  const Spectrum raw = dft_spectrum(wave.values, fs, opt);
  const Spectrum held = held_spectrum(wave, opt);
  const SampledWaveform stair = staircase(wave, oversample);
  const double dft_peak = dft_magnitude_at(wave, f0);

  std::vector<std::vector<double>> spec_rows;
  for (size_t k = 0; k < raw.freqs.size(); ++k) spec_rows.push_back({raw.freqs[k], raw.magnitude[k], held.magnitude[k]});
  write_csv(ctx.artifact("nyquist_spectrum.csv"), {"freq", "dft_magnitude", "held_magnitude"}, spec_rows);

  std::vector<std::vector<double>> rows;
  double worst_weight = 0.0, worst_bin = 0.0;
  for (double f : images) {
    const double window = 0.25 * std::min(f0, fs - f0);
    const double located = peak_frequency(held, f - window, f + window);
    const double sinc = sinc_rolloff(f, fs);
    const double stair_ratio = dft_magnitude_at(stair, f) / oversample / dft_peak;
    const double held_ratio = magnitude_at(held, f) / dft_peak;
    const double err = std::abs(stair_ratio - sinc) / sinc;
    worst_weight = std::max(worst_weight, err);
    worst_bin = std::max(worst_bin, std::abs(located - f) / held.resolution);
    rows.push_back({f, std::floor(f / fs + 0.5), located, held_ratio, stair_ratio, sinc, err});
  }
  write_csv(ctx.artifact("nyquist_images.csv"),
            {"image_freq", "C", "located_peak", "held_ratio", "staircase_ratio", "sinc", "staircase_rel_err"}, rows);
  ctx.summary["images"] = images;
  ctx.summary["max_peak_offset_bins"] = worst_bin;
  ctx.summary["max_staircase_vs_sinc_rel_err"] = worst_weight;
}

// ---------------------------------------------------------------- dephasing

void run_lo_dephasing(Context& ctx) {
  const auto sigmas = ctx.list("sigmas");
  const double duration = ctx.positive("duration");
  const int steps = ctx.at_least("steps", 8);
  const int ensemble = ctx.at_least("ensemble", 1);
  const Envelope idle = make_square(0.0, duration);
  std::vector<DephasingCurve> curves;
  for (double s : sigmas) {
    if (s < 0.0) throw ConfigError("sigmas", "entries must be >= 0");
    curves.push_back(lo_dephasing_run(idle, s, ctx.seed(), duration, steps, ensemble));
  }
  std::vector<std::string> header{"t"};
  for (size_t j = 0; j < sigmas.size(); ++j) {
    header.push_back("coherence_" + std::to_string(j));
    header.push_back("analytic_" + std::to_string(j));
  }
  std::vector<std::vector<double>> rows;
  const auto& times = curves.front().times;
  for (size_t k = 0; k < times.size(); ++k) {
    std::vector<double> row{times[k]};
    for (size_t j = 0; j < sigmas.size(); ++j) {
      row.push_back(curves[j].coherence[k]);
      row.push_back(0.5 * std::exp(-0.5 * sigmas[j] * sigmas[j] * times[k]));
    }
    rows.push_back(std::move(row));
  }
  write_csv(ctx.artifact("lo_dephasing.csv"), header, rows);
  json finals = json::array();
  double worst = 0.0;
  for (size_t j = 0; j < sigmas.size(); ++j) {
    finals.push_back({{"sigma", sigmas[j]}, {"final_coherence", curves[j].coherence.back()}});
    for (size_t k : {times.size() / 4, times.size() / 2, times.size() - 1}) {
      const double analytic = 0.5 * std::exp(-0.5 * sigmas[j] * sigmas[j] * times[k]);
      worst = std::max(worst, std::abs(curves[j].coherence[k] - analytic) / analytic);
    }
  }
  ctx.summary["final"] = finals;
  ctx.summary["max_rel_err_vs_analytic_at_checkpoints"] = worst;
  ctx.interpretations.push_back("LO phase noise modelled as white frequency noise (Wiener phase)");
}

// ---------------------------------------------------------------- cross resonance

CrCoefficients coefficients_from(const Context& ctx) {
  CrCoefficients c;
  c.w_ix = ctx.num("w_ix");
  c.w_iy = ctx.num("w_iy");
  c.w_iz = ctx.num("w_iz");
  c.w_zi = ctx.num("w_zi");
  c.w_zx = ctx.num("w_zx");
  c.w_zz = ctx.num("w_zz");
  return c;
}

std::vector<ParamSpec> cr_params(double w_ix, double w_iy, double w_zi, double w_zx) {
  return {
      param("w_ix", ParamKind::kAngularFrequency, w_ix, "IX coefficient"),
      param("w_iy", ParamKind::kAngularFrequency, w_iy, "IY coefficient (phase misalignment)"),
      param("w_iz", ParamKind::kAngularFrequency, 0.0, "IZ coefficient"),
      param("w_zi", ParamKind::kAngularFrequency, w_zi, "ZI coefficient"),
      param("w_zx", ParamKind::kAngularFrequency, w_zx, "ZX coefficient"),
      param("w_zz", ParamKind::kAngularFrequency, 0.0, "ZZ coefficient"),
  };
}

void run_cr_echo(Context& ctx) {
  const CrCoefficients c = coefficients_from(ctx);
  const double tau = ctx.positive("tau");
  const GateSchedule s = echo_sequence(c, tau);
  s.write_timeline_csv(ctx.artifact("cr_echo_timeline.csv"));
  const ComplexMatrix u = s.total_unitary();
  const PauliCoefficients gen = pauli_decompose(principal_log_unitary(u));
  std::vector<std::vector<std::string>> rows;
  for (int k = 0; k < 16; ++k) rows.push_back({PauliCoefficients::label(k), format_double(gen.coeffs[static_cast<size_t>(k)])});
  write_csv(ctx.artifact("cr_echo_generator.csv"), {"pauli", "angle_coefficient"}, rows);

  std::vector<std::vector<double>> tau_rows;
  for (double t : ctx.list("taus")) {
    const PauliCoefficients g = pauli_decompose(principal_log_unitary(echo_sequence(c, t).total_unitary()));
    tau_rows.push_back({t, g["ZX"], t * c.w_zx});
  }
  write_csv(ctx.artifact("cr_echo_zx_angle.csv"), {"tau", "zx_angle", "tau_w_zx"}, tau_rows);
  const ComplexMatrix ideal = expm_hermitian_generator(pauli_product("ZX") * c.w_zx, tau);
  CrCoefficients no_zi = c;
  no_zi.w_zi = 0.0;
  ctx.summary["distance_to_exp_tau_wzx_ZX"] = max_abs_diff(u, ideal);
  ctx.summary["zi_invariance"] = max_abs_diff(u, echo_sequence(no_zi, tau).total_unitary());
  ctx.interpretations.push_back("tau is the duration of each CR half of the echo");
}

void run_cr_active_cancel(Context& ctx) {
  const CrCoefficients c = coefficients_from(ctx);
  const double tau = ctx.positive("tau");
  const int refine = ctx.at_least("refine_iters", 0);
  const auto amps = default_amp_grid(c);
  const auto phases = default_phase_grid();
  std::vector<std::vector<double>> grid_rows;
  for (double a : amps)
    for (double p : phases) grid_rows.push_back({a, p, cancellation_objective(c, a, p)});
  write_csv(ctx.artifact("cr_cancel_grid.csv"), {"amp", "phase", "objective"}, grid_rows);
  const CancellationResult r = cancellation_search(c, amps, phases, refine);
  const GateSchedule before = echo_sequence(c, tau);
  const GateSchedule after = active_cancellation_schedule(c, r.best_amp, r.best_phase, tau);
  after.write_timeline_csv(ctx.artifact("cr_cancel_timeline.csv"));
  // Per-segment generator of the first CR half with and without cancellation.
  TimeDependentHamiltonian seg(4);
  seg.add_constant(cr_matrix(c) + (pauli_product("IX") * std::cos(r.best_phase) +
                                   pauli_product("IY") * std::sin(r.best_phase)) * (0.5 * r.best_amp));
  const TomographyResult t_after = effective_tomography(seg);
  const TomographyResult t_before = effective_tomography(cr_effective(c));
  ctx.summary["best_amp"] = r.best_amp;
  ctx.summary["best_phase"] = r.best_phase;
  ctx.summary["residual"] = r.residual;
  ctx.summary["uncalibrated"] = r.uncalibrated;
  ctx.summary["evaluations"] = r.evaluations;
  ctx.summary["segment_ix_iy_before"] = std::hypot(t_before.coefficients.w_ix, t_before.coefficients.w_iy);
  ctx.summary["segment_ix_iy_after"] = std::hypot(t_after.coefficients.w_ix, t_after.coefficients.w_iy);
  const PauliCoefficients g_before = schedule_generator(before);
  const PauliCoefficients g_after = schedule_generator(after);
  ctx.summary["echo_generator_zx_before"] = g_before["ZX"];
  ctx.summary["echo_generator_zx_after"] = g_after["ZX"];
}

void run_cr_multiderivative(Context& ctx) {
  const double amp = ctx.positive("A0");
  const double sigma = ctx.positive("sigma");
  const double hold = ctx.num("hold");
  const auto ramps = ctx.list("ramps");
  MultiDerivativeOptions o;
  o.d10 = ctx.num("d10");
  o.d21 = ctx.num("d21");
  o.d20 = ctx.num("d20");
  o.coefficients = coefficients_from(ctx);
  o.reference_amplitude = amp;
  o.cancel_amp = ctx.num("cancel_amp");
  o.cancel_phase = ctx.num("cancel_phase");
  o.cancel_beta = ctx.num("cancel_beta");
  o.cr_detuning = ctx.num("cr_detuning");
  std::vector<std::vector<double>> durations;
  json per_ramp = json::array();
  for (double ramp : ramps) {
    if (!(ramp > 0.0)) throw ConfigError("ramps", "entries must be > 0");
    const Envelope base = make_flat_top_gaussian(amp, sigma, ramp, hold, EdgeLift::kSmooth);
    const ComplexEnvelope cr = recursive_drag_cr(base, o.d10, o.d21, o.d20);
    std::vector<std::vector<double>> rows;
    const int samples = 801;
    for (int k = 0; k < samples; ++k) {
      const double t = base.duration() * k / (samples - 1);
      const Complex v = cr.value(t);
      rows.push_back({t, base.in_phase(t), v.real(), v.imag()});
    }
    std::ostringstream name;
    name << "cr_multiderivative_ramp" << ramp << ".csv";
    write_csv(ctx.artifact(name.str()), {"t", "omega3", "omega_cr_re", "omega_cr_im"}, rows);
    const GateSchedule s = multiderivative_cr_schedule(base, o);
    std::ostringstream tl;
    tl << "cr_multiderivative_timeline_ramp" << ramp << ".csv";
    s.write_timeline_csv(ctx.artifact(tl.str()));
    durations.push_back({ramp, s.total_duration()});
    const Complex mid = cr.value(ramp + 0.5 * hold);
    per_ramp.push_back({{"ramp", ramp},
                        {"total_duration", s.total_duration()},
                        {"endpoint_abs", std::max(std::abs(cr.value(0.0)), std::abs(cr.value(base.duration())))},
                        {"plateau_deviation", std::abs(mid - amp)}});
  }
  write_csv(ctx.artifact("cr_multiderivative_durations.csv"), {"ramp", "total_duration"}, durations);
  ctx.summary["ramps"] = per_ramp;
  if (durations.size() >= 2) ctx.summary["duration_saving"] = durations.front()[1] - durations.back()[1];
  ctx.interpretations.push_back("ramps use the smooth edge lift so the recursive chain stays finite at the ends");
}

void run_zz_idle(Context& ctx) {
  const double coupling = ctx.num("J");
  const auto taus = ctx.list("taus");
  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<Complex> phi_plus{r, 0.0, 0.0, r};
  const std::vector<Complex> superpos{r, r, 0.0, 0.0};
  for (double tau : taus) {
    const ComplexMatrix u = idle_zz_echo(coupling, tau).total_unitary();
    const double d = distance_up_to_phase(u, ComplexMatrix::identity(4));
    worst = std::max(worst, d);
    const ComplexMatrix bare = expm_hermitian_generator(pauli_product("ZZ") * coupling, 2.0 * tau);
    auto overlap = [&](const std::vector<Complex>& psi) {
      const auto out = bare.apply(psi);
      Complex s{};
      for (size_t k = 0; k < psi.size(); ++k) s += std::conj(psi[k]) * out[k];
      return std::norm(s);
    };
    rows.push_back({tau, d, overlap(phi_plus), overlap(superpos)});
  }
  write_csv(ctx.artifact("zz_idle_echo.csv"), {"tau", "echo_distance_from_identity", "no_echo_overlap_phi_plus",
                                                "no_echo_overlap_00_01"}, rows);
  ctx.summary["max_echo_distance"] = worst;
  idle_zz_echo(coupling, taus.front()).write_timeline_csv(ctx.artifact("zz_idle_timeline.csv"));
}

void run_cnot(Context& ctx) {
  const CnotReport rep = cnot_from_cr();
  std::vector<std::vector<double>> rows;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) rows.push_back({double(r), double(c), rep.product(r, c).real(), rep.product(r, c).imag()});
  write_csv(ctx.artifact("cnot_product.csv"), {"row", "col", "re", "im"}, rows);
  ctx.summary["distance_up_to_phase"] = rep.distance;
  ctx.summary["product_phase"] = rep.phase;
  ctx.summary["product_phase_over_pi"] = rep.phase / kPi;
  ctx.summary["cnot_equals_exp_i_phase_times_product_with_phase"] = -rep.phase;
  ctx.interpretations.push_back(
      "product = exp(i phase) CNOT, so CNOT = exp(-i phase) product; the printed prefactor is exp(-i pi/4)");
}

// ---------------------------------------------------------------- registry

using Runner = void (*)(Context&);

struct Entry {
  ExperimentInfo info;
  Runner runner;
};

std::vector<ParamSpec> three_level_params() {
  return {
      param("anharm", ParamKind::kAngularFrequency, kFig6Anharm, "anharmonicity Delta"),
      param("A0", ParamKind::kAngularFrequency, kFig6Amplitude, "Gaussian peak amplitude"),
      param("sigma", ParamKind::kTime, 6.5, "Gaussian standard deviation"),
      param("lam", ParamKind::kNumber, std::sqrt(2.0), "1-2 coupling ratio lambda"),
  };
}

template <class... Extra>
std::vector<ParamSpec> concat(std::vector<ParamSpec> base, Extra&&... extra) {
  (base.push_back(std::forward<Extra>(extra)), ...);
  return base;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> kEntries = [] {
    std::vector<Entry> e;
    e.push_back({{"fig2", "Magnus-truncated vs exact Rabi transition probability, square and triangular pulses",
                  {param("delta", ParamKind::kAngularFrequency, 0.5, "detuning"),
                   param("A0", ParamKind::kAngularFrequency, kPi, "pulse amplitude"),
                   param("T_max", ParamKind::kTime, 6.0, "largest pulse duration"),
                   param("points", ParamKind::kInteger, 121, "durations on [0, T_max]"),
                   param("steps", ParamKind::kInteger, 0, "propagator steps (0 = default)")}},
                 run_fig2});
    e.push_back({{"fig4", "Spectra of square and Gaussian envelopes of equal duration",
                  {param("A0", ParamKind::kAngularFrequency, 1.0, "amplitude"),
                   param("duration", ParamKind::kTime, 26.0, "pulse duration"),
                   param("sigma", ParamKind::kTime, 0.0, "Gaussian sigma (0 = duration/4)"),
                   param("fs", ParamKind::kLinearFrequency, 4.0, "sample rate"),
                   param("anharm", ParamKind::kAngularFrequency, kFig6Anharm, "offset at which sidelobes are compared"),
                   param("zero_pad", ParamKind::kInteger, kDefaultZeroPad, "zero-padding factor")}},
                 run_fig4});
    e.push_back({{"fig5", "Gaussian spectral FWHM versus pulse duration",
                  {param("durations", ParamKind::kTime, json::array({8.0, 16.0, 32.0, 64.0}), "pulse durations"),
                   param("A0", ParamKind::kAngularFrequency, 1.0, "amplitude"),
                   param("fs", ParamKind::kLinearFrequency, 4.0, "sample rate"),
                   param("zero_pad", ParamKind::kInteger, kDefaultZeroPad, "zero-padding factor")}},
                 run_fig5});
    e.push_back({{"fig6", "Three-level Gaussian vs Gaussian-DRAG population dynamics and leakage",
                  concat(three_level_params(), param("duration", ParamKind::kTime, 0.0, "pulse duration (0 = 4 sigma)"),
                         param("steps", ParamKind::kInteger, 0, "propagator steps (0 = default)"),
                         param("quadrature_sign", ParamKind::kString, "derived",
                               "sign of Q on the 0-1 transition: derived | as-printed"))},
                 run_fig6});
    e.push_back({{"fig7", "Aliasing of a sine above fs/2 onto |fs - f0|",
                  {param("f0", ParamKind::kLinearFrequency, 0.8, "sine frequency (> fs/2)"),
                   param("fs", ParamKind::kLinearFrequency, 1.0, "sample rate"),
                   param("samples", ParamKind::kInteger, 200, "sample count"),
                   param("zero_pad", ParamKind::kInteger, kDefaultZeroPad, "zero-padding factor")}},
                 run_fig7});
    const std::vector<ParamSpec> nyquist = {
        param("f0_over_fs", ParamKind::kNumber, 0.2, "tone frequency as a fraction of fs"),
        param("fs", ParamKind::kLinearFrequency, 1.0, "sample rate"),
        param("zones", ParamKind::kInteger, 3, "highest image index C"),
        param("samples", ParamKind::kInteger, 160, "sample count"),
        param("oversample", ParamKind::kInteger, 32, "staircase oversampling for the hold check"),
        param("zero_pad", ParamKind::kInteger, kDefaultZeroPad, "zero-padding factor")};
    e.push_back({{"fig9", "DAC images at |C fs +- f0| with zero-order-hold sinc roll-off", nyquist}, run_nyquist});
    e.push_back({{"nyquist", "Image frequencies and sinc weights of a held sampled tone (same as fig9)", nyquist},
                 run_nyquist});
    e.push_back({{"lo-dephasing", "Qubit coherence under white LO frequency noise, ensemble average",
                  {param("sigmas", ParamKind::kNumber, json::array({0.0, 0.05, 0.1, 0.2}),
                         "noise strengths (rad per sqrt time unit)"),
                   param("duration", ParamKind::kTime, 50.0, "evolution time"),
                   param("steps", ParamKind::kInteger, 200, "time steps"),
                   param("ensemble", ParamKind::kInteger, 1000, "ensemble members")}},
                 run_lo_dephasing});
    e.push_back({{"iq-skew-leakage", "Leakage of a DRAG pulse through a skewed IQ mixer",
                  concat(three_level_params(), param("gain", ParamKind::kNumber, 1.0, "Q gain imbalance"),
                         param("skews", ParamKind::kNumber, json::array({0.0, 0.05, 0.1, 0.2}), "skew angles (rad)"))},
                 run_iq_skew});
    e.push_back({{"cr-echo", "Echoed cross-resonance sequence and its effective generator",
                  concat(cr_params(0.05, 0.0, 0.3, 0.02), param("tau", ParamKind::kTime, 20.0, "duration of each CR half"),
                         param("taus", ParamKind::kTime, json::array({5.0, 10.0, 20.0, 40.0}), "durations for the ZX angle sweep"))},
                 run_cr_echo});
    e.push_back({{"cr-active-cancel", "Active cancellation search for the IX/IY terms of a CR drive",
                  concat(cr_params(0.02, 0.01, 0.2, 0.03), param("tau", ParamKind::kTime, 20.0, "duration of each CR half"),
                         param("refine_iters", ParamKind::kInteger, 4, "golden-section refinement rounds"))},
                 run_cr_active_cancel});
    e.push_back({{"cr-multiderivative", "Recursive-DRAG CR drive on flat-top ramps of different length",
                  concat(cr_params(0.001, 0.0, 0.0, 0.01), param("A0", ParamKind::kAngularFrequency, 0.05, "plateau amplitude"),
                         param("sigma", ParamKind::kTime, 5.0, "ramp Gaussian sigma"),
                         param("hold", ParamKind::kTime, 100.0, "plateau duration"),
                         param("ramps", ParamKind::kTime, json::array({28.0, 10.0}), "ramp durations"),
                         param("d10", ParamKind::kAngularFrequency, -kTwoPi * 0.1, "control 0-1 detuning"),
                         param("d21", ParamKind::kAngularFrequency, -kTwoPi * 0.42, "control 1-2 detuning"),
                         param("d20", ParamKind::kAngularFrequency, -kTwoPi * 0.26, "control 0-2 (two-photon) detuning"),
                         param("cancel_amp", ParamKind::kAngularFrequency, 0.0, "target cancellation amplitude"),
                         param("cancel_phase", ParamKind::kNumber, 0.0, "target cancellation phase (rad)"),
                         param("cancel_beta", ParamKind::kTime, 0.0, "DRAG coefficient of the cancellation pulse"),
                         param("cr_detuning", ParamKind::kAngularFrequency, 0.0, "CR drive detuning"))},
                 run_cr_multiderivative});
    e.push_back({{"zz-idle-echo", "Idle-time ZZ refocusing with two control pi-pulses",
                  {param("J", ParamKind::kAngularFrequency, 0.01, "ZZ coupling"),
                   param("taus", ParamKind::kTime, json::array({10.0, 50.0, 100.0}), "idle half-durations")}},
                 run_zz_idle});
    e.push_back({{"cnot", "CNOT from a CR(-pi/2) rotation and single-qubit pi/2 rotations", {}}, run_cnot});
    return e;
  }();
  return kEntries;
}

const char* kind_name(ParamKind k) {
  switch (k) {
    case ParamKind::kAngularFrequency: return "angular-frequency";
    case ParamKind::kLinearFrequency: return "frequency";
    case ParamKind::kTime: return "time";
    case ParamKind::kNumber: return "number";
    case ParamKind::kInteger: return "integer";
    case ParamKind::kString: return "string";
  }
  return "number";
}

const Entry& find_entry(const std::string& name) {
  for (const auto& e : entries())
    if (e.info.name == name) return e;
  throw ConfigError("experiment", "unknown experiment \"" + name + "\"; run `list` for the registered names");
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> kInfos = [] {
    std::vector<ExperimentInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return kInfos;
}

json list_experiments_json() {
  json out = json::array();
  for (const auto& info : experiment_registry()) {
    json params = json::array();
    for (const auto& p : info.params) {
      params.push_back({{"name", p.name}, {"kind", kind_name(p.kind)}, {"default", p.default_value}, {"description", p.description}});
    }
    out.push_back({{"name", info.name}, {"description", info.description}, {"parameters", params}});
  }
  return out;
}

std::string list_experiments_text() {
  std::ostringstream os;
  for (const auto& info : experiment_registry()) {
    os << std::left << std::setw(20) << info.name << info.description << '\n';
    for (const auto& p : info.params) {
      os << "    " << std::setw(16) << p.name << std::setw(20) << kind_name(p.kind) << "default " << p.default_value.dump()
         << '\n';
    }
  }
  return os.str();
}

json run_experiment(const json& config) {
  if (!config.is_object()) throw ConfigError("", "config must be a JSON object");
  static const std::set<std::string> kTopKeys = {"experiment", "units", "parameters", "output_dir", "seed"};
  for (const auto& [key, value] : config.items()) {
    if (!kTopKeys.count(key)) throw ConfigError(key, "unknown top-level key");
  }
  if (!config.contains("experiment") || !config["experiment"].is_string()) {
    throw ConfigError("experiment", "required string");
  }
  const Entry& entry = find_entry(config["experiment"].get<std::string>());

  std::string units = "dimensionless";
  if (config.contains("units")) {
    if (!config["units"].is_string()) throw ConfigError("units", "must be a string");
    units = config["units"].get<std::string>();
  }
  if (units != "dimensionless" && units != "MHz-ns") {
    throw ConfigError("units", "must be \"dimensionless\" or \"MHz-ns\", got \"" + units + "\"");
  }
  json params = json::object();
  if (config.contains("parameters")) {
    params = config["parameters"];
    if (!params.is_object()) throw ConfigError("parameters", "must be an object");
  }
  for (const auto& [key, value] : params.items()) {
    const bool known = std::any_of(entry.info.params.begin(), entry.info.params.end(),
                                   [&](const ParamSpec& p) { return p.name == key; });
    if (!known) throw ConfigError(key, "unknown parameter for experiment " + entry.info.name);
  }
  std::uint64_t seed = 0;
  if (config.contains("seed")) {
    if (!config["seed"].is_number_unsigned() && !config["seed"].is_number_integer()) {
      throw ConfigError("seed", "must be a non-negative integer");
    }
    if (config["seed"].is_number_integer() && config["seed"].get<long long>() < 0) {
      throw ConfigError("seed", "must be a non-negative integer");
    }
    seed = config["seed"].get<std::uint64_t>();
  }
  std::string out_dir = "output/" + entry.info.name;
  if (config.contains("output_dir")) {
    if (!config["output_dir"].is_string()) throw ConfigError("output_dir", "must be a string");
    out_dir = config["output_dir"].get<std::string>();
  }
  if (const char* env = std::getenv("PULSESHAPE_OUTPUT_DIR"); env != nullptr && *env != '\0') out_dir = env;
  try {
    std::filesystem::create_directories(out_dir);
  } catch (const std::filesystem::filesystem_error& e) {
    throw ConfigError("output_dir", std::string("cannot create directory: ") + e.what());
  }

  Context ctx(entry.info, units == "MHz-ns", params, out_dir, seed);
  const auto start = std::chrono::steady_clock::now();
  entry.runner(ctx);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json artifacts = json::array();
  for (const auto& file : ctx.artifacts()) {
    const std::string path = (std::filesystem::path(out_dir) / file).string();
    artifacts.push_back({{"file", file},
                         {"bytes", static_cast<std::uint64_t>(std::filesystem::file_size(path))},
                         {"fnv1a64", fnv1a64_file(path)}});
  }
  if (units == "MHz-ns") {
    ctx.interpretations.push_back("MHz-ns: angular frequencies w = 2 pi f[MHz] 1e-3 rad/ns, linear frequencies in GHz, times in ns");
  }
  json manifest = {
      {"tool", "pulseshape"},
      {"version", PULSESHAPE_VERSION},
      {"versions", {{"pulseshape", PULSESHAPE_VERSION}, {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                                                 std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                                                                 std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                    {"compiler", __VERSION__}}},
      {"experiment", entry.info.name},
      {"config", config},
      {"units", units},
      {"resolved_parameters", ctx.resolved()},
      {"seed", seed},
      {"output_dir", out_dir},
      {"wall_time_s", wall},
      {"artifacts", artifacts},
      {"summary", ctx.summary},
      {"interpretations", ctx.interpretations},
  };
  write_file_atomic((std::filesystem::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
  return manifest;
}

int run(const std::string& config_path, std::ostream& out, std::ostream& err) {
  auto report = [&](const char* kind, const std::string& key, const std::string& message, int code) {
    json e = {{"status", "error"}, {"kind", kind}, {"message", message}, {"exit_code", code}};
    if (!key.empty()) e["key"] = key;
    err << e.dump() << '\n';
    return code;
  };
  json config;
  {
    std::ifstream in(config_path);
    if (!in) return report("config", "", "cannot read config file " + config_path, kExitConfigError);
    try {
      config = json::parse(in);
    } catch (const json::parse_error& e) {
      return report("config", "", std::string("invalid JSON: ") + e.what(), kExitConfigError);
    }
  }
  try {
    const json manifest = run_experiment(config);
    out << json{{"status", "ok"},
                {"experiment", manifest["experiment"]},
                {"output_dir", manifest["output_dir"]},
                {"artifacts", manifest["artifacts"].size()}}
               .dump()
        << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    return report("config", e.key(), e.what(), kExitConfigError);
  } catch (const ValidationError& e) {
    return report("config", "", e.what(), kExitConfigError);
  } catch (const NumericalError& e) {
    return report("numerical", "", e.what(), kExitNumericalError);
  } catch (const json::exception& e) {
    return report("config", "", e.what(), kExitConfigError);
  } catch (const std::exception& e) {
    return report("numerical", "", e.what(), kExitNumericalError);
  }
}

}  // namespace pulseshape::cli
