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

#include "pulseshape/envelope.hpp"

#include <algorithm>
#include <sstream>

#include "pulseshape/csv.hpp"

namespace pulseshape {

namespace {

void require_positive_duration(double duration, const char* who) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    std::ostringstream msg;
    msg << who << ": duration must be > 0, got " << duration;
    throw ValidationError(msg.str());
  }
}

void require_order(int order) {
  if (order < 0 || order > kMaxDerivativeOrder) {
    throw ValidationError("envelope derivative order must be in 0.." + std::to_string(kMaxDerivativeOrder));
  }
}

// Derivative of a uniformly sampled sequence: second-order central
// differences inside, second-order one-sided stencils at both ends.
std::vector<double> differentiate(const std::vector<double>& v, double dt) {
  const size_t n = v.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) return d;
  for (size_t k = 1; k + 1 < n; ++k) d[k] = (v[k + 1] - v[k - 1]) / (2.0 * dt);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * dt);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * dt);
  return d;
}

std::vector<std::vector<double>> derivative_table(std::vector<double> values, double dt) {
  std::vector<std::vector<double>> table;
  table.push_back(std::move(values));
  for (int k = 1; k <= kMaxDerivativeOrder; ++k) table.push_back(differentiate(table.back(), dt));
  return table;
}

// Probabilists' Hermite polynomial He_n(u).
double hermite(int n, double u) {
  switch (n) {
    case 0: return 1.0;
    case 1: return u;
    case 2: return u * u - 1.0;
    case 3: return u * u * u - 3.0 * u;
    case 4: return u * u * u * u - 6.0 * u * u + 3.0;
    default: throw ValidationError("hermite: order out of range");
  }
}

// n-th derivative of exp(-x^2 / (2 sigma^2)).
double gaussian_derivative(int n, double x, double sigma) {
  const double u = x / sigma;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * hermite(n, u) * std::exp(-0.5 * u * u) / std::pow(sigma, n);
}

// Rising half of a Gaussian ramp, x in [-ramp, 0] with the peak at x = 0.
struct GaussianRamp {
  double amplitude;
  double sigma;
  double ramp;
  bool lifted;
  EdgeLift lift;
  // Quartic edge correction q(y), y = x + ramp.
  std::array<double, 5> q{};
  double norm = 1.0;

  GaussianRamp(double a, double s, double r, bool l, EdgeLift e)
      : amplitude(a), sigma(s), ramp(r), lifted(l), lift(e) {
    if (!lifted || ramp <= 0.0) return;
    const double x_e = -ramp;
    const double g0 = gaussian_derivative(0, x_e, sigma);
    if (lift == EdgeLift::kConstant) {
      q[0] = g0;
    } else {
      const double g1 = gaussian_derivative(1, x_e, sigma);
      const double g2 = gaussian_derivative(2, x_e, sigma);
      // Match value, slope and curvature at the edge; zero slope and zero
      // third derivative at the peak.
      const double k = g1 + g2 * ramp;
      q = {g0, g1, 0.5 * g2, -k / (2.0 * ramp * ramp), k / (8.0 * ramp * ramp * ramp)};
    }
    norm = 1.0 - correction(0, ramp);
    if (!(norm > 1e-12)) {
      throw ValidationError("Gaussian ramp: ramp too short relative to sigma to lift the edges");
    }
  }

  double correction(int order, double y) const {
    double s = 0.0;
    for (int p = order; p < 5; ++p) {
      double coef = q[static_cast<size_t>(p)];
      for (int j = 0; j < order; ++j) coef *= (p - j);
      s += coef * std::pow(y, p - order);
    }
    return s;
  }

  double operator()(int order, double x) const {
    double v = gaussian_derivative(order, x, sigma);
    if (lifted && ramp > 0.0) v -= correction(order, x + ramp);
    return amplitude * v / norm;
  }
};

Envelope::Profile flat_top_profile(double amplitude, double sigma, double ramp, double hold, bool lifted,
                                   EdgeLift lift) {
  const GaussianRamp rise(amplitude, sigma, ramp, lifted, lift);
  return [rise, ramp, hold, amplitude](int order, double t) {
    if (t < ramp) return rise(order, t - ramp);
    if (t <= ramp + hold) return order == 0 ? amplitude : 0.0;
    const double x = t - ramp - hold;
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return sign * rise(order, -x);
  };
}

}  // namespace

Envelope Envelope::analytic(double duration, Profile in_phase, Profile quadrature) {
  require_positive_duration(duration, "Envelope");
  if (!in_phase) throw ValidationError("Envelope: in-phase profile is required");
  Envelope env;
  env.duration_ = duration;
  env.analytic_ = true;
  env.i_ = std::move(in_phase);
  env.has_q_ = static_cast<bool>(quadrature);
  env.q_ = std::move(quadrature);
  return env;
}

Envelope Envelope::sampled(double dt, std::vector<double> in_phase, std::vector<double> quadrature) {
  if (!(dt > 0.0)) throw ValidationError("Envelope::sampled: sample period must be > 0");
  if (in_phase.size() < 3) throw ValidationError("Envelope::sampled: need at least 3 samples");
  if (!quadrature.empty() && quadrature.size() != in_phase.size()) {
    throw ValidationError("Envelope::sampled: I and Q sample counts differ");
  }
  Envelope env;
  env.analytic_ = false;
  env.dt_ = dt;
  env.duration_ = dt * static_cast<double>(in_phase.size() - 1);
  env.has_q_ = !quadrature.empty();
  if (quadrature.empty()) quadrature.assign(in_phase.size(), 0.0);
  env.i_table_ = derivative_table(std::move(in_phase), dt);
  env.q_table_ = derivative_table(std::move(quadrature), dt);
  return env;
}

double Envelope::eval_sampled(const std::vector<std::vector<double>>& table, double t, int order) const {
  const auto& v = table[static_cast<size_t>(order)];
  const double pos = t / dt_;
  const size_t last = v.size() - 1;
  size_t k = static_cast<size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(last)));
  if (k == last) return v[last];
  const double frac = pos - static_cast<double>(k);
  return v[k] + frac * (v[k + 1] - v[k]);
}

double Envelope::in_phase(double t, int order) const {
  require_order(order);
  if (t < 0.0 || t > duration_ || duration_ == 0.0) return 0.0;
  return analytic_ ? i_(order, t) : eval_sampled(i_table_, t, order);
}

double Envelope::quadrature(double t, int order) const {
  require_order(order);
  if (!has_q_ || t < 0.0 || t > duration_) return 0.0;
  return analytic_ ? q_(order, t) : eval_sampled(q_table_, t, order);
}

Envelope Envelope::scaled(double factor) const {
  Envelope out = *this;
  if (analytic_) {
    auto i = i_;
    out.i_ = [i, factor](int order, double t) { return factor * i(order, t); };
    if (has_q_) {
      auto q = q_;
      out.q_ = [q, factor](int order, double t) { return factor * q(order, t); };
    }
  } else {
    for (auto& row : out.i_table_)
      for (auto& v : row) v *= factor;
    for (auto& row : out.q_table_)
      for (auto& v : row) v *= factor;
  }
  return out;
}

Envelope Envelope::with_derivative_quadrature(double beta) const {
  Envelope out = *this;
  out.has_q_ = true;
  if (analytic_) {
    auto i = i_;
    out.q_ = [i, beta](int order, double t) {
      if (order + 1 > kMaxDerivativeOrder) {
        throw ValidationError("DRAG quadrature: derivative order exceeds the analytic profile");
      }
      return -beta * i(order + 1, t);
    };
  } else {
    std::vector<double> q = i_table_[1];
    for (auto& v : q) v *= -beta;
    out.q_table_ = derivative_table(std::move(q), dt_);
  }
  return out;
}

ComplexEnvelope::ComplexEnvelope(double duration, Function fn) : duration_(duration), fn_(std::move(fn)) {
  require_positive_duration(duration, "ComplexEnvelope");
  if (!fn_) throw ValidationError("ComplexEnvelope: value function is required");
}

ComplexEnvelope ComplexEnvelope::from(const Envelope& env) {
  return ComplexEnvelope(env.duration(), [env](double t) { return env.value(t); });
}

Complex ComplexEnvelope::value(double t) const {
  if (t < 0.0 || t > duration_ || !fn_) return {};
  return fn_(t);
}

Envelope make_square(double amplitude, double duration) {
  require_positive_duration(duration, "make_square");
  return Envelope::analytic(duration, [amplitude](int order, double) { return order == 0 ? amplitude : 0.0; });
}

Envelope make_triangular(double amplitude, double duration) {
  require_positive_duration(duration, "make_triangular");
  const double slope = 2.0 * amplitude / duration;
  return Envelope::analytic(duration, [=](int order, double t) {
    const bool rising = t <= 0.5 * duration;
    switch (order) {
      case 0: return rising ? slope * t : slope * (duration - t);
      case 1: return rising ? slope : -slope;
      default: return 0.0;
    }
  });
}

Envelope make_gaussian(double amplitude, double sigma, double duration, bool lifted, EdgeLift lift) {
  require_positive_duration(duration, "make_gaussian");
  if (!(sigma > 0.0)) throw ValidationError("make_gaussian: sigma must be > 0");
  return Envelope::analytic(duration, flat_top_profile(amplitude, sigma, 0.5 * duration, 0.0, lifted, lift));
}

Envelope make_flat_top_gaussian(double amplitude, double sigma, double ramp, double hold, EdgeLift lift) {
  if (!(sigma > 0.0)) throw ValidationError("make_flat_top_gaussian: sigma must be > 0");
  if (ramp < 0.0 || hold < 0.0) throw ValidationError("make_flat_top_gaussian: ramp and hold must be >= 0");
  return Envelope::analytic(2.0 * ramp + hold, flat_top_profile(amplitude, sigma, ramp, hold, true, lift));
}

Envelope drag_quadrature(const Envelope& env, double delta) {
  if (delta == 0.0) throw ValidationError("drag_quadrature: delta must be nonzero (Q = -I'/delta)");
  if (env.has_quadrature()) throw ValidationError("drag_quadrature: envelope already has a quadrature part");
  return env.with_derivative_quadrature(1.0 / delta);
}

RecursiveDragLevels recursive_drag_levels(const Envelope& base, double d10, double d21, double d20, double t) {
  RecursiveDragLevels out{};
  const double b0 = base.in_phase(t, 0);
  if (b0 == 0.0) return out;
  const double b1 = base.in_phase(t, 1);
  const double b2 = base.in_phase(t, 2);
  const double b3 = base.in_phase(t, 3);
  const Complex k = Complex(0.0, 2.0 / d20);
  // R = Omega3^2 - (2i/d20) Omega3 Omega3' and its first two derivatives.
  const Complex r = b0 * b0 - k * (b0 * b1);
  const Complex r1 = 2.0 * b0 * b1 - k * (b1 * b1 + b0 * b2);
  const Complex r2 = 2.0 * (b1 * b1 + b0 * b2) - k * (3.0 * b1 * b2 + b0 * b3);
  const Complex o2 = (r.imag() == 0.0 && r.real() >= 0.0) ? Complex(std::sqrt(r.real()), 0.0) : std::sqrt(r);
  if (o2 == Complex{}) return out;
  const Complex o2d = r1 / (2.0 * o2);
  const Complex o2dd = r2 / (2.0 * o2) - r1 * r1 / (4.0 * o2 * o2 * o2);
  out.omega2 = o2;
  out.omega2_dot = o2d;
  out.omega1 = o2 - kI * o2d / d21;
  out.omega1_dot = o2d - kI * o2dd / d21;
  out.omega_cr = out.omega1 - kI * out.omega1_dot / d10;
  return out;
}

ComplexEnvelope recursive_drag_cr(const Envelope& base, double d10, double d21, double d20) {
  if (d10 == 0.0 || d21 == 0.0 || d20 == 0.0) {
    throw ValidationError("recursive_drag_cr: detunings d10, d21, d20 must be nonzero");
  }
  if (!base.is_analytic()) {
    throw ValidationError("recursive_drag_cr: base needs analytic derivatives up to third order");
  }
  if (base.has_quadrature()) throw ValidationError("recursive_drag_cr: base must be real");
  const double T = base.duration();
  constexpr int kProbe = 4096;
  double peak = 0.0;
  for (int n = 0; n <= kProbe; ++n) {
    const double v = base.in_phase(T * n / kProbe);
    if (v < 0.0) {
      std::ostringstream msg;
      msg << "recursive_drag_cr: base must be non-negative, found " << v << " at t = " << T * n / kProbe;
      throw ValidationError(msg.str());
    }
    peak = std::max(peak, v);
  }
  const double tol = 1e-9 * std::max(1.0, peak);
  for (double edge : {0.0, T}) {
    for (int order = 0; order <= 2; ++order) {
      const double v = base.in_phase(edge, order);
      if (std::abs(v) > tol) {
        std::ostringstream msg;
        msg << "recursive_drag_cr: base derivative of order " << order << " is " << v << " at t = " << edge
            << "; the chain needs the base and its first two derivatives to vanish at both ends "
               "(use EdgeLift::kSmooth)";
        throw ValidationError(msg.str());
      }
    }
  }

  ComplexEnvelope out(T, [base, d10, d21, d20](double t) { return recursive_drag_levels(base, d10, d21, d20, t).omega_cr; });

  // Continuity monitor for the principal square-root branch.
  Complex prev{};
  for (int n = 0; n <= kProbe; ++n) {
    const Complex v = recursive_drag_levels(base, d10, d21, d20, T * n / kProbe).omega2;
    if (prev != Complex{} && v != Complex{}) {
      const double jump = std::abs(std::arg(v / prev));
      if (jump > kPi / 2.0) {
        std::ostringstream msg;
        msg << "recursive_drag_cr: Omega2 phase jumps by " << jump << " rad near t = " << T * n / kProbe
            << "; the principal square-root branch may be discontinuous";
        emit_warning(msg.str());
        break;
      }
    }
    prev = v;
  }
  return out;
}

double area(const Envelope& env, int panels) {
  if (env.is_analytic()) {
    return quad_integrate([&](double t) { return env.in_phase(t); }, 0.0, env.duration(), panels);
  }
  // Exact integral of the linear interpolant.
  const double dt = env.sample_period();
  const int n = static_cast<int>(std::llround(env.duration() / dt));
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += 0.5 * dt * (env.in_phase(k * dt) + env.in_phase((k + 1) * dt));
  return s;
}

void write_envelope_csv(const std::string& path, const Envelope& env, int samples) {
  if (samples < 2) throw ValidationError("write_envelope_csv: need at least 2 samples");
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<size_t>(samples));
  for (int n = 0; n < samples; ++n) {
    const double t = env.duration() * n / (samples - 1);
    rows.push_back({t, env.in_phase(t), env.quadrature(t)});
  }
  write_csv(path, {"t", "I", "Q"}, rows);
}

}  // namespace pulseshape
