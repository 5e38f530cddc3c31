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

#include "pulseshape/crgate.hpp"

#include <sstream>

#include "pulseshape/csv.hpp"
#include "pulseshape/propagate.hpp"

namespace pulseshape {

double GateSchedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments_) t += s.duration;
  return t;
}

GateSchedule& GateSchedule::add_timed(std::string label, TimeDependentHamiltonian model, double duration,
                                      std::vector<LineDrive> lines) {
  if (model.dim() != dim_) throw ValidationError("GateSchedule: segment dimension mismatch");
  if (!(duration >= 0.0)) throw ValidationError("GateSchedule: segment duration must be >= 0");
  ScheduleSegment seg;
  seg.label = std::move(label);
  seg.duration = duration;
  seg.model = std::move(model);
  seg.lines = std::move(lines);
  segments_.push_back(std::move(seg));
  return *this;
}

GateSchedule& GateSchedule::add_instant(std::string label, const ComplexMatrix& unitary,
                                        std::vector<LineDrive> lines) {
  if (unitary.dim() != dim_) throw ValidationError("GateSchedule: segment dimension mismatch");
  if (unitarity_error(unitary) > 1e-10) throw ValidationError("GateSchedule: instantaneous segment is not unitary");
  ScheduleSegment seg;
  seg.label = std::move(label);
  seg.unitary = unitary;
  seg.lines = std::move(lines);
  segments_.push_back(std::move(seg));
  return *this;
}

ComplexMatrix GateSchedule::segment_unitary(size_t index, int steps) const {
  const auto& seg = segments_.at(index);
  if (seg.instantaneous()) return seg.unitary;
  if (seg.duration == 0.0) return ComplexMatrix::identity(dim_);
  return propagate_unitary(*seg.model, seg.duration, steps);
}

ComplexMatrix GateSchedule::total_unitary(int steps) const {
  ComplexMatrix u = ComplexMatrix::identity(dim_);
  for (size_t k = 0; k < segments_.size(); ++k) u = segment_unitary(k, steps) * u;
  return u;
}

void GateSchedule::write_timeline_csv(const std::string& path, int samples) const {
  if (samples < 2) throw ValidationError("write_timeline_csv: samples must be >= 2");
  std::vector<std::vector<std::string>> rows;
  double t_start = 0.0;
  for (size_t k = 0; k < segments_.size(); ++k) {
    const auto& seg = segments_[k];
    for (const auto& line : seg.lines) {
      const int n = seg.instantaneous() || seg.duration == 0.0 ? 1 : samples;
      for (int j = 0; j < n; ++j) {
        const double local = n > 1 ? seg.duration * j / (n - 1) : 0.0;
        const Complex v = line.value ? line.value(local) : Complex{};
        rows.push_back({std::to_string(k), format_double(t_start), format_double(seg.duration), line.line,
                        format_double(t_start + local), format_double(v.real()), format_double(v.imag())});
      }
    }
    t_start += seg.duration;
  }
  write_csv(path, {"segment", "t_start", "duration", "line", "t", "I", "Q"}, rows);
}

ComplexMatrix cr_target(double theta) {
  return ComplexMatrix::identity(4) * std::cos(theta / 2.0) + pauli_product("ZX") * (-kI * std::sin(theta / 2.0));
}

ComplexMatrix control_rx(double theta) {
  return ComplexMatrix::identity(4) * std::cos(theta / 2.0) + pauli_product("XI") * (-kI * std::sin(theta / 2.0));
}

CnotReport cnot_from_cr() {
  auto rot = [](const char* label, double theta) {
    return ComplexMatrix::identity(4) * std::cos(theta / 2.0) + pauli_product(label) * (-kI * std::sin(theta / 2.0));
  };
  CnotReport rep;
  rep.product = rot("ZI", kPi / 2.0) * rot("IX", kPi / 2.0) * cr_target(-kPi / 2.0);
  ComplexMatrix cnot(4);
  cnot(0, 0) = cnot(1, 1) = 1.0;
  cnot(2, 3) = cnot(3, 2) = 1.0;
  rep.distance = distance_up_to_phase(rep.product, cnot, &rep.phase);
  if (rep.distance > 1e-10) {
    std::ostringstream msg;
    msg << "cnot_from_cr: product differs from CNOT by " << rep.distance << " after removing the global phase";
    throw NumericalError(msg.str());
  }
  return rep;
}

namespace {

std::function<Complex(double)> constant_line(Complex v) {
  return [v](double) { return v; };
}

void add_pi_pulse(GateSchedule& s, const PiPulse& pi, double sign) {
  const char* label = sign > 0 ? "R_X(pi)" : "R_X(-pi)";
  if (!pi.shape) {
    s.add_instant(label, control_rx(sign * kPi), {{"control", constant_line(sign * kPi)}});
    return;
  }
  const Envelope env = pi.shape->scaled(sign);
  TimeDependentHamiltonian h(4);
  h.add_real(pauli_product("XI"), [env](double t) { return 0.5 * env.in_phase(t); }, "I/2 XI");
  if (env.has_quadrature()) {
    h.add_real(pauli_product("YI"), [env](double t) { return 0.5 * env.quadrature(t); }, "Q/2 YI");
  }
  s.add_timed(label, std::move(h), env.duration(), {{"control", [env](double t) { return env.value(t); }}});
}

TimeDependentHamiltonian cancelled_cr(const CrCoefficients& c, int sign, double amp, double phase) {
  ComplexMatrix h = cr_matrix(c, sign);
  if (amp != 0.0) {
    h += (pauli_product("IX") * std::cos(phase) + pauli_product("IY") * std::sin(phase)) * (0.5 * sign * amp);
  }
  TimeDependentHamiltonian model(4);
  model.add_constant(h, sign > 0 ? "H_CR(+) + cancel" : "H_CR(-) - cancel");
  return model;
}

}  // namespace

GateSchedule active_cancellation_schedule(const CrCoefficients& c, double cancel_amp, double cancel_phase,
                                          double tau, const PiPulse& pi) {
  if (!(tau > 0.0)) throw ValidationError("echo_sequence: tau must be > 0");
  GateSchedule s(4);
  for (int sign : {+1, -1}) {
    std::vector<LineDrive> lines{{"control", constant_line(static_cast<double>(sign))}};
    if (cancel_amp != 0.0) {
      lines.push_back({"target", constant_line(sign * cancel_amp * std::polar(1.0, cancel_phase))});
    }
    s.add_timed(sign > 0 ? "U_CR(+)" : "U_CR(-)", cancelled_cr(c, sign, cancel_amp, cancel_phase), tau,
                std::move(lines));
    add_pi_pulse(s, pi, sign);
  }
  return s;
}

GateSchedule echo_sequence(const CrCoefficients& c, double tau, const PiPulse& pi) {
  return active_cancellation_schedule(c, 0.0, 0.0, tau, pi);
}

TimeDependentHamiltonian multiderivative_cr_model(const Envelope& base, const MultiDerivativeOptions& o, int sign) {
  if (!(o.reference_amplitude > 0.0)) throw ValidationError("multiderivative_cr_schedule: reference_amplitude must be > 0");
  std::function<Complex(double)> drive;
  if (o.recursive) {
    const ComplexEnvelope cr = recursive_drag_cr(base, o.d10, o.d21, o.d20);
    drive = [cr](double t) { return cr.value(t); };
  } else {
    drive = [base](double t) { return Complex(base.in_phase(t)); };
  }
  const double s = sign;
  const double ref = o.reference_amplitude;
  const CrCoefficients& c = o.coefficients;
  TimeDependentHamiltonian h(4);
  const ComplexMatrix lin_x = (pauli_product("IX") * c.w_ix + pauli_product("ZX") * c.w_zx) * 0.5;
  const ComplexMatrix lin_y = (pauli_product("IY") * c.w_ix + pauli_product("ZY") * c.w_zx) * 0.5;
  h.add_real(lin_x, [drive, s, ref](double t) { return s * drive(t).real() / ref; }, "Re r (w_ix IX + w_zx ZX)/2");
  h.add_real(lin_y, [drive, s, ref](double t) { return s * drive(t).imag() / ref; }, "Im r (w_ix IY + w_zx ZY)/2");
  if (c.w_zi != 0.0) {
    h.add_real(pauli_product("ZI") * (0.5 * c.w_zi), [drive, ref](double t) { return std::norm(drive(t) / ref); },
               "|r|^2 w_zi ZI/2");
  }
  const ComplexMatrix statics = pauli_product("IZ") * (0.5 * (c.w_iz - o.cr_detuning)) + pauli_product("ZZ") * (0.5 * c.w_zz);
  if (statics.max_abs() > 0.0) h.add_constant(statics, "static IZ, ZZ");
  if (o.cancel_amp != 0.0) {
    const Complex rot = std::polar(1.0, o.cancel_phase);
    const double amp = o.cancel_amp, beta = o.cancel_beta;
    auto cancel = [base, rot, amp, beta, s, ref](double t) {
      return s * amp / ref * Complex(base.in_phase(t), -beta * base.in_phase(t, 1)) * rot;
    };
    h.add_real(pauli_product("IX") * 0.5, [cancel](double t) { return cancel(t).real(); }, "Re w IX/2");
    h.add_real(pauli_product("IY") * 0.5, [cancel](double t) { return cancel(t).imag(); }, "Im w IY/2");
  }
  return h;
}

GateSchedule multiderivative_cr_schedule(const Envelope& base, const MultiDerivativeOptions& o) {
  GateSchedule s(4);
  for (int sign : {+1, -1}) {
    TimeDependentHamiltonian h = multiderivative_cr_model(base, o, sign);
    std::function<Complex(double)> control;
    if (o.recursive) {
      const ComplexEnvelope cr = recursive_drag_cr(base, o.d10, o.d21, o.d20);
      control = [cr, sign](double t) { return static_cast<double>(sign) * cr.value(t); };
    } else {
      control = [base, sign](double t) { return Complex(sign * base.in_phase(t)); };
    }
    std::vector<LineDrive> lines{{"control", control}};
    if (o.cancel_amp != 0.0) {
      const Complex rot = std::polar(1.0, o.cancel_phase);
      const double k = sign * o.cancel_amp / o.reference_amplitude, beta = o.cancel_beta;
      lines.push_back({"target", [base, rot, k, beta](double t) {
                         return k * Complex(base.in_phase(t), -beta * base.in_phase(t, 1)) * rot;
                       }});
    }
    s.add_timed(sign > 0 ? "CR(+)" : "CR(-)", std::move(h), base.duration(), std::move(lines));
    if (!o.echo) break;
    add_pi_pulse(s, {}, sign);
  }
  return s;
}

GateSchedule idle_zz_echo(double coupling, double tau) {
  if (!(tau > 0.0)) throw ValidationError("idle_zz_echo: tau must be > 0");
  GateSchedule s(4);
  TimeDependentHamiltonian h(4);
  h.add_constant(pauli_product("ZZ") * coupling, "J ZZ");
  for (int k = 0; k < 2; ++k) {
    s.add_timed("U(tau)", h, tau, {{"idle", constant_line(0.0)}});
    s.add_instant("X(pi)", control_rx(kPi), {{"control", constant_line(kPi)}});
  }
  return s;
}

}  // namespace pulseshape
