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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pulseshape/hamiltonian.hpp"

namespace pulseshape {

/// Drive waveform on one physical line during a segment, in segment-local time.
struct LineDrive {
  std::string line;
  std::function<Complex(double)> value;
};

struct ScheduleSegment {
  std::string label;
  double duration = 0.0;
  /// Set for timed segments; evaluated on [0, duration].
  std::optional<TimeDependentHamiltonian> model;
  /// Set for instantaneous segments.
  ComplexMatrix unitary;
  std::vector<LineDrive> lines;

  bool instantaneous() const { return !model.has_value(); }
};

/// Ordered segments; the total unitary is the right-to-left product, the
/// first segment acting first.
class GateSchedule {
 public:
  explicit GateSchedule(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::vector<ScheduleSegment>& segments() const { return segments_; }
  double total_duration() const;

  GateSchedule& add_timed(std::string label, TimeDependentHamiltonian model, double duration,
                          std::vector<LineDrive> lines = {});
  GateSchedule& add_instant(std::string label, const ComplexMatrix& unitary, std::vector<LineDrive> lines = {});

  /// Unitary of one segment; `steps` = 0 uses the propagator default.
  ComplexMatrix segment_unitary(size_t index, int steps = 0) const;
  ComplexMatrix total_unitary(int steps = 0) const;

  /// Rows (segment, t_start, duration, line, t, I, Q) with `samples` points
  /// per timed segment and line.
  void write_timeline_csv(const std::string& path, int samples = 64) const;

 private:
  int dim_;
  std::vector<ScheduleSegment> segments_;
};

/// exp(-i theta/2 Z (x) X).
ComplexMatrix cr_target(double theta);

/// R_X(theta) on the control qubit: exp(-i theta (X (x) I)/2).
ComplexMatrix control_rx(double theta);

struct CnotReport {
  ComplexMatrix product;
  /// product = e^{i phase} CNOT.
  double phase = 0.0;
  double distance = 0.0;
};

/// (Z(x)I)_{pi/2} (I(x)X)_{pi/2} CR_{-pi/2}, rightmost first, checked against
/// CNOT (control = first qubit) up to a global phase.
CnotReport cnot_from_cr();

/// How the control pi-pulses of an echo are realised.
struct PiPulse {
  /// Empty: ideal instantaneous R_X(+-pi). Otherwise a shaped control-line
  /// pulse whose in-phase area should be pi; it is negated for R_X(-pi).
  std::optional<Envelope> shape;
};

/// R_X(-pi) U_CR(-Omega, tau) R_X(pi) U_CR(Omega, tau): each CR half lasts
/// `tau`.
GateSchedule echo_sequence(const CrCoefficients& c, double tau, const PiPulse& pi = {});

/// Echo whose CR halves also drive the target with
/// +-amp (cos(phase) IX + sin(phase) IY)/2, positive on the first half.
GateSchedule active_cancellation_schedule(const CrCoefficients& c, double cancel_amp, double cancel_phase,
                                          double tau, const PiPulse& pi = {});

struct MultiDerivativeOptions {
  double d10 = 0.0;
  double d21 = 0.0;
  double d20 = 0.0;
  /// Effective coefficients at drive amplitude `reference_amplitude`. Terms
  /// linear in the drive follow r = Omega_CR / reference_amplitude (Re r on
  /// X, Im r on Y), w_zi follows |r|^2, w_iz and w_zz are static.
  CrCoefficients coefficients;
  double reference_amplitude = 1.0;
  /// Target cancellation pulse: cancel_amp * base/reference in phase
  /// cancel_phase with DRAG quadrature -cancel_beta * d/dt.
  double cancel_amp = 0.0;
  double cancel_phase = 0.0;
  double cancel_beta = 0.0;
  /// Detuning of the CR drive; adds -cr_detuning (I (x) Z)/2.
  double cr_detuning = 0.0;
  /// False drives the plain base envelope instead of the recursive DRAG one.
  bool recursive = true;
  /// True wraps two sign-flipped halves in ideal control pi-pulses.
  bool echo = false;
};

/// CR drive from recursive_drag_cr(base, ...) plus DRAG-corrected target
/// cancellation, as a schedule.
GateSchedule multiderivative_cr_schedule(const Envelope& base, const MultiDerivativeOptions& options);

/// Hamiltonian of one multi-derivative CR segment (sign -1 negates every
/// drive) evaluated on [0, base.duration()].
TimeDependentHamiltonian multiderivative_cr_model(const Envelope& base, const MultiDerivativeOptions& options,
                                                  int sign = +1);

/// [U(tau), X(pi), U(tau), X(pi)] with U(tau) = exp(-i tau J Z(x)Z).
GateSchedule idle_zz_echo(double coupling, double tau);

}  // namespace pulseshape
