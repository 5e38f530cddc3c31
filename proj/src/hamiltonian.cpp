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

#include "pulseshape/hamiltonian.hpp"

#include <sstream>

namespace pulseshape {

TimeDependentHamiltonian::TimeDependentHamiltonian(int dim) : dim_(dim) {
  if (dim < 1) throw ValidationError("TimeDependentHamiltonian: dim must be >= 1");
}

void TimeDependentHamiltonian::check_dim(const ComplexMatrix& op) const {
  if (op.dim() != dim_) {
    throw ValidationError("TimeDependentHamiltonian: operator dim " + std::to_string(op.dim()) +
                          " does not match model dim " + std::to_string(dim_));
  }
}

bool TimeDependentHamiltonian::is_constant() const {
  for (const auto& term : terms_)
    if (!term.constant) return false;
  return true;
}

TimeDependentHamiltonian& TimeDependentHamiltonian::add_constant(const ComplexMatrix& hermitian, std::string label) {
  check_dim(hermitian);
  require_hermitian(hermitian);
  terms_.push_back({HamiltonianTerm::Kind::kReal, hermitian, [](double) { return Complex(1.0); }, true,
                    std::move(label)});
  return *this;
}

TimeDependentHamiltonian& TimeDependentHamiltonian::add_real(const ComplexMatrix& hermitian,
                                                             std::function<double(double)> coefficient,
                                                             std::string label) {
  check_dim(hermitian);
  require_hermitian(hermitian);
  terms_.push_back({HamiltonianTerm::Kind::kReal, hermitian,
                    [f = std::move(coefficient)](double t) { return Complex(f(t)); }, false, std::move(label)});
  return *this;
}

TimeDependentHamiltonian& TimeDependentHamiltonian::add_paired(const ComplexMatrix& op,
                                                               std::function<Complex(double)> coefficient,
                                                               std::string label) {
  check_dim(op);
  terms_.push_back({HamiltonianTerm::Kind::kPaired, op, std::move(coefficient), false, std::move(label)});
  return *this;
}

TimeDependentHamiltonian& TimeDependentHamiltonian::append(const TimeDependentHamiltonian& other) {
  if (other.dim_ != dim_) throw ValidationError("TimeDependentHamiltonian::append: dimension mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

ComplexMatrix TimeDependentHamiltonian::evaluate(double t) const {
  ComplexMatrix h(dim_);
  for (const auto& term : terms_) {
    const Complex c = term.coefficient(t);
    if (c == Complex{}) continue;
    if (term.kind == HamiltonianTerm::Kind::kReal) {
      h += term.op * c.real();
    } else {
      for (int r = 0; r < dim_; ++r)
        for (int k = 0; k < dim_; ++k) {
          const Complex v = term.op(r, k);
          if (v == Complex{}) continue;
          h(r, k) += c * v;
          h(k, r) += std::conj(c * v);
        }
    }
  }
  return h;
}

double TimeDependentHamiltonian::coefficient_bound(double duration, int samples) const {
  double best = 0.0;
  for (int n = 0; n < samples; ++n) {
    const double t = samples > 1 ? duration * n / (samples - 1) : 0.0;
    double s = 0.0;
    for (const auto& term : terms_) {
      const double scale = term.op.max_abs() * (term.kind == HamiltonianTerm::Kind::kPaired ? 2.0 : 1.0);
      s += std::abs(term.coefficient(t)) * scale;
    }
    best = std::max(best, s);
  }
  return best;
}

namespace {

void require_real_drive(const Envelope& env, const char* who) {
  if (env.has_quadrature()) {
    throw ValidationError(std::string(who) + ": this model takes a single drive line; envelope Q must be zero");
  }
}

}  // namespace

TimeDependentHamiltonian two_level_lab(double wq, double wd, double alpha, const Envelope& env) {
  require_real_drive(env, "two_level_lab");
  TimeDependentHamiltonian h(2);
  h.add_constant(-0.5 * wq * ops::pauli_z(), "-wq/2 Z");
  h.add_real(ops::pauli_y(), [env, wd, alpha](double t) { return env.in_phase(t) * std::sin(wd * t + alpha); },
             "A sin(wd t + alpha) Y");
  return h;
}

TimeDependentHamiltonian two_level_rwa(double delta, const Envelope& env) {
  require_real_drive(env, "two_level_rwa");
  TimeDependentHamiltonian h(2);
  h.add_constant(-0.5 * delta * ops::pauli_z(), "-delta/2 Z");
  h.add_real(ops::pauli_x(), [env](double t) { return 0.5 * env.in_phase(t); }, "A/2 X");
  return h;
}

TimeDependentHamiltonian two_level_iq(double delta, const ComplexEnvelope& env) {
  TimeDependentHamiltonian h(2);
  h.add_constant(-0.5 * delta * ops::pauli_z(), "-delta/2 Z");
  // (W sigma+ + h.c.)/2 = (Re W X + Im W Y)/2 with sigma+ = |1><0|.
  h.add_paired(ops::transition(2, 1, 0), [env](double t) { return 0.5 * env.value(t); }, "W/2 |1><0|");
  return h;
}

TimeDependentHamiltonian three_level_rwa(double anharm, double lam, const Envelope& env, QuadratureSign sign) {
  TimeDependentHamiltonian h(3);
  const double q_sign = sign == QuadratureSign::kDerived ? 1.0 : -1.0;
  h.add_paired(ops::transition(3, 1, 0),
               [env, q_sign](double t) { return 0.5 * Complex(env.in_phase(t), q_sign * env.quadrature(t)); },
               "(I + iQ)/2 |1><0|");
  h.add_paired(ops::transition(3, 2, 1),
               [env, lam, anharm](double t) { return 0.5 * lam * env.value(t) * std::polar(1.0, anharm * t); },
               "lam (I + iQ) e^{i anharm t}/2 |2><1|");
  return h;
}

TimeDependentHamiltonian lo_noise_qubit(const Envelope& env, std::function<double(double)> phi_c,
                                        std::function<double(double)> phi_n_dot,
                                        std::function<double(double)> delta_w0) {
  require_real_drive(env, "lo_noise_qubit");
  TimeDependentHamiltonian h(2);
  h.add_real(ops::pauli_z(), [d = std::move(delta_w0)](double t) { return 0.5 * d(t); }, "dw0/2 Z");
  h.add_real(ops::pauli_z(), [n = std::move(phi_n_dot)](double t) { return 0.5 * n(t); }, "phi_n'/2 Z");
  h.add_real(ops::pauli_x(), [env, phi_c](double t) { return 0.5 * env.in_phase(t) * std::cos(phi_c(t)); },
             "A cos(phi_c)/2 X");
  h.add_real(ops::pauli_y(), [env, phi_c](double t) { return 0.5 * env.in_phase(t) * std::sin(phi_c(t)); },
             "A sin(phi_c)/2 Y");
  return h;
}

ComplexMatrix cr_matrix(const CrCoefficients& c, int sign) {
  if (sign != 1 && sign != -1) throw ValidationError("cr_effective: sign must be +1 or -1");
  const double s = sign;
  ComplexMatrix h(4);
  const std::pair<const char*, double> parts[] = {
      {"IX", s * c.w_ix}, {"IY", s * c.w_iy}, {"IZ", c.w_iz}, {"ZI", c.w_zi},
      {"ZX", s * c.w_zx}, {"ZY", s * c.w_zy}, {"ZZ", c.w_zz},
  };
  for (const auto& [label, w] : parts)
    if (w != 0.0) h += pauli_product(label) * (0.5 * w);
  return h;
}

TimeDependentHamiltonian cr_effective(const CrCoefficients& c, int sign) {
  TimeDependentHamiltonian h(4);
  h.add_constant(cr_matrix(c, sign), sign > 0 ? "H_CR(+)" : "H_CR(-)");
  return h;
}

CrCoefficients scaling_model(double coupling, double drive, const std::array<double, 5>& k) {
  if (coupling < 0.0 || drive < 0.0) throw ValidationError("scaling_model: J and Omega must be >= 0");
  if (coupling > drive / 10.0) {
    std::ostringstream msg;
    msg << "scaling_model: J = " << coupling << " is not small against Omega = " << drive
        << " (J > Omega/10); the effective CR model assumes J << Omega";
    emit_warning(msg.str());
  }
  CrCoefficients c;
  c.w_ix = k[0] * coupling * drive;
  c.w_zx = k[1] * coupling * drive;
  c.w_zz = k[2] * coupling * coupling;
  c.w_zi = k[3] * drive * drive;
  c.w_iz = k[4] * coupling * coupling;
  return c;
}

}  // namespace pulseshape
