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

#include "pulseshape/envelope.hpp"
#include "pulseshape/numkit.hpp"

using namespace pulseshape;

namespace {

ComplexMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = n(rng);
    for (int j = i + 1; j < dim; ++j) {
      m(i, j) = Complex(n(rng), n(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

}  // namespace

TEST(Expm, ZeroGeneratorGivesIdentity) {
  EXPECT_LT(max_abs_diff(expm_hermitian_generator(ComplexMatrix(2), 1.0), ComplexMatrix::identity(2)), 1e-15);
}

TEST(Expm, HalfPiSigmaX) {
  const ComplexMatrix u = expm_hermitian_generator(ops::pauli_x() * (kPi / 2), 1.0);
  EXPECT_LT(max_abs_diff(u, -kI * ops::pauli_x()), 1e-14);
}

TEST(Expm, RandomHermitianUnitaryWithMatchingPhases) {
  std::mt19937_64 rng(11);
  for (int dim : {2, 3, 4, 9}) {
    const ComplexMatrix h = random_hermitian(dim, rng);
    const ComplexMatrix u = expm_hermitian_generator(h, 0.37);
    EXPECT_LT(unitarity_error(u), 1e-12);
    // Eigenvectors of H diagonalize U with phases exp(-i t lambda).
    const HermitianEigen e = eigh(h);
    const ComplexMatrix d = e.vectors.adjoint() * u * e.vectors;
    for (int k = 0; k < dim; ++k) {
      EXPECT_LT(std::abs(d(k, k) - std::exp(-kI * (0.37 * e.values[static_cast<size_t>(k)]))), 1e-12);
    }
  }
}

TEST(Eigh, ReconstructsAndSortsAscending) {
  std::mt19937_64 rng(3);
  const ComplexMatrix h = random_hermitian(4, rng);
  const HermitianEigen e = eigh(h);
  const std::vector<Complex> vals(e.values.begin(), e.values.end());
  EXPECT_LT(max_abs_diff(e.vectors * ComplexMatrix::diagonal(vals) * e.vectors.adjoint(), h), 1e-12);
  EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
}

TEST(Eigh, RejectsNonHermitian) {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eigh(m), ValidationError);
}

TEST(PrincipalLog, IdentityGivesZero) {
  EXPECT_LT(principal_log_unitary(ComplexMatrix::identity(3)).max_abs(), 1e-15);
}

TEST(PrincipalLog, RoundTripSigmaZ) {
  const ComplexMatrix u = expm_hermitian_generator(ops::pauli_z() * 0.3, 1.0);
  EXPECT_LT(max_abs_diff(principal_log_unitary(u), ops::pauli_z() * 0.3), 1e-14);
}

TEST(PrincipalLog, MinusIdentityIsBranchAmbiguous) {
  EXPECT_THROW(principal_log_unitary(-ComplexMatrix::identity(2)), NumericalError);
}

TEST(PrincipalLog, RandomRoundTrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix h = random_hermitian(4, rng);
    h *= Complex(0.5 / std::max(1.0, h.max_abs() * 4));
    EXPECT_LT(max_abs_diff(principal_log_unitary(expm_hermitian_generator(h, 1.0)), h), 1e-12);
  }
}

TEST(Pauli, ZXDecomposition) {
  const PauliCoefficients c = pauli_decompose(kron(ops::pauli_z(), ops::pauli_x()));
  for (int k = 0; k < 16; ++k) EXPECT_NEAR(c.coeffs[static_cast<size_t>(k)], k == 13 ? 1.0 : 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(c["ZX"], 1.0);
  EXPECT_EQ(PauliCoefficients::label(13), "ZX");
}

TEST(Pauli, IdentityDecomposition) {
  EXPECT_DOUBLE_EQ(pauli_decompose(ComplexMatrix::identity(4))["II"], 1.0);
}

TEST(Pauli, RandomRoundTrip) {
  std::mt19937_64 rng(7);
  const ComplexMatrix m = random_hermitian(4, rng);
  EXPECT_LT(max_abs_diff(pauli_reconstruct(pauli_decompose(m)), m), 1e-12);
}

TEST(Pauli, ProductLabelAndErrors) {
  EXPECT_EQ(max_abs_diff(pauli_product("ZX"), kron(ops::pauli_z(), ops::pauli_x())), 0.0);
  EXPECT_THROW(pauli_product("ZQ"), ValidationError);
  EXPECT_THROW(pauli_decompose(ComplexMatrix::identity(3)), ValidationError);
}

TEST(Quadrature, Constant) { EXPECT_NEAR(quad_integrate([](double) { return 1.0; }, 0.0, 2.0), 2.0, 1e-14); }

TEST(Quadrature, Sine) {
  EXPECT_NEAR(quad_integrate([](double t) { return std::sin(t); }, 0.0, kPi), 2.0, 1e-12);
}

TEST(Quadrature, GaussianGridRefinement) {
  const Envelope g = make_gaussian(1.0, 6.5, 26.0);
  auto f = [&](double t) { return g.in_phase(t); };
  EXPECT_NEAR(quad_integrate(f, 0.0, 26.0, 64), quad_integrate(f, 0.0, 26.0, 128), 1e-10);
}

TEST(Quadrature, MatrixValued) {
  const ComplexMatrix x = ops::pauli_x();
  const ComplexMatrix r = quad_integrate([&](double t) { return x * t; }, 0.0, 1.0, 4);
  EXPECT_LT(max_abs_diff(r, x * 0.5), 1e-15);
}

TEST(Quadrature, RejectsReversedInterval) {
  EXPECT_THROW(quad_integrate([](double) { return 1.0; }, 1.0, 0.0), ValidationError);
}

TEST(Matrix, DistanceUpToPhase) {
  double phase = 0.0;
  const ComplexMatrix x = ops::pauli_x();
  EXPECT_LT(distance_up_to_phase(x * std::exp(kI * 0.4), x, &phase), 1e-15);
  EXPECT_NEAR(phase, 0.4, 1e-15);
}

TEST(Warnings, HandlerReceivesMessages) {
  std::string seen;
  const WarningHandler previous = set_warning_handler([&](const std::string& m) { seen = m; });
  emit_warning("hello");
  set_warning_handler(previous);
  EXPECT_EQ(seen, "hello");
}
