// Copyright 2026 The eqk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eqk/simulator.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.h"

namespace eqk {
namespace {

using std::numbers::pi;

void ExpectMatNear(const Mat2 &a, const Mat2 &b, double eps) {
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(a[i].real(), b[i].real(), eps) << "entry " << i;
        EXPECT_NEAR(a[i].imag(), b[i].imag(), eps) << "entry " << i;
    }
}

TEST(Su2Matrix, ZeroAnglesIsIdentity) { ExpectMatNear(su2_matrix({0, 0, 0}), identity2(), 1e-15); }

TEST(Su2Matrix, ClosedForm) {
    // Rz(c) Ry(b) Rz(a) written out by hand.
    const double a = 0.3, b = -0.7, c = 1.9;
    const Complex i(0, 1);
    const Mat2 expected = {std::exp(-i * (a + c) / 2.0) * std::cos(b / 2), -std::exp(i * (a - c) / 2.0) * std::sin(b / 2),
                           std::exp(-i * (a - c) / 2.0) * std::sin(b / 2), std::exp(i * (a + c) / 2.0) * std::cos(b / 2)};
    ExpectMatNear(su2_matrix({a, b, c}), expected, 1e-15);
}

TEST(Su2Matrix, RyPiFlipsZero) {
    StateVector psi(1);
    apply_single(psi, 0, su2_matrix({0, pi, 0}));
    EXPECT_NEAR(std::norm(psi[1]), 1.0, 1e-15);
}

TEST(Su2Matrix, IsUnitaryWithUnitDeterminant) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-10, 10);
    for (int t = 0; t < 100; ++t) {
        const Mat2 u = su2_matrix({angle(rng), angle(rng), angle(rng)});
        ExpectMatNear(matmul(u, dagger(u)), identity2(), 1e-14);
        const Complex det = u[0] * u[3] - u[1] * u[2];
        EXPECT_NEAR(det.real(), 1.0, 1e-14);
        EXPECT_NEAR(det.imag(), 0.0, 1e-14);
    }
}

TEST(Su2Matrix, RejectsNonFinite) {
    EXPECT_THROW(su2_matrix({std::numeric_limits<double>::quiet_NaN(), 0, 0}), std::invalid_argument);
    EXPECT_THROW(su2_matrix({0, std::numeric_limits<double>::infinity(), 0}), std::invalid_argument);
}

TEST(StateVector, StartsInAllZero) {
    StateVector psi(3);
    EXPECT_EQ(psi.dim(), 8u);
    EXPECT_EQ(psi[0], Complex(1.0));
    EXPECT_DOUBLE_EQ(psi.norm_squared(), 1.0);
}

TEST(StateVector, RejectsBadSizes) {
    EXPECT_THROW(StateVector(0), std::invalid_argument);
    EXPECT_THROW(StateVector(kMaxQubits + 1), std::invalid_argument);
    EXPECT_THROW(StateVector::from_amplitudes({1.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(StateVector::from_amplitudes({1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(StateVector::basis(2, 4), std::out_of_range);
}

TEST(StateVector, QubitZeroIsMostSignificant) {
    StateVector psi(3);
    apply_single(psi, 0, su2_matrix({0, pi, 0}));
    EXPECT_NEAR(std::norm(psi[4]), 1.0, 1e-15);
    StateVector phi(3);
    apply_single(phi, 2, su2_matrix({0, pi, 0}));
    EXPECT_NEAR(std::norm(phi[1]), 1.0, 1e-15);
}

TEST(ApplyGate, CnotOnBasisStates) {
    // |10> -> |11>, |00> -> |00>.
    StateVector psi = StateVector::basis(2, 2);
    apply_gate(psi, Gate::cnot(0, 1));
    EXPECT_EQ(psi[3], Complex(1.0));
    StateVector zero(2);
    apply_gate(zero, Gate::cnot(0, 1));
    EXPECT_EQ(zero[0], Complex(1.0));
}

TEST(ApplyGate, CzPhasesOnlyOneOne) {
    const double h = 0.5;
    StateVector psi = StateVector::from_amplitudes({h, h, h, h});
    apply_gate(psi, Gate::cz(0, 1));
    EXPECT_EQ(psi[0], Complex(h));
    EXPECT_EQ(psi[2], Complex(h));
    EXPECT_EQ(psi[3], Complex(-h));
}

TEST(ApplyGate, ValidatesQubits) {
    StateVector psi(2);
    EXPECT_THROW(apply_gate(psi, Gate::single(2, identity2())), std::out_of_range);
    EXPECT_THROW(apply_gate(psi, Gate::cnot(1, 1)), std::invalid_argument);
    EXPECT_THROW(apply_gate(psi, Gate::controlled(-1, 0, identity2())), std::out_of_range);
}

TEST(ApplyGate, MatchesDenseOracle) {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 4; ++n) {
        for (int t = 0; t < 20; ++t) {
            const Circuit c = oracle::random_circuit(n, 12, rng);
            StateVector psi(n);
            run_circuit(psi, c);
            const oracle::DenseVec expected = oracle::circuit_unitary(n, c) * oracle::zero_state(n);
            EXPECT_LE(oracle::max_abs_diff(expected, psi), 1e-12) << "n=" << n;
        }
    }
}

TEST(ApplyGate, AdjointUndoesCircuit) {
    std::mt19937_64 rng(3);
    const Circuit c = oracle::random_circuit(3, 20, rng);
    StateVector psi(3);
    run_circuit(psi, c);
    run_circuit(psi, adjoint(c));
    EXPECT_NEAR(std::abs(psi[0]), 1.0, 1e-12);
}

TEST(Entangler, CnotCascadeOrder) {
    // Control s, target s+1 in ascending s: |100> -> |110> -> |111>.
    StateVector psi = StateVector::basis(3, 4);
    apply_entangler(psi, EntanglerKind::kCnotCascade);
    EXPECT_EQ(psi[7], Complex(1.0));
    EXPECT_THROW(entangler_gates(1, EntanglerKind::kCzCascade), std::invalid_argument);
}

TEST(Entangler, PreservesNorm) {
    std::mt19937_64 rng(5);
    const Circuit c = oracle::random_circuit(4, 30, rng);
    StateVector psi(4);
    run_circuit(psi, c);
    apply_entangler(psi, EntanglerKind::kCzCascade);
    apply_entangler(psi, EntanglerKind::kCnotCascade);
    EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-12);
}

TEST(Observables, InnerProductIsConjugateLinearInFirst) {
    std::mt19937_64 rng(9);
    StateVector a(2);
    StateVector b(2);
    run_circuit(a, oracle::random_circuit(2, 8, rng));
    run_circuit(b, oracle::random_circuit(2, 8, rng));
    const Complex ab = inner_product(a, b);
    const Complex ba = inner_product(b, a);
    EXPECT_NEAR(ab.real(), ba.real(), 1e-15);
    EXPECT_NEAR(ab.imag(), -ba.imag(), 1e-15);
    EXPECT_LE(std::abs(ab), 1.0 + 1e-10);
    EXPECT_THROW(inner_product(a, StateVector(3)), std::invalid_argument);
}

TEST(Observables, Probabilities) {
    const double h = std::sqrt(0.5);
    StateVector psi = StateVector::from_amplitudes({h, 0.0, 0.0, h});
    EXPECT_NEAR(prob_first_qubit_zero(psi), 0.5, 1e-15);
    EXPECT_NEAR(prob_all_zero(psi), 0.5, 1e-15);
}

TEST(Kernels, MatrixElementMatchesDense) {
    std::mt19937_64 rng(21);
    const int n = 3;
    StateVector a(n);
    StateVector b(n);
    run_circuit(a, oracle::random_circuit(n, 10, rng));
    run_circuit(b, oracle::random_circuit(n, 10, rng));
    const Mat2 m = {Complex(0.2, 0.1), Complex(-1.0, 0.3), Complex(0.5), Complex(0.0, 2.0)};
    const auto da = oracle::to_dense(a);
    const auto db = oracle::to_dense(b);
    const Complex single = da.adjoint() * oracle::embed(n, 1, oracle::to_dense(m)) * db;
    const Complex got = kernels::matrix_element(a.amplitudes(), b.amplitudes(), n, 1, -1, m);
    EXPECT_NEAR(std::abs(single - got), 0.0, 1e-13);

    // Controlled form: zero on the control = |0> block.
    oracle::Dense p1 = oracle::Dense::Zero(2, 2);
    p1(1, 1) = 1.0;
    std::vector<oracle::Dense> f(n, oracle::Dense::Identity(2, 2));
    f[2] = p1;
    f[0] = oracle::to_dense(m);
    const Complex ctl = da.adjoint() * oracle::kron_all(f) * db;
    const Complex got_ctl = kernels::matrix_element(a.amplitudes(), b.amplitudes(), n, 0, 2, m);
    EXPECT_NEAR(std::abs(ctl - got_ctl), 0.0, 1e-13);
}

}  // namespace
}  // namespace eqk
