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

#ifndef EQK_SIMULATOR_H
#define EQK_SIMULATOR_H

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace eqk {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

inline constexpr int kMaxQubits = 12;

/// Euler angles of a generic SU(2) element, U = Rz(c) Ry(b) Rz(a).
struct Su2Angles {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    bool operator==(const Su2Angles &) const = default;
};

enum class EntanglerKind { kCnotCascade, kCzCascade };

/// Pure n-qubit state. Qubit 0 is the leftmost tensor factor, i.e. the most
/// significant bit of the basis-state index.
class StateVector {
   public:
    /// |0...0> on `n_qubits` qubits.
    explicit StateVector(int n_qubits);

    /// Takes ownership of `amplitudes`; the length must be a power of two and
    /// the squared norm must be 1 within 1e-10.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    /// Computational basis state |index>.
    static StateVector basis(int n_qubits, std::size_t index);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    std::span<Complex> amplitudes() { return amps_; }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }
    double norm_squared() const;

   private:
    StateVector(int n_qubits, std::vector<Complex> amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {}

    int n_qubits_;
    std::vector<Complex> amps_;
};

Mat2 su2_matrix(const Su2Angles &angles);
Mat2 rz_matrix(double t);
Mat2 ry_matrix(double t);
Mat2 identity2();
Mat2 matmul(const Mat2 &lhs, const Mat2 &rhs);
Mat2 dagger(const Mat2 &m);
Mat2 conjugate(const Mat2 &m);
Mat2 transpose(const Mat2 &m);

enum class GateKind {
    kSingle,      // 2x2 matrix on `target`
    kControlled,  // 2x2 matrix on `target` when `control` is |1>
    kCnot,
    kCz,
};

/// One circuit instruction. `tag` is a caller-defined label that the
/// simulator never reads (the QNN uses it to locate trainable angles).
struct Gate {
    GateKind kind = GateKind::kSingle;
    int target = 0;
    int control = -1;
    Mat2 matrix = identity2();
    int tag = -1;

    static Gate single(int target, const Mat2 &m, int tag = -1);
    static Gate controlled(int control, int target, const Mat2 &m, int tag = -1);
    static Gate cnot(int control, int target);
    static Gate cz(int control, int target);

    Gate adjoint() const;
};

using Circuit = std::vector<Gate>;

/// Reversed gate list with every gate daggered.
Circuit adjoint(std::span<const Gate> circuit);

/// Gates of the entangler cascade: control s, target s+1, for ascending s.
Circuit entangler_gates(int n_qubits, EntanglerKind kind);

// Raw kernels over an amplitude buffer holding `n_qubits` qubits. The
// density-matrix code reuses these on vectorized operators.
namespace kernels {
void apply_single(std::span<Complex> amps, int n_qubits, int qubit, const Mat2 &u);
void apply_controlled(std::span<Complex> amps, int n_qubits, int control, int target, const Mat2 &u);
void apply_gate(std::span<Complex> amps, int n_qubits, const Gate &gate);

/// <lhs| M |rhs> where M is `m` on `target` (restricted to control = |1> when
/// control >= 0, zero elsewhere).
Complex matrix_element(std::span<const Complex> lhs, std::span<const Complex> rhs, int n_qubits, int target,
                       int control, const Mat2 &m);
}  // namespace kernels

// In-place gate application on a StateVector.
void apply_single(StateVector &state, int qubit, const Mat2 &u);
void apply_controlled(StateVector &state, int control, int target, const Mat2 &u);
void apply_entangler(StateVector &state, EntanglerKind kind);
void apply_gate(StateVector &state, const Gate &gate);
void run_circuit(StateVector &state, std::span<const Gate> circuit);

Complex inner_product(const StateVector &a, const StateVector &b);
double prob_first_qubit_zero(const StateVector &state);
double prob_all_zero(const StateVector &state);

}  // namespace eqk

#endif
