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

#ifndef EQK_NOISE_H
#define EQK_NOISE_H

#include <array>
#include <span>
#include <vector>

#include "eqk/kernel.h"
#include "eqk/qnn.h"
#include "eqk/simulator.h"

namespace eqk {

/// Mixed n-qubit state, row-major 2^n x 2^n. Entry (i, j) sits at
/// i * 2^n + j, so the buffer is also a 2n-qubit vector whose first n
/// qubits index rows; gates reuse the statevector kernels on it.
class DensityMatrix {
   public:
    /// |0...0><0...0|.
    explicit DensityMatrix(int n_qubits);
    static DensityMatrix from_state(const StateVector &psi);
    /// Operator with the given entries; no physicality checks.
    static DensityMatrix from_entries(int n_qubits, std::vector<Complex> entries);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return std::size_t{1} << n_qubits_; }
    Complex &operator()(std::size_t i, std::size_t j) { return entries_[i * dim() + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const { return entries_[i * dim() + j]; }
    std::span<Complex> entries() { return entries_; }
    std::span<const Complex> entries() const { return entries_; }

    Complex trace() const;
    double max_hermitian_deviation() const;
    double min_eigenvalue() const;
    /// <psi| rho |psi>.
    double expectation(const StateVector &psi) const;
    double prob_all_zero() const { return (*this)(0, 0).real(); }
    double prob_first_qubit_zero() const;

    /// rho -> A rho B for 2x2 matrices acting on `qubit`.
    void sandwich(int qubit, const Mat2 &left, const Mat2 &right);
    /// rho -> G rho G^dagger.
    void apply_unitary(const Gate &gate);

   private:
    DensityMatrix(int n_qubits, std::vector<Complex> entries) : n_qubits_(n_qubits), entries_(std::move(entries)) {}

    int n_qubits_;
    std::vector<Complex> entries_;
};

struct NoiseParams {
    double gamma = 0.0;  // amplitude damping probability
    double alpha = 0.0;  // phase flip probability
};

/// Worst-case superconducting-hardware anchors.
inline constexpr double kReferenceGamma = 0.001;
inline constexpr double kReferenceAlpha = 0.0005;

using KrausPair = std::array<Mat2, 2>;

KrausPair amplitude_damping_kraus(double gamma);
KrausPair phase_flip_kraus(double alpha);
/// gamma = alpha = tau.
NoiseParams tau_noise(double tau);

/// rho -> sum_k K rho K^dagger on one qubit.
void apply_channel(DensityMatrix &rho, int qubit, std::span<const Mat2> kraus);

/// Unitary conjugation, then amplitude damping and phase flip on every
/// qubit the gate touches (target, and control for two-qubit gates).
void apply_gate_noisy(DensityMatrix &rho, const Gate &gate, const NoiseParams &noise);
DensityMatrix run_noisy(int n_qubits, std::span<const Gate> circuit, const NoiseParams &noise);

/// P(qubit 0 = |0>) at the end of the noisy QNN circuit.
double noisy_qnn_prob(const QnnParams &params, const Features &x, const NoiseParams &noise);
double noisy_qnn_accuracy(const QnnParams &params, std::span<const DataPoint> data, const NoiseParams &noise);

/// P(0...0) after noisy S(xj) followed by noisy S(xi)^dagger. Not symmetric.
double noisy_kernel_value_directed(const EqkSpec &spec, const QnnParams &params, const Features &xi,
                                   const Features &xj, const NoiseParams &noise);
/// Mean of the (i, j) and (j, i) directed values.
double noisy_kernel_value(const EqkSpec &spec, const QnnParams &params, const Features &xi, const Features &xj,
                          const NoiseParams &noise);

/// Per-point pieces of the noisy kernel circuit. The directed value factors
/// as tr(E_i rho_j): rho_j is the noisy output of S(xj) and E_i is the
/// Heisenberg-picture image of |0...0><0...0| under the noisy S(xi)^dagger.
struct NoisyFeatures {
    std::vector<DensityMatrix> states;
    std::vector<DensityMatrix> effects;
};

NoisyFeatures noisy_features(const EqkSpec &spec, const QnnParams &params, std::span<const Features> points,
                             const NoiseParams &noise);

/// Symmetrized noisy Gram matrix; the diagonal is left as computed.
KernelMatrix noisy_gram(const NoisyFeatures &train);
/// rows = eval points, cols = training points, symmetrized per pair.
KernelMatrix noisy_cross(const NoisyFeatures &eval, const NoisyFeatures &train);

/// (acc_combined - acc_qnn) / acc_qnn.
double relative_improvement(double acc_combined, double acc_qnn);

}  // namespace eqk

#endif
