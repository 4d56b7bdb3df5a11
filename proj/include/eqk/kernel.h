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

#ifndef EQK_KERNEL_H
#define EQK_KERNEL_H

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "eqk/qnn.h"
#include "eqk/simulator.h"

namespace eqk {

enum class EqkKind {
    kNToN,   // the trained n-qubit QNN is the feature map
    kOneToN, // a trained single-qubit QNN replicated on n qubits with entanglers
};

struct EqkSpec {
    EqkKind kind = EqkKind::kNToN;
    /// Width of the feature map. For kNToN, 0 means "use the params' width";
    /// a non-zero value must match it.
    int n_qubits = 0;
    EntanglerKind entangler = EntanglerKind::kCnotCascade;

    /// Number of qubits the feature state lives on for these params.
    int width(const QnnParams &params) const;
};

/// Dense M x N real matrix, row-major. Gram matrices are square.
class KernelMatrix {
   public:
    KernelMatrix() = default;
    explicit KernelMatrix(std::size_t size) : KernelMatrix(size, size) {}
    KernelMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t size() const { return rows_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> values() const { return data_; }

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Gate list that prepares the feature state from |0...0>.
Circuit eqk_circuit(const EqkSpec &spec, const QnnParams &params, const Features &x);
StateVector eqk_feature_state(const EqkSpec &spec, const QnnParams &params, const Features &x);

/// |<phi(xi)|phi(xj)>|^2 from the two feature states.
double kernel_value(const EqkSpec &spec, const QnnParams &params, const Features &xi, const Features &xj);

/// Same quantity read as P(0...0) after running S(xj) then S(xi)^dagger.
double kernel_value_circuit(const EqkSpec &spec, const QnnParams &params, const Features &xi, const Features &xj);

/// Feature states for a point set, evaluated once and reused for Gram and
/// cross-kernel rows.
std::vector<StateVector> feature_states(const EqkSpec &spec, const QnnParams &params,
                                        std::span<const Features> points);

/// Upper triangle evaluated and mirrored; diagonal set to exactly 1.
KernelMatrix gram_matrix(const EqkSpec &spec, const QnnParams &params, std::span<const Features> points);
KernelMatrix gram_from_states(std::span<const StateVector> states);

/// rows = eval points, cols = training points.
KernelMatrix cross_kernel(const EqkSpec &spec, const QnnParams &params, std::span<const Features> eval,
                          std::span<const Features> train);
KernelMatrix cross_from_states(std::span<const StateVector> eval, std::span<const StateVector> train);

double kernel_alignment(const KernelMatrix &ka, const KernelMatrix &kb);
double target_alignment(const KernelMatrix &k, std::span<const int> labels);

/// Entrywise weighted sum. The diagonal is not renormalized.
KernelMatrix combine_linear(std::span<const KernelMatrix> kernels, std::span<const double> weights);
/// Entrywise (Hadamard) product.
KernelMatrix combine_product(std::span<const KernelMatrix> kernels);

double min_eigenvalue(const KernelMatrix &k);

struct KernelReport {
    double max_asymmetry = 0.0;
    double max_diagonal_deviation = 0.0;
    double min_eigenvalue = 0.0;

    bool symmetric(double tol = 1e-10) const { return max_asymmetry <= tol; }
    bool unit_diagonal(double tol = 1e-10) const { return max_diagonal_deviation <= tol; }
    bool psd(double tol = 1e-8) const { return min_eigenvalue >= -tol; }
    bool valid() const { return symmetric() && unit_diagonal() && psd(); }
};

KernelReport inspect_kernel(const KernelMatrix &k);

/// Text format: "M" (or "R C" for non-square) then one row per line,
/// 17 significant digits, space separated.
void write_kernel_matrix(std::ostream &out, const KernelMatrix &k);
KernelMatrix read_kernel_matrix(std::istream &in);

}  // namespace eqk

#endif
