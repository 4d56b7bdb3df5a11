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

#include "eqk/kernel.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "eqk/parallel.h"

namespace eqk {

int EqkSpec::width(const QnnParams &params) const {
    if (kind == EqkKind::kNToN) {
        if (n_qubits != 0 && n_qubits != params.n_qubits()) {
            throw std::invalid_argument("n-to-n kernel width " + std::to_string(n_qubits) +
                                        " does not match QNN width " + std::to_string(params.n_qubits()));
        }
        return params.n_qubits();
    }
    if (params.n_qubits() != 1) {
        throw std::invalid_argument("1-to-n kernel needs single-qubit params, got " +
                                    std::to_string(params.n_qubits()) + " qubits");
    }
    if (n_qubits < 2 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("1-to-n kernel width must be in [2, " + std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(n_qubits));
    }
    return n_qubits;
}

Circuit eqk_circuit(const EqkSpec &spec, const QnnParams &params, const Features &x) {
    const int n = spec.width(params);
    if (spec.kind == EqkKind::kNToN) return qnn_circuit(params, x);

    const Mat2 enc = su2_matrix(encode_gate(x));
    const Circuit ent = entangler_gates(n, spec.entangler);
    Circuit c;
    for (int l = 0; l + 1 < params.layers(); ++l) {
        const Mat2 u = su2_matrix(params.theta(l, 0));
        for (int r = 0; r < n; ++r) c.push_back(Gate::single(r, enc));
        for (int r = 0; r < n; ++r) c.push_back(Gate::single(r, u));
        c.insert(c.end(), ent.begin(), ent.end());
    }
    // The last trained layer is dropped: it would cancel in the overlap.
    for (int r = 0; r < n; ++r) c.push_back(Gate::single(r, enc));
    return c;
}

StateVector eqk_feature_state(const EqkSpec &spec, const QnnParams &params, const Features &x) {
    StateVector psi(spec.width(params));
    run_circuit(psi, eqk_circuit(spec, params, x));
    return psi;
}

double kernel_value(const EqkSpec &spec, const QnnParams &params, const Features &xi, const Features &xj) {
    return std::norm(inner_product(eqk_feature_state(spec, params, xi), eqk_feature_state(spec, params, xj)));
}

double kernel_value_circuit(const EqkSpec &spec, const QnnParams &params, const Features &xi,
                            const Features &xj) {
    StateVector psi(spec.width(params));
    run_circuit(psi, eqk_circuit(spec, params, xj));
    run_circuit(psi, adjoint(eqk_circuit(spec, params, xi)));
    return prob_all_zero(psi);
}

std::vector<StateVector> feature_states(const EqkSpec &spec, const QnnParams &params,
                                        std::span<const Features> points) {
    const int n = spec.width(params);
    std::vector<StateVector> states(points.size(), StateVector(n));
    parallel_for(points.size(), [&](std::size_t i) { run_circuit(states[i], eqk_circuit(spec, params, points[i])); });
    return states;
}

KernelMatrix gram_from_states(std::span<const StateVector> states) {
    if (states.empty()) throw std::invalid_argument("gram_matrix: empty point set");
    const std::size_t m = states.size();
    KernelMatrix k(m);
    parallel_for(m, [&](std::size_t i) {
        k(i, i) = 1.0;
        for (std::size_t j = i + 1; j < m; ++j) k(i, j) = std::norm(inner_product(states[i], states[j]));
    });
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) k(j, i) = k(i, j);
    }
    return k;
}

KernelMatrix gram_matrix(const EqkSpec &spec, const QnnParams &params, std::span<const Features> points) {
    if (points.empty()) throw std::invalid_argument("gram_matrix: empty point set");
    return gram_from_states(feature_states(spec, params, points));
}

KernelMatrix cross_from_states(std::span<const StateVector> eval, std::span<const StateVector> train) {
    KernelMatrix k(eval.size(), train.size());
    parallel_for(eval.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < train.size(); ++j) k(i, j) = std::norm(inner_product(eval[i], train[j]));
    });
    return k;
}

KernelMatrix cross_kernel(const EqkSpec &spec, const QnnParams &params, std::span<const Features> eval,
                          std::span<const Features> train) {
    return cross_from_states(feature_states(spec, params, eval), feature_states(spec, params, train));
}

namespace {

void require_same_square(const KernelMatrix &a, const KernelMatrix &b, const char *what) {
    if (!a.square() || !b.square() || a.size() != b.size()) {
        throw std::invalid_argument(std::string(what) + ": kernel size mismatch");
    }
}

double frobenius_dot(const KernelMatrix &a, const KernelMatrix &b) {
    double total = 0.0;
    auto x = a.values();
    auto y = b.values();
    for (std::size_t i = 0; i < x.size(); ++i) total += x[i] * y[i];
    return total;
}

}  // namespace

double kernel_alignment(const KernelMatrix &ka, const KernelMatrix &kb) {
    require_same_square(ka, kb, "kernel_alignment");
    // tr(A B) = sum_ij A_ij B_ji; both are symmetric so this is the Frobenius product.
    double ab = 0.0;
    for (std::size_t i = 0; i < ka.size(); ++i) {
        for (std::size_t j = 0; j < ka.size(); ++j) ab += ka(i, j) * kb(j, i);
    }
    double aa = frobenius_dot(ka, ka);
    double bb = frobenius_dot(kb, kb);
    if (aa == 0.0 || bb == 0.0) throw std::invalid_argument("kernel_alignment: zero matrix");
    return ab / std::sqrt(aa * bb);
}

double target_alignment(const KernelMatrix &k, std::span<const int> labels) {
    if (!k.square() || labels.size() != k.size()) {
        throw std::invalid_argument("target_alignment: label count does not match kernel size");
    }
    double num = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        for (std::size_t j = 0; j < k.size(); ++j) {
            num += labels[i] * labels[j] * k(i, j);
            sq += k(i, j) * k(i, j);
        }
    }
    if (sq == 0.0) throw std::invalid_argument("target_alignment: zero matrix");
    return num / (static_cast<double>(k.size()) * std::sqrt(sq));
}

KernelMatrix combine_linear(std::span<const KernelMatrix> kernels, std::span<const double> weights) {
    if (kernels.empty() || kernels.size() != weights.size()) {
        throw std::invalid_argument("combine_linear: need one weight per kernel");
    }
    KernelMatrix out(kernels[0].rows(), kernels[0].cols());
    for (std::size_t r = 0; r < kernels.size(); ++r) {
        if (kernels[r].rows() != out.rows() || kernels[r].cols() != out.cols()) {
            throw std::invalid_argument("combine_linear: kernel size mismatch");
        }
        if (!(weights[r] >= 0.0)) throw std::invalid_argument("combine_linear: negative weight");
        for (std::size_t i = 0; i < out.rows(); ++i) {
            for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += weights[r] * kernels[r](i, j);
        }
    }
    return out;
}

KernelMatrix combine_product(std::span<const KernelMatrix> kernels) {
    if (kernels.empty()) throw std::invalid_argument("combine_product: no kernels");
    KernelMatrix out = kernels[0];
    for (std::size_t r = 1; r < kernels.size(); ++r) {
        if (kernels[r].rows() != out.rows() || kernels[r].cols() != out.cols()) {
            throw std::invalid_argument("combine_product: kernel size mismatch");
        }
        for (std::size_t i = 0; i < out.rows(); ++i) {
            for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= kernels[r](i, j);
        }
    }
    return out;
}

double min_eigenvalue(const KernelMatrix &k) {
    if (!k.square() || k.size() == 0) throw std::invalid_argument("min_eigenvalue: need a non-empty square matrix");
    const auto m = static_cast<Eigen::Index>(k.size());
    Eigen::MatrixXd a(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) a(i, j) = 0.5 * (k(i, j) + k(j, i));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

KernelReport inspect_kernel(const KernelMatrix &k) {
    if (!k.square()) throw std::invalid_argument("inspect_kernel: matrix is not square");
    KernelReport r;
    for (std::size_t i = 0; i < k.size(); ++i) {
        r.max_diagonal_deviation = std::max(r.max_diagonal_deviation, std::abs(k(i, i) - 1.0));
        for (std::size_t j = i + 1; j < k.size(); ++j) {
            r.max_asymmetry = std::max(r.max_asymmetry, std::abs(k(i, j) - k(j, i)));
        }
    }
    r.min_eigenvalue = min_eigenvalue(k);
    return r;
}

void write_kernel_matrix(std::ostream &out, const KernelMatrix &k) {
    if (k.square()) {
        out << k.size() << '\n';
    } else {
        out << k.rows() << ' ' << k.cols() << '\n';
    }
    out << std::setprecision(17);
    for (std::size_t i = 0; i < k.rows(); ++i) {
        for (std::size_t j = 0; j < k.cols(); ++j) {
            if (j) out << ' ';
            out << k(i, j);
        }
        out << '\n';
    }
}

KernelMatrix read_kernel_matrix(std::istream &in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("read_kernel_matrix: missing header");
    std::istringstream hs(header);
    std::size_t rows = 0;
    std::size_t cols = 0;
    if (!(hs >> rows) || rows == 0) throw std::runtime_error("read_kernel_matrix: bad size header");
    if (!(hs >> cols)) cols = rows;
    KernelMatrix k(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (!(in >> k(i, j))) throw std::runtime_error("read_kernel_matrix: truncated matrix");
        }
    }
    return k;
}

}  // namespace eqk
