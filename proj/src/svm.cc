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

#include "eqk/svm.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace eqk {

namespace {

constexpr double kTau = 1e-12;

bool in_up(double alpha, int y, double c) { return (y == 1 && alpha < c) || (y == -1 && alpha > 0.0); }
bool in_low(double alpha, int y, double c) { return (y == -1 && alpha < c) || (y == 1 && alpha > 0.0); }

void validate(const KernelMatrix &k, std::span<const int> labels, double c, double tol) {
    if (!k.square() || k.size() == 0) throw std::invalid_argument("svm_train: kernel must be non-empty and square");
    if (labels.size() != k.size()) throw std::invalid_argument("svm_train: label count does not match kernel size");
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("svm_train: c must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("svm_train: tol must be positive");
    bool pos = false;
    bool neg = false;
    for (int y : labels) {
        if (y == 1) {
            pos = true;
        } else if (y == -1) {
            neg = true;
        } else {
            throw std::invalid_argument("svm_train: labels must be +1 or -1");
        }
    }
    if (!pos || !neg) throw std::invalid_argument("svm_train: unsupported input, both classes are required");
    for (std::size_t i = 0; i < k.size(); ++i) {
        for (std::size_t j = i + 1; j < k.size(); ++j) {
            if (std::abs(k(i, j) - k(j, i)) > 1e-8) throw std::invalid_argument("svm_train: kernel is not symmetric");
        }
    }
}

}  // namespace

SvmFit svm_train(const KernelMatrix &k, std::span<const int> labels, double c, double tol) {
    validate(k, labels, c, tol);
    const std::size_t m = k.size();

    SvmFit fit;
    if (double lam = min_eigenvalue(k); lam < -1e-8) {
        fit.warnings.push_back("kernel is not positive semidefinite (min eigenvalue " + std::to_string(lam) + ")");
    }

    std::vector<double> alpha(m, 0.0);
    std::vector<double> grad(m, -1.0);  // gradient of 1/2 a'Qa - e'a
    auto q = [&](std::size_t i, std::size_t j) { return labels[i] * labels[j] * k(i, j); };

    const std::size_t max_iter = 10 * m * m;
    while (fit.iterations < max_iter) {
        std::size_t i = m;
        std::size_t j = m;
        double gmax = -std::numeric_limits<double>::infinity();
        double gmin = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < m; ++t) {
            const double v = -labels[t] * grad[t];
            if (in_up(alpha[t], labels[t], c) && v > gmax) {
                gmax = v;
                i = t;
            }
            if (in_low(alpha[t], labels[t], c) && v < gmin) {
                gmin = v;
                j = t;
            }
        }
        if (i == m || j == m || gmax - gmin < tol) {
            fit.converged = true;
            break;
        }
        ++fit.iterations;

        const double old_i = alpha[i];
        const double old_j = alpha[j];
        if (labels[i] != labels[j]) {
            double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
            if (quad <= 0.0) quad = kTau;
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if (diff > 0.0) {
                if (alpha[i] > c) {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if (alpha[j] > c) {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
            if (quad <= 0.0) quad = kTau;
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > c) {
                if (alpha[i] > c) {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if (alpha[j] < 0.0) {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if (sum > c) {
                if (alpha[j] > c) {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }

        const double di = alpha[i] - old_i;
        const double dj = alpha[j] - old_j;
        for (std::size_t t = 0; t < m; ++t) grad[t] += q(t, i) * di + q(t, j) * dj;
    }
    if (!fit.converged) {
        fit.warnings.push_back("SMO stopped at the iteration bound before reaching tolerance");
    }

    // b = -y_i G_i on free vectors; otherwise the midpoint of the feasible interval.
    double free_sum = 0.0;
    std::size_t free_count = 0;
    double lb = -std::numeric_limits<double>::infinity();
    double ub = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < m; ++t) {
        const double v = -labels[t] * grad[t];
        if (alpha[t] > 0.0 && alpha[t] < c) {
            free_sum += v;
            ++free_count;
        } else if ((labels[t] == 1) == (alpha[t] == 0.0)) {
            lb = std::max(lb, v);
        } else {
            ub = std::min(ub, v);
        }
    }
    SvmModel &model = fit.model;
    if (free_count > 0) {
        model.bias = free_sum / static_cast<double>(free_count);
    } else if (std::isfinite(lb) && std::isfinite(ub)) {
        model.bias = 0.5 * (lb + ub);
    } else {
        model.bias = std::isfinite(lb) ? lb : (std::isfinite(ub) ? ub : 0.0);
    }
    model.alphas = std::move(alpha);
    model.labels.assign(labels.begin(), labels.end());
    model.c = c;
    for (std::size_t t = 0; t < m; ++t) {
        if (model.alphas[t] > 0.0) model.support_indices.push_back(t);
    }
    return fit;
}

double svm_decision(const SvmModel &model, std::span<const double> kernel_row) {
    if (kernel_row.size() != model.alphas.size()) {
        throw std::invalid_argument("svm_decision: kernel row length does not match the model");
    }
    double f = model.bias;
    for (std::size_t i = 0; i < kernel_row.size(); ++i) {
        if (model.alphas[i] != 0.0) f += model.alphas[i] * model.labels[i] * kernel_row[i];
    }
    return f;
}

int svm_predict(const SvmModel &model, std::span<const double> kernel_row) {
    return svm_decision(model, kernel_row) >= 0.0 ? 1 : -1;
}

double dual_objective(const SvmModel &model, const KernelMatrix &k) {
    const std::size_t m = model.alphas.size();
    if (!k.square() || k.size() != m || model.labels.size() != m) {
        throw std::invalid_argument("dual_objective: size mismatch");
    }
    double linear = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        linear += model.alphas[i];
        if (model.alphas[i] == 0.0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            quad += model.alphas[i] * model.alphas[j] * model.labels[i] * model.labels[j] * k(i, j);
        }
    }
    return linear - 0.5 * quad;
}

double svm_accuracy(const SvmModel &model, const KernelMatrix &k, std::span<const int> labels) {
    if (k.rows() != labels.size() || k.rows() == 0) {
        throw std::invalid_argument("svm_accuracy: label count does not match kernel rows");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < k.rows(); ++i) hits += svm_predict(model, k.row(i)) == labels[i];
    return static_cast<double>(hits) / static_cast<double>(k.rows());
}

void write_svm_model(std::ostream &out, const SvmModel &model) {
    out << model.alphas.size() << '\n' << std::setprecision(17) << model.c << '\n' << model.bias << '\n';
    for (std::size_t i = 0; i < model.alphas.size(); ++i) {
        out << i << ' ' << model.alphas[i] << ' ' << model.labels[i] << '\n';
    }
}

SvmModel read_svm_model(std::istream &in) {
    std::size_t m = 0;
    SvmModel model;
    if (!(in >> m >> model.c >> model.bias)) throw std::runtime_error("read_svm_model: bad header");
    model.alphas.assign(m, 0.0);
    model.labels.assign(m, 1);
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t idx = 0;
        double alpha = 0.0;
        int y = 0;
        if (!(in >> idx >> alpha >> y)) throw std::runtime_error("read_svm_model: truncated record");
        if (idx >= m || (y != 1 && y != -1)) throw std::runtime_error("read_svm_model: bad record");
        model.alphas[idx] = alpha;
        model.labels[idx] = y;
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (model.alphas[i] > 0.0) model.support_indices.push_back(i);
    }
    return model;
}

}  // namespace eqk
