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

#ifndef EQK_SVM_H
#define EQK_SVM_H

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eqk/kernel.h"

namespace eqk {

/// Soft-margin SVM over a precomputed kernel:
/// f(x) = sum_i alpha_i y_i k(x_i, x) + b.
struct SvmModel {
    std::vector<double> alphas;
    double bias = 0.0;
    std::vector<int> labels;
    std::vector<std::size_t> support_indices;
    double c = 1.0;
};

struct SvmFit {
    SvmModel model;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<std::string> warnings;
};

inline constexpr double kDefaultSvmC = 1.0;
inline constexpr double kDefaultSvmTol = 1e-5;

/// SMO on the dual with maximal-violating-pair selection (ties go to the
/// lowest index). Stops once the KKT gap is below `tol` or after 10*M*M
/// pair updates. A kernel that is not PSD within 1e-8 is accepted and
/// reported in `warnings`.
SvmFit svm_train(const KernelMatrix &k, std::span<const int> labels, double c = kDefaultSvmC,
                 double tol = kDefaultSvmTol);

double svm_decision(const SvmModel &model, std::span<const double> kernel_row);
/// Sign of the decision value; 0 maps to +1.
int svm_predict(const SvmModel &model, std::span<const double> kernel_row);

/// sum_i alpha_i - 1/2 sum_ij alpha_i alpha_j y_i y_j k_ij.
double dual_objective(const SvmModel &model, const KernelMatrix &k);

/// Fraction of rows of `k` (eval x train) whose prediction matches `labels`.
double svm_accuracy(const SvmModel &model, const KernelMatrix &k, std::span<const int> labels);

/// Text format: M, c and b on one line each, then M lines "index alpha label".
void write_svm_model(std::ostream &out, const SvmModel &model);
SvmModel read_svm_model(std::istream &in);

}  // namespace eqk

#endif
