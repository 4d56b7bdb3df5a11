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

#ifndef EQK_EXPERIMENT_H
#define EQK_EXPERIMENT_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eqk/config.h"
#include "eqk/data.h"
#include "eqk/kernel.h"
#include "eqk/noise.h"
#include "eqk/qnn.h"
#include "eqk/svm.h"

namespace eqk {

struct ResultRow {
    std::string dataset;
    std::string construction;
    std::string entangler;
    int n = 0;
    int layers = 0;
    double tau = 0.0;
    double acc_qnn_train = 0.0;
    double acc_qnn_test = 0.0;
    double acc_eqk_train = 0.0;
    double acc_eqk_test = 0.0;
    std::uint64_t seed = 0;
    double wall_time_seconds = 0.0;

    /// Equality on every column except wall time.
    bool same_data(const ResultRow &other) const;
};

struct NoiseRow {
    std::string dataset;
    int layers = 0;
    double tau = 0.0;
    double acc_qnn = 0.0;
    double acc_eqk = 0.0;
    double relative_improvement = 0.0;
    std::uint64_t seed = 0;

    bool operator==(const NoiseRow &) const = default;
};

/// The generated dataset and its train/test split. The split is seeded with
/// dataset.seed + 1 so that it is independent of the sampling stream.
struct ExperimentData {
    Dataset full;
    Dataset train;
    Dataset test;
};

ExperimentData prepare_data(const ExperimentConfig &cfg);

struct EqkEvaluation {
    SvmFit fit;
    double acc_train = 0.0;
    double acc_test = 0.0;
};

/// Gram on `train`, SVM fit, then train and test accuracy of the kernel model.
EqkEvaluation evaluate_eqk(const EqkSpec &spec, const QnnParams &params, std::span<const DataPoint> train,
                           std::span<const DataPoint> test, double svm_c, double svm_tol);

/// Full pipeline for every n in [n_min, n_max]. n-to-n trains the QNN
/// iteratively and uses stage n as the feature map. one-to-n trains a single
/// qubit QNN once and widens the kernel; n starts at max(2, n_min) there.
/// `log`, when given, receives one progress line per stage.
std::vector<ResultRow> run_experiment(const ExperimentConfig &cfg, std::ostream *log = nullptr);

/// Noisy 1-to-2 CNOT study. For every L in noise.layers a single-qubit QNN
/// is trained noiselessly (noise.epochs, noise.learning_rate) and both the
/// QNN and the kernel model are evaluated on the test split at every tau.
std::vector<NoiseRow> run_noise_sweep(const ExperimentConfig &cfg, std::ostream *log = nullptr);

inline constexpr std::string_view kResultHeader =
    "dataset,construction,entangler,n,L,tau,acc_qnn_train,acc_qnn_test,acc_eqk_train,acc_eqk_test,seed,"
    "wall_time_seconds";
inline constexpr std::string_view kNoiseHeader = "dataset,L,tau,acc_qnn,acc_eqk,relative_improvement,seed";

/// Appends to `path` when it already starts with the matching header,
/// otherwise (re)creates it with the header first. Doubles are written in
/// shortest round-trip form.
void emit_results(std::span<const ResultRow> rows, const std::filesystem::path &path);
void emit_noise_results(std::span<const NoiseRow> rows, const std::filesystem::path &path);

void write_results(std::ostream &out, std::span<const ResultRow> rows, bool header = true);
void write_noise_results(std::ostream &out, std::span<const NoiseRow> rows, bool header = true);
std::vector<ResultRow> read_results(std::istream &in);
std::vector<NoiseRow> read_noise_results(std::istream &in);

}  // namespace eqk

#endif
