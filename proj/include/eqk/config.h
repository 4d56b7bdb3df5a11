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

#ifndef EQK_CONFIG_H
#define EQK_CONFIG_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqk/data.h"
#include "eqk/kernel.h"
#include "eqk/qnn.h"

namespace eqk {

/// Invalid or inconsistent experiment configuration. `field` names the
/// offending key (e.g. "model.n_max").
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string field, const std::string &message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string &field() const { return field_; }

   private:
    std::string field_;
};

struct ExperimentConfig {
    struct DatasetSection {
        DatasetName name = DatasetName::kCorners;
        std::size_t total_points = 1000;
        std::uint64_t seed = 0;
        std::size_t n_train = 500;
        std::size_t n_test = 500;
    } dataset;

    struct ModelSection {
        int layers = 7;
        int n_min = 1;
        int n_max = 8;
    } model;

    struct TrainSection {
        double lr_first = 0.05;
        int epochs_first = 30;
        double lr_rest = 0.005;
        int epochs_rest = 10;
        int batch_size = 24;
        std::uint64_t init_seed = 0;
    } train;

    struct KernelSection {
        EqkKind construction = EqkKind::kNToN;
        EntanglerKind entangler = EntanglerKind::kCnotCascade;
        double svm_c = 1.0;
        double svm_tol = 1e-5;
    } kernel;

    struct NoiseSection {
        bool enabled = false;
        std::vector<double> taus = {0.0, 0.005, 0.010, 0.015, 0.020, 0.025, 0.030};
        std::vector<int> layers = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        int epochs = 2;
        double learning_rate = 0.05;
    } noise;

    /// Throws ConfigError naming the first violated field.
    void validate() const;

    TrainConfig first_stage() const;
    TrainConfig later_stages() const;
};

/// Flat "section.key = value" lines; '#' starts a comment; lists are comma
/// separated. Unknown keys are errors. The result is validated.
ExperimentConfig parse_config(std::istream &in);
ExperimentConfig load_config(const std::filesystem::path &path);
void write_config(std::ostream &out, const ExperimentConfig &cfg);

std::string_view to_string(EqkKind kind);
std::string_view to_string(EntanglerKind kind);

}  // namespace eqk

#endif
