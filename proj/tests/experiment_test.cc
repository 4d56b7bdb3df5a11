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

#include "eqk/experiment.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqk/config.h"

namespace eqk {
namespace {

ExperimentConfig Parse(const std::string &text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::string ErrorField(const std::string &text) {
    try {
        Parse(text);
    } catch (const ConfigError &e) {
        return e.field();
    }
    return "";
}

// Small enough to run in a second.
ExperimentConfig SmallConfig() {
    return Parse(
        "dataset.name = corners\n"
        "dataset.total_points = 160\n"
        "dataset.n_train = 80\n"
        "dataset.n_test = 80\n"
        "dataset.seed = 3\n"
        "model.layers = 3\n"
        "model.n_max = 3\n"
        "train.epochs_first = 4\n"
        "train.epochs_rest = 2\n"
        "train.batch_size = 16\n");
}

std::filesystem::path TempPath(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("eqk_experiment_test_" + name);
}

TEST(Config, Defaults) {
    const ExperimentConfig cfg = Parse("");
    EXPECT_EQ(cfg.dataset.name, DatasetName::kCorners);
    EXPECT_EQ(cfg.dataset.n_train, 500u);
    EXPECT_EQ(cfg.model.layers, 7);
    EXPECT_EQ(cfg.train.batch_size, 24);
    EXPECT_DOUBLE_EQ(cfg.train.lr_first, 0.05);
    EXPECT_DOUBLE_EQ(cfg.train.lr_rest, 0.005);
    EXPECT_EQ(cfg.train.epochs_first, 30);
    EXPECT_EQ(cfg.train.epochs_rest, 10);
    EXPECT_EQ(cfg.noise.taus, (std::vector<double>{0.0, 0.005, 0.010, 0.015, 0.020, 0.025, 0.030}));
}

TEST(Config, ParsesEveryKey) {
    const auto cfg = Parse(
        "# comment\n"
        "dataset.name = spiral   # trailing\n"
        "kernel.construction = one_to_n\n"
        "kernel.entangler = cz\n"
        "kernel.svm_c = 2.5\n"
        "noise.enabled = true\n"
        "noise.taus = 0, 0.01\n"
        "noise.layers = 1,3\n"
        "model.n_max = 4\n");
    EXPECT_EQ(cfg.dataset.name, DatasetName::kSpiral);
    EXPECT_EQ(cfg.kernel.construction, EqkKind::kOneToN);
    EXPECT_EQ(cfg.kernel.entangler, EntanglerKind::kCzCascade);
    EXPECT_DOUBLE_EQ(cfg.kernel.svm_c, 2.5);
    EXPECT_TRUE(cfg.noise.enabled);
    EXPECT_EQ(cfg.noise.taus, (std::vector<double>{0.0, 0.01}));
    EXPECT_EQ(cfg.noise.layers, (std::vector<int>{1, 3}));
}

TEST(Config, WriteThenParseIsIdentity) {
    auto cfg = SmallConfig();
    cfg.noise.taus = {0.0, 0.125};
    std::stringstream ss;
    write_config(ss, cfg);
    const auto back = parse_config(ss);
    std::stringstream again;
    write_config(again, back);
    EXPECT_EQ(ss.str(), again.str());
}

TEST(Config, ErrorsNameTheField) {
    EXPECT_EQ(ErrorField("model.layers = 7\nmodel.n_max = 9\n"), "model.n_max");
    EXPECT_EQ(ErrorField("train.batch_size = 0\n"), "train.batch_size");
    EXPECT_EQ(ErrorField("noise.taus = 0, 1.5\n"), "noise.taus");
    EXPECT_EQ(ErrorField("model.bogus = 1\n"), "model.bogus");
    EXPECT_EQ(ErrorField("dataset.name = moons\n"), "dataset.name");
    EXPECT_EQ(ErrorField("train.lr_first = fast\n"), "train.lr_first");
    EXPECT_EQ(ErrorField("dataset.n_train = 900\n"), "dataset.n_test");
    EXPECT_EQ(ErrorField("kernel.svm_c = -1\n"), "kernel.svm_c");
    EXPECT_EQ(ErrorField("model.n_min = 3\nmodel.n_max = 2\n"), "model.n_max");
    EXPECT_EQ(ErrorField("kernel.construction = one_to_n\nmodel.n_max = 1\n"), "model.n_max");
    EXPECT_EQ(ErrorField("dataset.seed = 1\ndataset.seed = 2\n"), "dataset.seed");
    EXPECT_EQ(ErrorField("just words\n"), "line 1");
    EXPECT_THROW(load_config("/nonexistent/eqk.cfg"), ConfigError);
}

TEST(RunExperiment, NToNRowsAreDeterministic) {
    const auto cfg = SmallConfig();
    const auto a = run_experiment(cfg);
    const auto b = run_experiment(cfg);
    ASSERT_EQ(a.size(), 3u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_TRUE(a[i].same_data(b[i]));
        EXPECT_EQ(a[i].n, static_cast<int>(i) + 1);
        EXPECT_EQ(a[i].construction, "n_to_n");
        EXPECT_EQ(a[i].seed, 3u);
        for (double acc : {a[i].acc_qnn_train, a[i].acc_qnn_test, a[i].acc_eqk_train, a[i].acc_eqk_test}) {
            EXPECT_GE(acc, 0.0);
            EXPECT_LE(acc, 1.0);
        }
        // The kernel model does at least as well as the QNN on its own training set.
        EXPECT_GE(a[i].acc_eqk_train, a[i].acc_qnn_train - 0.01);
    }
}

TEST(RunExperiment, RowsMatchTheStagewiseArtifacts) {
    const auto cfg = SmallConfig();
    const auto rows = run_experiment(cfg);
    const auto data = prepare_data(cfg);
    const auto stages = train_iterative(data.train.points, cfg.model.layers, cfg.model.n_max, cfg.first_stage(),
                                        cfg.later_stages(), cfg.train.init_seed);
    for (std::size_t i = 0; i < stages.size(); ++i) {
        EXPECT_EQ(rows[i].acc_qnn_test, accuracy(stages[i], data.test.points));
        const auto ev = evaluate_eqk({EqkKind::kNToN}, stages[i], data.train.points, data.test.points,
                                     cfg.kernel.svm_c, cfg.kernel.svm_tol);
        EXPECT_EQ(rows[i].acc_eqk_test, ev.acc_test);
    }
}

TEST(RunExperiment, OneToNStartsAtTwoQubits) {
    auto cfg = SmallConfig();
    cfg.kernel.construction = EqkKind::kOneToN;
    const auto rows = run_experiment(cfg);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].n, 2);
    EXPECT_EQ(rows[1].n, 3);
    EXPECT_EQ(rows[0].acc_qnn_test, rows[1].acc_qnn_test);
}

TEST(RunNoiseSweep, GridAndNoiselessRow) {
    auto cfg = SmallConfig();
    cfg.noise.enabled = true;
    cfg.noise.layers = {1, 2};
    cfg.noise.taus = {0.0, 0.03};
    const auto rows = run_noise_sweep(cfg);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].layers, 1);
    EXPECT_EQ(rows[1].tau, 0.03);
    for (const auto &r : rows) {
        EXPECT_NEAR(r.relative_improvement, (r.acc_eqk - r.acc_qnn) / r.acc_qnn, 1e-15);
    }
    cfg.noise.enabled = false;
    EXPECT_THROW(run_noise_sweep(cfg), ConfigError);
}

TEST(Results, CsvRoundTripAndAppend) {
    ResultRow row{"corners", "n_to_n", "cnot", 2, 7, 0.0, 0.9, 0.8, 0.95, 0.1 + 0.2, 4, 1.25};
    std::stringstream ss;
    const std::vector<ResultRow> rows = {row};
    write_results(ss, rows);
    const std::string text = ss.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
    const auto back = read_results(ss);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_TRUE(back[0].same_data(row));
    EXPECT_EQ(back[0].wall_time_seconds, row.wall_time_seconds);

    const auto path = TempPath("results.csv");
    std::filesystem::remove(path);
    emit_results({}, path);
    {
        std::ifstream in(path);
        std::stringstream content;
        content << in.rdbuf();
        EXPECT_EQ(content.str(), std::string(kResultHeader) + "\n");
    }
    emit_results(rows, path);
    emit_results(rows, path);
    std::ifstream in(path);
    EXPECT_EQ(read_results(in).size(), 2u);
    std::filesystem::remove(path);
    EXPECT_THROW(emit_results(rows, "/nonexistent/dir/out.csv"), std::runtime_error);
}

TEST(Results, NoiseCsvRoundTrip) {
    const std::vector<NoiseRow> rows = {{"corners", 3, 0.015, 0.8, 0.84, 0.05, 2}};
    std::stringstream ss;
    write_noise_results(ss, rows);
    EXPECT_EQ(ss.str().substr(0, kNoiseHeader.size()), kNoiseHeader);
    EXPECT_EQ(read_noise_results(ss), rows);
}

}  // namespace
}  // namespace eqk
