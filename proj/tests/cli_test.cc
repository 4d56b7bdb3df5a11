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

// Drives the eqk binary through its file artifacts.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "eqk/data.h"
#include "eqk/experiment.h"
#include "eqk/kernel.h"
#include "eqk/qnn.h"
#include "eqk/svm.h"

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / "eqk_cli_test";
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        Write("small.cfg",
              "dataset.total_points = 120\n"
              "dataset.n_train = 60\n"
              "dataset.n_test = 60\n"
              "model.layers = 3\n"
              "model.n_max = 2\n"
              "train.epochs_first = 3\n"
              "train.epochs_rest = 1\n"
              "train.batch_size = 12\n"
              "noise.layers = 1\n"
              "noise.taus = 0, 0.02\n");
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string Path(const std::string &name) const { return (dir_ / name).string(); }

    void Write(const std::string &name, const std::string &text) const {
        std::ofstream out(Path(name));
        out << text;
    }

    std::string Read(const std::string &name) const {
        std::ifstream in(Path(name));
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    int Run(const std::string &args) const {
        const std::string cmd = std::string(EQK_CLI_PATH) + " " + args + " > " + Path("stdout.txt") + " 2> " +
                                Path("stderr.txt");
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    fs::path dir_;
};

TEST_F(CliTest, PipelineStagesCompose) {
    const std::string cfg = " -c " + Path("small.cfg");
    ASSERT_EQ(Run("gen-data" + cfg + " -o " + Path("all.csv") + " --train " + Path("train.csv") + " --test " +
                  Path("test.csv")),
              0);
    ASSERT_EQ(Run("train-qnn" + cfg + " -d " + Path("train.csv") + " -o " + Path("params.txt")), 0);
    ASSERT_EQ(Run("build-kernel" + cfg + " -p " + Path("params.txt") + " -d " + Path("train.csv") + " -o " +
                  Path("gram.txt")),
              0);
    ASSERT_EQ(Run("build-kernel" + cfg + " -p " + Path("params.txt") + " -d " + Path("train.csv") + " -e " +
                  Path("test.csv") + " -o " + Path("cross.txt")),
              0);
    ASSERT_EQ(Run("fit-svm" + cfg + " -k " + Path("gram.txt") + " -d " + Path("train.csv") + " -e " +
                  Path("test.csv") + " --eval-kernel " + Path("cross.txt") + " -o " + Path("model.txt")),
              0);
    std::istringstream out(Read("stdout.txt"));
    ASSERT_EQ(Run("run-experiment" + cfg + " -o " + Path("results.csv") + " --threads 1"), 0);

    // The accuracy printed by fit-svm equals the run-experiment row for n = 2.
    std::istringstream results(Read("results.csv"));
    const auto rows = eqk::read_results(results);
    ASSERT_EQ(rows.size(), 2u);
    std::string key;
    double train_acc = 0.0;
    double eval_acc = 0.0;
    out >> key >> train_acc >> key >> eval_acc;
    EXPECT_NEAR(eval_acc, rows[1].acc_eqk_test, 1e-9);
    EXPECT_NEAR(train_acc, rows[1].acc_eqk_train, 1e-9);

    // Every artifact parses back.
    std::istringstream params(Read("params.txt"));
    EXPECT_EQ(eqk::read_params(params).n_qubits(), 2);
    std::istringstream model(Read("model.txt"));
    EXPECT_EQ(eqk::read_svm_model(model).alphas.size(), 60u);
}

TEST_F(CliTest, SameConfigGivesSameBytes) {
    const std::string cfg = " -c " + Path("small.cfg");
    ASSERT_EQ(Run("run-experiment" + cfg + " -o " + Path("a.csv")), 0);
    ASSERT_EQ(Run("run-experiment" + cfg + " -o " + Path("b.csv")), 0);
    auto strip_time = [](const std::string &text) {
        std::istringstream in(text);
        std::string line;
        std::string out;
        while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
        return out;
    };
    EXPECT_EQ(strip_time(Read("a.csv")), strip_time(Read("b.csv")));

    Write("noise.cfg", Read("small.cfg") + "noise.enabled = true\n");
    ASSERT_EQ(Run("noise-sweep -c " + Path("noise.cfg") + " -o " + Path("n1.csv")), 0);
    ASSERT_EQ(Run("noise-sweep -c " + Path("noise.cfg") + " -o " + Path("n2.csv")), 0);
    EXPECT_EQ(Read("n1.csv"), Read("n2.csv"));
    const std::string noise = Read("n1.csv");
    EXPECT_EQ(std::count(noise.begin(), noise.end(), '\n'), 3);
}

TEST_F(CliTest, ExitCodes) {
    Write("bad.cfg", "model.layers = 2\nmodel.n_max = 5\n");
    EXPECT_EQ(Run("run-experiment -c " + Path("bad.cfg") + " -o " + Path("x.csv")), 2);
    EXPECT_NE(Read("stderr.txt").find("model.n_max"), std::string::npos);
    EXPECT_EQ(Run("run-experiment --bogus"), 2);
    EXPECT_EQ(Run(""), 2);
    // A corrupt artifact is a runtime failure.
    Write("broken.csv", "not a dataset\n");
    EXPECT_EQ(Run("train-qnn -c " + Path("small.cfg") + " -d " + Path("broken.csv") + " -o " + Path("p.txt")), 1);
    EXPECT_EQ(Run("run-experiment -c " + Path("small.cfg") + " -o " + Path("missing/dir/x.csv")), 1);
    EXPECT_EQ(Run("--help"), 0);
}

}  // namespace
