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

// Command line front end. Every subcommand reads and writes the plain text
// artifacts documented in README.md so pipeline stages can be rerun alone.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "eqk/config.h"
#include "eqk/experiment.h"
#include "eqk/parallel.h"

namespace {

struct Common {
    std::string config;
    std::string out;
    int threads = 0;
    bool verbose = false;
};

eqk::ExperimentConfig load(const Common &c) {
    return c.config.empty() ? eqk::ExperimentConfig{} : eqk::load_config(c.config);
}

std::ifstream open_in(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

std::vector<eqk::DataPoint> read_points(const std::string &path) {
    auto in = open_in(path);
    return eqk::read_dataset_csv(in);
}

std::vector<eqk::Features> features_of(const std::vector<eqk::DataPoint> &pts) {
    std::vector<eqk::Features> out;
    for (const auto &p : pts) out.push_back(p.x);
    return out;
}

std::vector<int> labels_of(const std::vector<eqk::DataPoint> &pts) {
    std::vector<int> out;
    for (const auto &p : pts) out.push_back(p.y);
    return out;
}

void write_split(const std::string &path, const eqk::Dataset &d) {
    if (path.empty()) return;
    auto out = open_out(path);
    eqk::write_dataset_csv(out, d);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Trains re-uploading QNNs and classifies with the embedding kernels they induce."};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--threads", common.threads, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
    app.add_flag("-v,--verbose", common.verbose, "Progress output on stderr");

    auto add_common = [&](CLI::App *sub, const std::string &out_help) {
        sub->add_option("-c,--config", common.config, "Experiment config file")->check(CLI::ExistingFile);
        sub->add_option("-o,--out", common.out, out_help)->required();
    };

    // gen-data
    std::string train_path;
    std::string test_path;
    auto *gen = app.add_subcommand("gen-data", "Generate the configured dataset and its train/test split");
    add_common(gen, "CSV for the full dataset");
    gen->add_option("--train", train_path, "CSV for the training split");
    gen->add_option("--test", test_path, "CSV for the test split");

    // train-qnn
    std::string data_path;
    int n_qubits = 0;
    auto *train = app.add_subcommand("train-qnn", "Iteratively train a QNN up to --n qubits");
    add_common(train, "Parameter file");
    train->add_option("-d,--data", data_path, "Training CSV")->required()->check(CLI::ExistingFile);
    train->add_option("-n,--n", n_qubits, "Target width (default: model.n_max, or 1 for one_to_n)");

    // build-kernel
    std::string params_path;
    std::string eval_path;
    double tau = 0.0;
    auto *build = app.add_subcommand("build-kernel", "Gram matrix, or cross kernel with --eval");
    add_common(build, "Kernel matrix file");
    build->add_option("-p,--params", params_path, "Parameter file")->required()->check(CLI::ExistingFile);
    build->add_option("-d,--data", data_path, "Training CSV")->required()->check(CLI::ExistingFile);
    build->add_option("-e,--eval", eval_path, "Evaluation CSV; rows of the cross kernel")->check(CLI::ExistingFile);
    build->add_option("-n,--n", n_qubits, "Kernel width for one_to_n");
    build->add_option("--tau", tau, "Noise strength gamma = alpha = tau (one_to_n only)")->check(CLI::Range(0.0, 1.0));

    // fit-svm
    std::string kernel_path;
    std::string eval_kernel_path;
    auto *fit = app.add_subcommand("fit-svm", "Fit an SVM on a Gram matrix");
    add_common(fit, "SVM model file");
    fit->add_option("-k,--kernel", kernel_path, "Gram matrix file")->required()->check(CLI::ExistingFile);
    fit->add_option("-d,--data", data_path, "Training CSV (labels)")->required()->check(CLI::ExistingFile);
    fit->add_option("-e,--eval", eval_path, "Evaluation CSV to score")->check(CLI::ExistingFile);
    fit->add_option("--eval-kernel", eval_kernel_path, "Cross kernel for --eval")->check(CLI::ExistingFile);

    auto *run = app.add_subcommand("run-experiment", "Full QNN + kernel pipeline over n");
    add_common(run, "Results CSV (appended when the header matches)");

    auto *sweep = app.add_subcommand("noise-sweep", "Noisy 1-to-2 study over the (L, tau) grid");
    add_common(sweep, "Noise results CSV (appended when the header matches)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (common.threads > 0) eqk::set_num_threads(common.threads);
        std::ostream *log = common.verbose ? &std::cerr : nullptr;
        const eqk::ExperimentConfig cfg = load(common);

        if (*gen) {
            const auto data = eqk::prepare_data(cfg);
            write_split(common.out, data.full);
            write_split(train_path, data.train);
            write_split(test_path, data.test);
        } else if (*train) {
            const auto pts = read_points(data_path);
            const bool one_to_n = cfg.kernel.construction == eqk::EqkKind::kOneToN;
            int n = n_qubits > 0 ? n_qubits : (one_to_n ? 1 : cfg.model.n_max);
            if (n > cfg.model.layers + 1) throw eqk::ConfigError("--n", "must be <= model.layers + 1");
            eqk::StageObserver observer;
            if (log) {
                observer = [&](int stage, const eqk::QnnParams &, const eqk::QnnParams &p) {
                    *log << "stage n=" << stage << " train accuracy " << eqk::accuracy(p, pts) << '\n';
                };
            }
            const auto stages = eqk::train_iterative(pts, cfg.model.layers, n, cfg.first_stage(), cfg.later_stages(),
                                                     cfg.train.init_seed, observer);
            auto out = open_out(common.out);
            eqk::write_params(out, stages.back());
        } else if (*build) {
            auto pin = open_in(params_path);
            const auto params = eqk::read_params(pin);
            const eqk::EqkSpec spec{cfg.kernel.construction,
                                    cfg.kernel.construction == eqk::EqkKind::kOneToN ? (n_qubits > 0 ? n_qubits : 2)
                                                                                     : n_qubits,
                                    cfg.kernel.entangler};
            const auto xtrain = features_of(read_points(data_path));
            eqk::KernelMatrix k;
            if (tau > 0.0) {
                const auto noise = eqk::tau_noise(tau);
                const auto ftrain = eqk::noisy_features(spec, params, xtrain, noise);
                if (eval_path.empty()) {
                    k = eqk::noisy_gram(ftrain);
                } else {
                    const auto xeval = features_of(read_points(eval_path));
                    k = eqk::noisy_cross(eqk::noisy_features(spec, params, xeval, noise), ftrain);
                }
            } else if (eval_path.empty()) {
                k = eqk::gram_matrix(spec, params, xtrain);
            } else {
                k = eqk::cross_kernel(spec, params, features_of(read_points(eval_path)), xtrain);
            }
            if (log && k.square() && eval_path.empty()) {
                const auto report = eqk::inspect_kernel(k);
                *log << "min eigenvalue " << report.min_eigenvalue << ", max asymmetry " << report.max_asymmetry
                     << '\n';
            }
            auto out = open_out(common.out);
            eqk::write_kernel_matrix(out, k);
        } else if (*fit) {
            auto kin = open_in(kernel_path);
            const auto gram = eqk::read_kernel_matrix(kin);
            const auto pts = read_points(data_path);
            const auto labels = labels_of(pts);
            const auto result = eqk::svm_train(gram, labels, cfg.kernel.svm_c, cfg.kernel.svm_tol);
            for (const auto &w : result.warnings) std::cerr << "warning: " << w << '\n';
            std::cout.precision(17);
            std::cout << "train_accuracy " << eqk::svm_accuracy(result.model, gram, labels) << '\n';
            if (!eval_path.empty()) {
                if (eval_kernel_path.empty()) throw std::runtime_error("--eval needs --eval-kernel");
                auto ein = open_in(eval_kernel_path);
                const auto cross = eqk::read_kernel_matrix(ein);
                std::cout << "eval_accuracy " << eqk::svm_accuracy(result.model, cross, labels_of(read_points(eval_path)))
                          << '\n';
            }
            if (log) *log << "iterations " << result.iterations << (result.converged ? "" : " (not converged)") << '\n';
            auto out = open_out(common.out);
            eqk::write_svm_model(out, result.model);
        } else if (*run) {
            const auto rows = eqk::run_experiment(cfg, log);
            eqk::emit_results(rows, common.out);
        } else if (*sweep) {
            const auto rows = eqk::run_noise_sweep(cfg, log);
            eqk::emit_noise_results(rows, common.out);
        }
    } catch (const eqk::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
