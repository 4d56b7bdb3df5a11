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

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace eqk {

namespace {

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
    return out;
}

template <typename T>
T parse_field(const std::string &text, std::size_t lineno) {
    T out{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("results CSV: bad field '" + text + "' at line " + std::to_string(lineno));
    }
    return out;
}

std::string first_line(const std::filesystem::path &path) {
    std::ifstream in(path);
    std::string line;
    if (in) std::getline(in, line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

template <typename Row, typename Writer>
void emit(std::span<const Row> rows, const std::filesystem::path &path, std::string_view header, Writer write) {
    const bool append = std::filesystem::exists(path) && first_line(path) == header;
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write(out, rows, !append);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<std::string> read_header(std::istream &in, std::string_view expected) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("results CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected) throw std::runtime_error("results CSV: unexpected header '" + line + "'");
    return split_csv(line);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

bool ResultRow::same_data(const ResultRow &o) const {
    return dataset == o.dataset && construction == o.construction && entangler == o.entangler && n == o.n &&
           layers == o.layers && tau == o.tau && acc_qnn_train == o.acc_qnn_train && acc_qnn_test == o.acc_qnn_test &&
           acc_eqk_train == o.acc_eqk_train && acc_eqk_test == o.acc_eqk_test && seed == o.seed;
}

ExperimentData prepare_data(const ExperimentConfig &cfg) {
    ExperimentData d;
    d.full = generate(cfg.dataset.name, cfg.dataset.total_points, cfg.dataset.seed);
    std::tie(d.train, d.test) = split(d.full, cfg.dataset.n_train, cfg.dataset.n_test, cfg.dataset.seed + 1);
    return d;
}

EqkEvaluation evaluate_eqk(const EqkSpec &spec, const QnnParams &params, std::span<const DataPoint> train,
                           std::span<const DataPoint> test, double svm_c, double svm_tol) {
    std::vector<Features> xtrain;
    std::vector<int> ytrain;
    std::vector<Features> xtest;
    std::vector<int> ytest;
    for (const auto &p : train) {
        xtrain.push_back(p.x);
        ytrain.push_back(p.y);
    }
    for (const auto &p : test) {
        xtest.push_back(p.x);
        ytest.push_back(p.y);
    }
    const auto train_states = feature_states(spec, params, xtrain);
    const KernelMatrix gram = gram_from_states(train_states);
    EqkEvaluation ev;
    ev.fit = svm_train(gram, ytrain, svm_c, svm_tol);
    ev.acc_train = svm_accuracy(ev.fit.model, gram, ytrain);
    if (!test.empty()) {
        const auto test_states = feature_states(spec, params, xtest);
        ev.acc_test = svm_accuracy(ev.fit.model, cross_from_states(test_states, train_states), ytest);
    }
    return ev;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig &cfg, std::ostream *log) {
    cfg.validate();
    const ExperimentData data = prepare_data(cfg);
    const auto &train = data.train.points;
    const auto &test = data.test.points;
    const bool n_to_n = cfg.kernel.construction == EqkKind::kNToN;

    auto row_for = [&](int n) {
        ResultRow r;
        r.dataset = std::string(to_string(cfg.dataset.name));
        r.construction = std::string(to_string(cfg.kernel.construction));
        r.entangler = std::string(to_string(cfg.kernel.entangler));
        r.n = n;
        r.layers = cfg.model.layers;
        r.seed = cfg.dataset.seed;
        return r;
    };

    std::vector<ResultRow> rows;
    if (n_to_n) {
        auto start = std::chrono::steady_clock::now();
        auto observer = [&](int n, const QnnParams &, const QnnParams &trained) {
            if (n < cfg.model.n_min) {
                start = std::chrono::steady_clock::now();
                return;
            }
            ResultRow r = row_for(n);
            r.acc_qnn_train = accuracy(trained, train);
            r.acc_qnn_test = accuracy(trained, test);
            const EqkSpec spec{EqkKind::kNToN, 0, cfg.kernel.entangler};
            const auto ev = evaluate_eqk(spec, trained, train, test, cfg.kernel.svm_c, cfg.kernel.svm_tol);
            r.acc_eqk_train = ev.acc_train;
            r.acc_eqk_test = ev.acc_test;
            r.wall_time_seconds = seconds_since(start);
            if (log) {
                *log << "n=" << n << " qnn_test=" << r.acc_qnn_test << " eqk_test=" << r.acc_eqk_test
                     << " smo_iterations=" << ev.fit.iterations << " time=" << r.wall_time_seconds << "s\n";
                for (const auto &w : ev.fit.warnings) *log << "  warning: " << w << '\n';
            }
            rows.push_back(std::move(r));
            start = std::chrono::steady_clock::now();
        };
        train_iterative(train, cfg.model.layers, cfg.model.n_max, cfg.first_stage(), cfg.later_stages(),
                        cfg.train.init_seed, observer);
        return rows;
    }

    auto start = std::chrono::steady_clock::now();
    const QnnParams single =
        train_qnn(train, QnnParams::random(1, cfg.model.layers, cfg.train.init_seed), cfg.first_stage());
    const double train_seconds = seconds_since(start);
    const double qnn_train = accuracy(single, train);
    const double qnn_test = accuracy(single, test);
    for (int n = std::max(2, cfg.model.n_min); n <= cfg.model.n_max; ++n) {
        start = std::chrono::steady_clock::now();
        ResultRow r = row_for(n);
        r.acc_qnn_train = qnn_train;
        r.acc_qnn_test = qnn_test;
        const EqkSpec spec{EqkKind::kOneToN, n, cfg.kernel.entangler};
        const auto ev = evaluate_eqk(spec, single, train, test, cfg.kernel.svm_c, cfg.kernel.svm_tol);
        r.acc_eqk_train = ev.acc_train;
        r.acc_eqk_test = ev.acc_test;
        // The shared single-qubit training time is charged to the first row.
        r.wall_time_seconds = seconds_since(start) + (rows.empty() ? train_seconds : 0.0);
        if (log) {
            *log << "n=" << n << " qnn_test=" << r.acc_qnn_test << " eqk_test=" << r.acc_eqk_test
                 << " smo_iterations=" << ev.fit.iterations << " time=" << r.wall_time_seconds << "s\n";
            for (const auto &w : ev.fit.warnings) *log << "  warning: " << w << '\n';
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<NoiseRow> run_noise_sweep(const ExperimentConfig &cfg, std::ostream *log) {
    cfg.validate();
    if (!cfg.noise.enabled) throw ConfigError("noise.enabled", "must be true for a noise sweep");
    if (cfg.noise.taus.empty()) throw ConfigError("noise.taus", "must not be empty");
    if (cfg.noise.layers.empty()) throw ConfigError("noise.layers", "must not be empty");
    const ExperimentData data = prepare_data(cfg);
    const auto &train = data.train.points;
    const auto &test = data.test.points;
    const auto xtrain = data.train.features();
    const auto ytrain = data.train.labels();
    const auto xtest = data.test.features();
    const auto ytest = data.test.labels();
    const EqkSpec spec{EqkKind::kOneToN, 2, EntanglerKind::kCnotCascade};
    const TrainConfig tc{cfg.noise.learning_rate, cfg.noise.epochs, cfg.train.batch_size, cfg.train.init_seed + 1};

    std::vector<NoiseRow> rows;
    for (int layers : cfg.noise.layers) {
        const QnnParams params = train_qnn(train, QnnParams::random(1, layers, cfg.train.init_seed), tc);
        for (double tau : cfg.noise.taus) {
            const NoiseParams noise = tau_noise(tau);
            NoiseRow r;
            r.dataset = std::string(to_string(cfg.dataset.name));
            r.layers = layers;
            r.tau = tau;
            r.seed = cfg.dataset.seed;
            r.acc_qnn = noisy_qnn_accuracy(params, test, noise);
            const NoisyFeatures ftrain = noisy_features(spec, params, xtrain, noise);
            const NoisyFeatures ftest = noisy_features(spec, params, xtest, noise);
            const SvmFit fit = svm_train(noisy_gram(ftrain), ytrain, cfg.kernel.svm_c, cfg.kernel.svm_tol);
            r.acc_eqk = svm_accuracy(fit.model, noisy_cross(ftest, ftrain), ytest);
            r.relative_improvement = relative_improvement(r.acc_eqk, r.acc_qnn);
            if (log) {
                *log << "L=" << layers << " tau=" << tau << " acc_qnn=" << r.acc_qnn << " acc_eqk=" << r.acc_eqk
                     << " rel=" << r.relative_improvement << '\n';
            }
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

void write_results(std::ostream &out, std::span<const ResultRow> rows, bool header) {
    if (header) out << kResultHeader << '\n';
    for (const auto &r : rows) {
        out << r.dataset << ',' << r.construction << ',' << r.entangler << ',' << r.n << ',' << r.layers << ','
            << fmt(r.tau) << ',' << fmt(r.acc_qnn_train) << ',' << fmt(r.acc_qnn_test) << ',' << fmt(r.acc_eqk_train)
            << ',' << fmt(r.acc_eqk_test) << ',' << r.seed << ',' << fmt(r.wall_time_seconds) << '\n';
    }
}

void write_noise_results(std::ostream &out, std::span<const NoiseRow> rows, bool header) {
    if (header) out << kNoiseHeader << '\n';
    for (const auto &r : rows) {
        out << r.dataset << ',' << r.layers << ',' << fmt(r.tau) << ',' << fmt(r.acc_qnn) << ',' << fmt(r.acc_eqk)
            << ',' << fmt(r.relative_improvement) << ',' << r.seed << '\n';
    }
}

void emit_results(std::span<const ResultRow> rows, const std::filesystem::path &path) {
    emit(rows, path, kResultHeader, [](std::ostream &o, std::span<const ResultRow> r, bool h) {
        write_results(o, r, h);
    });
}

void emit_noise_results(std::span<const NoiseRow> rows, const std::filesystem::path &path) {
    emit(rows, path, kNoiseHeader, [](std::ostream &o, std::span<const NoiseRow> r, bool h) {
        write_noise_results(o, r, h);
    });
}

std::vector<ResultRow> read_results(std::istream &in) {
    const std::size_t columns = read_header(in, kResultHeader).size();
    std::vector<ResultRow> rows;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv(line);
        if (f.size() != columns) throw std::runtime_error("results CSV: wrong column count at line " + std::to_string(lineno));
        ResultRow r;
        r.dataset = f[0];
        r.construction = f[1];
        r.entangler = f[2];
        r.n = parse_field<int>(f[3], lineno);
        r.layers = parse_field<int>(f[4], lineno);
        r.tau = parse_field<double>(f[5], lineno);
        r.acc_qnn_train = parse_field<double>(f[6], lineno);
        r.acc_qnn_test = parse_field<double>(f[7], lineno);
        r.acc_eqk_train = parse_field<double>(f[8], lineno);
        r.acc_eqk_test = parse_field<double>(f[9], lineno);
        r.seed = parse_field<std::uint64_t>(f[10], lineno);
        r.wall_time_seconds = parse_field<double>(f[11], lineno);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<NoiseRow> read_noise_results(std::istream &in) {
    const std::size_t columns = read_header(in, kNoiseHeader).size();
    std::vector<NoiseRow> rows;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv(line);
        if (f.size() != columns) throw std::runtime_error("noise CSV: wrong column count at line " + std::to_string(lineno));
        NoiseRow r;
        r.dataset = f[0];
        r.layers = parse_field<int>(f[1], lineno);
        r.tau = parse_field<double>(f[2], lineno);
        r.acc_qnn = parse_field<double>(f[3], lineno);
        r.acc_eqk = parse_field<double>(f[4], lineno);
        r.relative_improvement = parse_field<double>(f[5], lineno);
        r.seed = parse_field<std::uint64_t>(f[6], lineno);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace eqk
