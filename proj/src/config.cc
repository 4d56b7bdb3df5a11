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

#include "eqk/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace eqk {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string &key, const std::string &value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(key, "cannot parse '" + value + "' as a number");
    }
    return out;
}

template <typename T>
std::vector<T> parse_list(const std::string &key, const std::string &value) {
    std::vector<T> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_number<T>(key, item));
    }
    return out;
}

bool parse_bool(const std::string &key, const std::string &value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key, "expected true/false, got '" + value + "'");
}

template <typename T>
std::string join(const std::vector<T> &values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
    return out.str();
}

}  // namespace

std::string_view to_string(EqkKind kind) { return kind == EqkKind::kNToN ? "n_to_n" : "one_to_n"; }

std::string_view to_string(EntanglerKind kind) { return kind == EntanglerKind::kCnotCascade ? "cnot" : "cz"; }

void ExperimentConfig::validate() const {
    if (dataset.total_points == 0) throw ConfigError("dataset.total_points", "must be positive");
    if (dataset.n_train == 0) throw ConfigError("dataset.n_train", "must be positive");
    if (dataset.n_train + dataset.n_test > dataset.total_points) {
        throw ConfigError("dataset.n_test", "n_train + n_test exceeds dataset.total_points");
    }
    if (model.layers < 1) throw ConfigError("model.layers", "must be >= 1");
    if (model.n_min < 1) throw ConfigError("model.n_min", "must be >= 1");
    if (model.n_max < model.n_min) throw ConfigError("model.n_max", "must be >= model.n_min");
    if (model.n_max > model.layers + 1) {
        throw ConfigError("model.n_max", "must be <= model.layers + 1 = " + std::to_string(model.layers + 1));
    }
    if (model.n_max > kMaxQubits) throw ConfigError("model.n_max", "exceeds the simulator limit");
    if (kernel.construction == EqkKind::kOneToN && model.n_max < 2) {
        throw ConfigError("model.n_max", "one_to_n kernels need at least 2 qubits");
    }
    if (!(train.lr_first > 0.0)) throw ConfigError("train.lr_first", "must be positive");
    if (!(train.lr_rest > 0.0)) throw ConfigError("train.lr_rest", "must be positive");
    if (train.epochs_first < 1) throw ConfigError("train.epochs_first", "must be >= 1");
    if (train.epochs_rest < 1) throw ConfigError("train.epochs_rest", "must be >= 1");
    if (train.batch_size < 1) throw ConfigError("train.batch_size", "must be >= 1");
    if (static_cast<std::size_t>(train.batch_size) > dataset.n_train) {
        throw ConfigError("train.batch_size", "exceeds dataset.n_train");
    }
    if (!(kernel.svm_c > 0.0)) throw ConfigError("kernel.svm_c", "must be positive");
    if (!(kernel.svm_tol > 0.0)) throw ConfigError("kernel.svm_tol", "must be positive");
    for (double t : noise.taus) {
        if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("noise.taus", "every tau must lie in [0, 1]");
    }
    for (int l : noise.layers) {
        if (l < 1) throw ConfigError("noise.layers", "every layer count must be >= 1");
    }
    if (noise.epochs < 1) throw ConfigError("noise.epochs", "must be >= 1");
    if (!(noise.learning_rate > 0.0)) throw ConfigError("noise.learning_rate", "must be positive");
}

TrainConfig ExperimentConfig::first_stage() const {
    return {train.lr_first, train.epochs_first, train.batch_size, train.init_seed + 1};
}

TrainConfig ExperimentConfig::later_stages() const {
    return {train.lr_rest, train.epochs_rest, train.batch_size, train.init_seed + 1};
}

ExperimentConfig parse_config(std::istream &in) {
    ExperimentConfig cfg;
    using Setter = std::function<void(const std::string &, const std::string &)>;
    const std::map<std::string, Setter, std::less<>> setters = {
        {"dataset.name",
         [&](auto &k, auto &v) {
             try {
                 cfg.dataset.name = parse_dataset_name(v);
             } catch (const std::invalid_argument &e) {
                 throw ConfigError(k, e.what());
             }
         }},
        {"dataset.total_points", [&](auto &k, auto &v) { cfg.dataset.total_points = parse_number<std::size_t>(k, v); }},
        {"dataset.seed", [&](auto &k, auto &v) { cfg.dataset.seed = parse_number<std::uint64_t>(k, v); }},
        {"dataset.n_train", [&](auto &k, auto &v) { cfg.dataset.n_train = parse_number<std::size_t>(k, v); }},
        {"dataset.n_test", [&](auto &k, auto &v) { cfg.dataset.n_test = parse_number<std::size_t>(k, v); }},
        {"model.layers", [&](auto &k, auto &v) { cfg.model.layers = parse_number<int>(k, v); }},
        {"model.n_min", [&](auto &k, auto &v) { cfg.model.n_min = parse_number<int>(k, v); }},
        {"model.n_max", [&](auto &k, auto &v) { cfg.model.n_max = parse_number<int>(k, v); }},
        {"train.lr_first", [&](auto &k, auto &v) { cfg.train.lr_first = parse_number<double>(k, v); }},
        {"train.epochs_first", [&](auto &k, auto &v) { cfg.train.epochs_first = parse_number<int>(k, v); }},
        {"train.lr_rest", [&](auto &k, auto &v) { cfg.train.lr_rest = parse_number<double>(k, v); }},
        {"train.epochs_rest", [&](auto &k, auto &v) { cfg.train.epochs_rest = parse_number<int>(k, v); }},
        {"train.batch_size", [&](auto &k, auto &v) { cfg.train.batch_size = parse_number<int>(k, v); }},
        {"train.init_seed", [&](auto &k, auto &v) { cfg.train.init_seed = parse_number<std::uint64_t>(k, v); }},
        {"kernel.construction",
         [&](auto &k, auto &v) {
             if (v == "n_to_n") {
                 cfg.kernel.construction = EqkKind::kNToN;
             } else if (v == "one_to_n") {
                 cfg.kernel.construction = EqkKind::kOneToN;
             } else {
                 throw ConfigError(k, "expected n_to_n or one_to_n, got '" + v + "'");
             }
         }},
        {"kernel.entangler",
         [&](auto &k, auto &v) {
             if (v == "cnot") {
                 cfg.kernel.entangler = EntanglerKind::kCnotCascade;
             } else if (v == "cz") {
                 cfg.kernel.entangler = EntanglerKind::kCzCascade;
             } else {
                 throw ConfigError(k, "expected cnot or cz, got '" + v + "'");
             }
         }},
        {"kernel.svm_c", [&](auto &k, auto &v) { cfg.kernel.svm_c = parse_number<double>(k, v); }},
        {"kernel.svm_tol", [&](auto &k, auto &v) { cfg.kernel.svm_tol = parse_number<double>(k, v); }},
        {"noise.enabled", [&](auto &k, auto &v) { cfg.noise.enabled = parse_bool(k, v); }},
        {"noise.taus", [&](auto &k, auto &v) { cfg.noise.taus = parse_list<double>(k, v); }},
        {"noise.layers", [&](auto &k, auto &v) { cfg.noise.layers = parse_list<int>(k, v); }},
        {"noise.epochs", [&](auto &k, auto &v) { cfg.noise.epochs = parse_number<int>(k, v); }},
        {"noise.learning_rate", [&](auto &k, auto &v) { cfg.noise.learning_rate = parse_number<double>(k, v); }},
    };

    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError(key, "unknown key");
        if (!seen.insert(key).second) throw ConfigError(key, "given more than once");
        it->second(key, value);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot open " + path.string());
    return parse_config(in);
}

void write_config(std::ostream &out, const ExperimentConfig &cfg) {
    out << "dataset.name = " << to_string(cfg.dataset.name) << '\n'
        << "dataset.total_points = " << cfg.dataset.total_points << '\n'
        << "dataset.seed = " << cfg.dataset.seed << '\n'
        << "dataset.n_train = " << cfg.dataset.n_train << '\n'
        << "dataset.n_test = " << cfg.dataset.n_test << '\n'
        << "model.layers = " << cfg.model.layers << '\n'
        << "model.n_min = " << cfg.model.n_min << '\n'
        << "model.n_max = " << cfg.model.n_max << '\n'
        << "train.lr_first = " << cfg.train.lr_first << '\n'
        << "train.epochs_first = " << cfg.train.epochs_first << '\n'
        << "train.lr_rest = " << cfg.train.lr_rest << '\n'
        << "train.epochs_rest = " << cfg.train.epochs_rest << '\n'
        << "train.batch_size = " << cfg.train.batch_size << '\n'
        << "train.init_seed = " << cfg.train.init_seed << '\n'
        << "kernel.construction = " << to_string(cfg.kernel.construction) << '\n'
        << "kernel.entangler = " << to_string(cfg.kernel.entangler) << '\n'
        << "kernel.svm_c = " << cfg.kernel.svm_c << '\n'
        << "kernel.svm_tol = " << cfg.kernel.svm_tol << '\n'
        << "noise.enabled = " << (cfg.noise.enabled ? "true" : "false") << '\n'
        << "noise.taus = " << join(cfg.noise.taus) << '\n'
        << "noise.layers = " << join(cfg.noise.layers) << '\n'
        << "noise.epochs = " << cfg.noise.epochs << '\n'
        << "noise.learning_rate = " << cfg.noise.learning_rate << '\n';
}

}  // namespace eqk
