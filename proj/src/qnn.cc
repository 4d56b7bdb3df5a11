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

#include "eqk/qnn.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "eqk/parallel.h"

namespace eqk {

namespace {

void check_finite(const Features &x) {
    if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
        throw std::invalid_argument("non-finite input feature");
    }
}

void check_label(int y) {
    if (y != 1 && y != -1) {
        throw std::invalid_argument("label must be +1 or -1, got " + std::to_string(y));
    }
}

std::vector<Mat2> slot_matrices(const QnnParams &params) {
    std::vector<Mat2> out(params.slot_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = su2_matrix(params.slot(i));
    return out;
}

Circuit build_circuit(const QnnParams &p, std::span<const Mat2> mats, const Features &x) {
    check_finite(x);
    const int n = p.n_qubits();
    const Mat2 enc = su2_matrix(encode_gate(x));
    Circuit c;
    c.reserve(static_cast<std::size_t>(p.layers()) * (3 * n - 1));
    for (int l = 0; l < p.layers(); ++l) {
        for (int r = 0; r < n; ++r) c.push_back(Gate::single(r, enc));
        for (int r = 0; r < n; ++r) {
            int slot = p.theta_slot(l, r);
            c.push_back(Gate::single(r, mats[slot], slot));
        }
        for (int s = 0; s + 1 < n; ++s) {
            int slot = p.phi_slot(l, s);
            c.push_back(Gate::controlled(s + 1, s, mats[slot], slot));
        }
    }
    return c;
}

// dU/da, dU/db, dU/dc for U = Rz(c) Ry(b) Rz(a).
std::array<Mat2, 3> su2_derivatives(const Su2Angles &g, const Mat2 &u) {
    const Complex mi(0.0, -0.5);
    const Complex pi(0.0, 0.5);
    Mat2 da = {u[0] * mi, u[1] * pi, u[2] * mi, u[3] * pi};
    Mat2 db = su2_matrix({g.a, g.b + std::numbers::pi, g.c});
    for (auto &v : db) v *= 0.5;
    Mat2 dc = {u[0] * mi, u[1] * mi, u[2] * pi, u[3] * pi};
    return {da, db, dc};
}

void check_data(std::span<const DataPoint> data, const char *what) {
    if (data.empty()) throw std::invalid_argument(std::string(what) + ": empty data");
    for (const auto &d : data) {
        check_label(d.y);
        check_finite(d.x);
    }
}

// Adds d(1 - P_correct)/d(angle) for one point into `grad` (3 entries per slot).
void accumulate_point_gradient(const QnnParams &params, std::span<const Mat2> mats,
                               std::span<const std::array<Mat2, 3>> dmats, const DataPoint &point,
                               std::span<double> grad) {
    const int n = params.n_qubits();
    Circuit circuit = build_circuit(params, mats, point.x);
    StateVector psi(n);
    for (const auto &g : circuit) kernels::apply_gate(psi.amplitudes(), n, g);

    std::vector<Complex> lambda(psi.amplitudes().begin(), psi.amplitudes().end());
    const std::size_t half = lambda.size() / 2;
    if (point.y == 1) {
        std::fill(lambda.begin() + half, lambda.end(), Complex{});
    } else {
        std::fill(lambda.begin(), lambda.begin() + half, Complex{});
    }

    auto amps = psi.amplitudes();
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
        Gate inv = it->adjoint();
        kernels::apply_gate(amps, n, inv);
        if (it->tag >= 0) {
            const auto &d = dmats[it->tag];
            for (int j = 0; j < 3; ++j) {
                Complex m = kernels::matrix_element(lambda, amps, n, it->target, it->control, d[j]);
                grad[3 * it->tag + j] -= 2.0 * m.real();
            }
        }
        kernels::apply_gate(lambda, n, inv);
    }
}

}  // namespace

QnnParams::QnnParams(int n_qubits, int layers) : n_qubits_(n_qubits), layers_(layers) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("QnnParams: qubit count out of range: " + std::to_string(n_qubits));
    }
    if (layers < 1) {
        throw std::invalid_argument("QnnParams: layers must be positive, got " + std::to_string(layers));
    }
    slots_.resize(static_cast<std::size_t>(layers) * (2 * n_qubits - 1));
}

QnnParams QnnParams::random(int n_qubits, int layers, std::uint64_t seed) {
    QnnParams p(n_qubits, layers);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for (auto &s : p.slots_) {
        s.a = angle(rng);
        s.b = angle(rng);
        s.c = angle(rng);
    }
    return p;
}

int QnnParams::theta_slot(int layer, int qubit) const {
    if (layer < 0 || layer >= layers_ || qubit < 0 || qubit >= n_qubits_) {
        throw std::out_of_range("theta index out of range");
    }
    return layer * n_qubits_ + qubit;
}

int QnnParams::phi_slot(int layer, int pair) const {
    if (layer < 0 || layer >= layers_ || pair < 0 || pair >= n_qubits_ - 1) {
        throw std::out_of_range("phi index out of range");
    }
    return layers_ * n_qubits_ + layer * (n_qubits_ - 1) + pair;
}

std::vector<double> QnnParams::flatten() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    for (const auto &s : slots_) {
        out.push_back(s.a);
        out.push_back(s.b);
        out.push_back(s.c);
    }
    return out;
}

void QnnParams::assign(std::span<const double> values) {
    if (values.size() != parameter_count()) {
        throw std::invalid_argument("QnnParams::assign: expected " + std::to_string(parameter_count()) +
                                    " values, got " + std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        slots_[i] = {values[3 * i], values[3 * i + 1], values[3 * i + 2]};
    }
}

QnnParams QnnParams::with_added_qubit() const {
    QnnParams out(n_qubits_ + 1, layers_);
    for (int l = 0; l < layers_; ++l) {
        for (int r = 0; r < n_qubits_; ++r) out.theta(l, r) = theta(l, r);
        for (int s = 0; s + 1 < n_qubits_; ++s) out.phi(l, s) = phi(l, s);
    }
    return out;
}

Su2Angles encode_gate(const Features &x) {
    check_finite(x);
    return {x[0], x[1], 0.0};
}

Circuit qnn_circuit(const QnnParams &params, const Features &x) {
    return build_circuit(params, slot_matrices(params), x);
}

StateVector qnn_state(const QnnParams &params, const Features &x) {
    StateVector psi(params.n_qubits());
    run_circuit(psi, qnn_circuit(params, x));
    return psi;
}

double point_cost(double p_first_zero, int label) {
    check_label(label);
    return label == 1 ? 1.0 - p_first_zero : p_first_zero;
}

double fidelity_cost(const QnnParams &params, std::span<const DataPoint> data) {
    check_data(data, "fidelity_cost");
    const auto mats = slot_matrices(params);
    std::vector<double> costs(data.size());
    parallel_for(data.size(), [&](std::size_t i) {
        StateVector psi(params.n_qubits());
        run_circuit(psi, build_circuit(params, mats, data[i].x));
        costs[i] = point_cost(prob_first_qubit_zero(psi), data[i].y);
    });
    return std::accumulate(costs.begin(), costs.end(), 0.0) / static_cast<double>(data.size());
}

int label_from_probability(double p_first_zero) { return p_first_zero >= 0.5 ? 1 : -1; }

int predict(const QnnParams &params, const Features &x) {
    return label_from_probability(prob_first_qubit_zero(qnn_state(params, x)));
}

double accuracy(const QnnParams &params, std::span<const DataPoint> data) {
    if (data.empty()) throw std::invalid_argument("accuracy: empty data");
    const auto mats = slot_matrices(params);
    std::vector<int> hit(data.size());
    parallel_for(data.size(), [&](std::size_t i) {
        StateVector psi(params.n_qubits());
        run_circuit(psi, build_circuit(params, mats, data[i].x));
        hit[i] = label_from_probability(prob_first_qubit_zero(psi)) == data[i].y;
    });
    return static_cast<double>(std::accumulate(hit.begin(), hit.end(), 0)) / static_cast<double>(data.size());
}

QnnParams cost_gradient(const QnnParams &params, std::span<const DataPoint> batch) {
    check_data(batch, "cost_gradient");
    const auto mats = slot_matrices(params);
    std::vector<std::array<Mat2, 3>> dmats(mats.size());
    for (std::size_t i = 0; i < mats.size(); ++i) dmats[i] = su2_derivatives(params.slot(i), mats[i]);

    const std::size_t dim = params.parameter_count();
    std::vector<std::vector<double>> per_point(batch.size(), std::vector<double>(dim, 0.0));
    parallel_for(batch.size(), [&](std::size_t i) {
        accumulate_point_gradient(params, mats, dmats, batch[i], per_point[i]);
    });

    std::vector<double> total(dim, 0.0);
    for (const auto &g : per_point) {
        for (std::size_t k = 0; k < dim; ++k) total[k] += g[k];
    }
    for (auto &v : total) v /= static_cast<double>(batch.size());
    QnnParams out(params.n_qubits(), params.layers());
    out.assign(total);
    return out;
}

QnnParams train_qnn(std::span<const DataPoint> data, const QnnParams &params0, const TrainConfig &cfg) {
    check_data(data, "train_qnn");
    if (!(cfg.learning_rate > 0.0) || !std::isfinite(cfg.learning_rate)) {
        throw std::invalid_argument("train_qnn: learning_rate must be positive");
    }
    if (cfg.epochs < 1) throw std::invalid_argument("train_qnn: epochs must be >= 1");
    if (cfg.batch_size < 1) throw std::invalid_argument("train_qnn: batch_size must be >= 1");
    if (static_cast<std::size_t>(cfg.batch_size) > data.size()) {
        throw std::invalid_argument("train_qnn: batch_size exceeds training-set size");
    }

    constexpr double kBeta1 = 0.9;
    constexpr double kBeta2 = 0.999;
    constexpr double kEps = 1e-8;

    QnnParams params = params0;
    std::vector<double> theta = params.flatten();
    std::vector<double> m(theta.size(), 0.0);
    std::vector<double> v(theta.size(), 0.0);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(cfg.seed);
    std::vector<DataPoint> batch;
    batch.reserve(cfg.batch_size);
    long step = 0;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
            batch.clear();
            for (std::size_t k = start; k < stop; ++k) batch.push_back(data[order[k]]);

            std::vector<double> g = cost_gradient(params, batch).flatten();
            ++step;
            const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
            const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
            for (std::size_t k = 0; k < theta.size(); ++k) {
                m[k] = kBeta1 * m[k] + (1.0 - kBeta1) * g[k];
                v[k] = kBeta2 * v[k] + (1.0 - kBeta2) * g[k] * g[k];
                theta[k] -= cfg.learning_rate * (m[k] / c1) / (std::sqrt(v[k] / c2) + kEps);
            }
            params.assign(theta);
        }
    }
    return params;
}

std::vector<QnnParams> train_iterative(std::span<const DataPoint> data, int layers, int n_target,
                                       const TrainConfig &cfg_first, const TrainConfig &cfg_rest,
                                       std::uint64_t init_seed, const StageObserver &observer) {
    if (n_target < 1) throw std::invalid_argument("train_iterative: n_target must be >= 1");
    if (n_target > layers + 1) {
        throw std::invalid_argument("train_iterative: n_target " + std::to_string(n_target) +
                                    " exceeds layers + 1 = " + std::to_string(layers + 1));
    }
    std::vector<QnnParams> stages;
    stages.reserve(n_target);
    QnnParams initial = QnnParams::random(1, layers, init_seed);
    stages.push_back(train_qnn(data, initial, cfg_first));
    if (observer) observer(1, initial, stages.back());
    for (int n = 2; n <= n_target; ++n) {
        initial = stages.back().with_added_qubit();
        stages.push_back(train_qnn(data, initial, cfg_rest));
        if (observer) observer(n, initial, stages.back());
    }
    return stages;
}

void write_params(std::ostream &out, const QnnParams &params) {
    out << "qnn " << params.n_qubits() << ' ' << params.layers() << '\n';
    out << std::setprecision(17);
    auto line = [&](const char *kind, int l, int i, const Su2Angles &g) {
        out << kind << ' ' << l << ' ' << i << ' ' << g.a << ' ' << g.b << ' ' << g.c << '\n';
    };
    for (int l = 0; l < params.layers(); ++l) {
        for (int r = 0; r < params.n_qubits(); ++r) line("theta", l, r, params.theta(l, r));
        for (int s = 0; s + 1 < params.n_qubits(); ++s) line("phi", l, s, params.phi(l, s));
    }
}

QnnParams read_params(std::istream &in) {
    std::string magic;
    int n = 0;
    int layers = 0;
    if (!(in >> magic >> n >> layers) || magic != "qnn") {
        throw std::runtime_error("read_params: missing 'qnn <n> <L>' header");
    }
    QnnParams p(n, layers);
    std::vector<bool> seen(p.slot_count(), false);
    std::string kind;
    int l = 0;
    int i = 0;
    Su2Angles g;
    while (in >> kind >> l >> i >> g.a >> g.b >> g.c) {
        int slot = 0;
        if (kind == "theta") {
            slot = p.theta_slot(l, i);
        } else if (kind == "phi") {
            slot = p.phi_slot(l, i);
        } else {
            throw std::runtime_error("read_params: unknown gate kind '" + kind + "'");
        }
        p.slot(slot) = g;
        seen[slot] = true;
    }
    if (!in.eof()) throw std::runtime_error("read_params: malformed line");
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw std::runtime_error("read_params: missing gate angles");
    }
    return p;
}

}  // namespace eqk
