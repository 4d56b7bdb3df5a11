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

#ifndef EQK_QNN_H
#define EQK_QNN_H

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "eqk/simulator.h"

namespace eqk {

using Features = std::array<double, 2>;

struct DataPoint {
    Features x{};
    int y = 1;  // +1 or -1
};

/// Trainable angles of an n-qubit, L-layer data re-uploading circuit.
///
/// Layer l holds one SU(2) gate per qubit (theta) and one controlled SU(2)
/// per adjacent pair (phi), phi[l][s] having control s+1 and target s.
class QnnParams {
   public:
    QnnParams(int n_qubits, int layers);

    /// Every angle drawn uniformly from [-pi, pi].
    static QnnParams random(int n_qubits, int layers, std::uint64_t seed);

    int n_qubits() const { return n_qubits_; }
    int layers() const { return layers_; }

    Su2Angles &theta(int layer, int qubit) { return slots_[theta_slot(layer, qubit)]; }
    const Su2Angles &theta(int layer, int qubit) const { return slots_[theta_slot(layer, qubit)]; }
    Su2Angles &phi(int layer, int pair) { return slots_[phi_slot(layer, pair)]; }
    const Su2Angles &phi(int layer, int pair) const { return slots_[phi_slot(layer, pair)]; }

    /// Index of a gate's angle triple in the flat slot list.
    int theta_slot(int layer, int qubit) const;
    int phi_slot(int layer, int pair) const;
    std::size_t slot_count() const { return slots_.size(); }
    Su2Angles &slot(std::size_t i) { return slots_[i]; }
    const Su2Angles &slot(std::size_t i) const { return slots_[i]; }

    /// 3(2n-1)L.
    std::size_t parameter_count() const { return 3 * slots_.size(); }

    std::vector<double> flatten() const;
    void assign(std::span<const double> values);

    /// Copy with one more qubit: the new qubit's theta and the new
    /// controlled gate's phi are zero in every layer.
    QnnParams with_added_qubit() const;

    bool operator==(const QnnParams &) const = default;

   private:
    int n_qubits_;
    int layers_;
    std::vector<Su2Angles> slots_;
};

struct TrainConfig {
    double learning_rate = 0.05;
    int epochs = 30;
    int batch_size = 24;
    std::uint64_t seed = 0;
};

/// Encoding gate angles for a 2-D input: (a, b, c) = (x0, x1, 0).
Su2Angles encode_gate(const Features &x);

/// Gate list of the re-uploading circuit for input x. Trainable gates carry
/// their slot index as the tag.
Circuit qnn_circuit(const QnnParams &params, const Features &x);
StateVector qnn_state(const QnnParams &params, const Features &x);

/// 1 - P(label state) for one point, with the label read on qubit 0.
double point_cost(double p_first_zero, int label);

/// Mean over `data` of 1 - P(correct label on qubit 0).
double fidelity_cost(const QnnParams &params, std::span<const DataPoint> data);

/// +1 iff p0 >= 1/2.
int label_from_probability(double p_first_zero);
int predict(const QnnParams &params, const Features &x);
double accuracy(const QnnParams &params, std::span<const DataPoint> data);

/// Exact gradient of fidelity_cost over `batch` by adjoint differentiation.
/// The result has the same layout as `params`.
QnnParams cost_gradient(const QnnParams &params, std::span<const DataPoint> batch);

/// Adam over shuffled mini-batches (the last partial batch is kept).
QnnParams train_qnn(std::span<const DataPoint> data, const QnnParams &params0, const TrainConfig &cfg);

/// Called by train_iterative after each stage with the width, the params the
/// stage started from and the trained params.
using StageObserver = std::function<void(int n_qubits, const QnnParams &initial, const QnnParams &trained)>;

/// Trains n = 1 from a random start (seeded by `init_seed`), then grows one
/// qubit at a time up to `n_target` <= layers + 1, returning every stage.
std::vector<QnnParams> train_iterative(std::span<const DataPoint> data, int layers, int n_target,
                                       const TrainConfig &cfg_first, const TrainConfig &cfg_rest,
                                       std::uint64_t init_seed, const StageObserver &observer = {});

/// Text format: "qnn <n> <L>" then one "theta|phi <layer> <index> a b c" line per gate.
void write_params(std::ostream &out, const QnnParams &params);
QnnParams read_params(std::istream &in);

}  // namespace eqk

#endif
