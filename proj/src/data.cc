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

#include "eqk/data.h"

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

namespace eqk {

namespace {

void check_size(std::size_t m) {
    if (m == 0) throw std::invalid_argument("dataset size must be positive");
}

template <typename Label>
Dataset uniform_square(DatasetName name, std::size_t m, std::uint64_t seed, Label label) {
    check_size(m);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    Dataset d{{}, name, seed};
    d.points.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Features x{coord(rng), coord(rng)};
        d.points.push_back({x, label(x)});
    }
    return d;
}

}  // namespace

std::string_view to_string(DatasetName name) {
    switch (name) {
        case DatasetName::kSinus:
            return "sinus";
        case DatasetName::kCorners:
            return "corners";
        case DatasetName::kSpiral:
            return "spiral";
        case DatasetName::kCircles:
            return "circles";
    }
    return "unknown";
}

DatasetName parse_dataset_name(std::string_view name) {
    for (auto d : {DatasetName::kSinus, DatasetName::kCorners, DatasetName::kSpiral, DatasetName::kCircles}) {
        if (to_string(d) == name) return d;
    }
    throw std::invalid_argument("unknown dataset '" + std::string(name) + "'");
}

std::vector<Features> Dataset::features() const {
    std::vector<Features> out;
    out.reserve(points.size());
    for (const auto &p : points) out.push_back(p.x);
    return out;
}

std::vector<int> Dataset::labels() const {
    std::vector<int> out;
    out.reserve(points.size());
    for (const auto &p : points) out.push_back(p.y);
    return out;
}

int sinus_label(const Features &x) { return x[1] > -0.8 * std::sin(std::numbers::pi * x[0]) ? -1 : 1; }

int corners_label(const Features &x) {
    for (double cx : {-1.0, 1.0}) {
        for (double cy : {-1.0, 1.0}) {
            if (std::hypot(x[0] - cx, x[1] - cy) < kCornerRadius) return -1;
        }
    }
    return 1;
}

int circles_label(const Features &x) {
    const double outer = std::sqrt(2.0 / std::numbers::pi);
    const double r = std::hypot(x[0], x[1]);
    return (r >= 0.5 * outer && r <= outer) ? -1 : 1;
}

Features spiral_point(double t, int label) {
    const double r = kSpiralGrowth * t / kSpiralMaxAngle;
    Features p{r * std::cos(t), r * std::sin(t)};
    if (label == -1) p = {-p[0], -p[1]};
    return p;
}

Dataset gen_sinus(std::size_t m, std::uint64_t seed) { return uniform_square(DatasetName::kSinus, m, seed, sinus_label); }

Dataset gen_corners(std::size_t m, std::uint64_t seed) {
    return uniform_square(DatasetName::kCorners, m, seed, corners_label);
}

Dataset gen_circles(std::size_t m, std::uint64_t seed) {
    return uniform_square(DatasetName::kCircles, m, seed, circles_label);
}

Dataset gen_spiral(std::size_t m, std::uint64_t seed) {
    check_size(m);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kSpiralMaxAngle);
    std::normal_distribution<double> jitter(0.0, kSpiralNoise);
    Dataset d{{}, DatasetName::kSpiral, seed};
    d.points.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int label = i % 2 == 0 ? 1 : -1;
        Features p = spiral_point(angle(rng), label);
        for (auto &v : p) v = std::clamp(v + jitter(rng), -1.0, 1.0);
        d.points.push_back({p, label});
    }
    return d;
}

Dataset generate(DatasetName name, std::size_t m, std::uint64_t seed) {
    switch (name) {
        case DatasetName::kSinus:
            return gen_sinus(m, seed);
        case DatasetName::kCorners:
            return gen_corners(m, seed);
        case DatasetName::kSpiral:
            return gen_spiral(m, seed);
        case DatasetName::kCircles:
            return gen_circles(m, seed);
    }
    throw std::invalid_argument("unknown dataset");
}

std::pair<Dataset, Dataset> split(const Dataset &dataset, std::size_t n_train, std::size_t n_test,
                                  std::uint64_t seed) {
    if (n_train + n_test > dataset.size()) {
        throw std::invalid_argument("split: requested " + std::to_string(n_train + n_test) + " points from a set of " +
                                    std::to_string(dataset.size()));
    }
    std::vector<std::size_t> order(dataset.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    Dataset train{{}, dataset.name, dataset.seed};
    Dataset test{{}, dataset.name, dataset.seed};
    for (std::size_t i = 0; i < n_train; ++i) train.points.push_back(dataset.points[order[i]]);
    for (std::size_t i = n_train; i < n_train + n_test; ++i) test.points.push_back(dataset.points[order[i]]);
    return {std::move(train), std::move(test)};
}

void write_dataset_csv(std::ostream &out, const Dataset &dataset) {
    out << "x1,x2,y\n" << std::setprecision(17);
    for (const auto &p : dataset.points) out << p.x[0] << ',' << p.x[1] << ',' << p.y << '\n';
}

std::vector<DataPoint> read_dataset_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("x1,x2,y", 0) != 0) {
        throw std::runtime_error("dataset CSV must start with header 'x1,x2,y'");
    }
    std::vector<DataPoint> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        DataPoint p;
        if (!(ls >> p.x[0] >> p.x[1] >> p.y) || (p.y != 1 && p.y != -1)) {
            throw std::runtime_error("dataset CSV: bad row at line " + std::to_string(lineno));
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace eqk
