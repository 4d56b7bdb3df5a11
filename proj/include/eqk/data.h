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

#ifndef EQK_DATA_H
#define EQK_DATA_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqk/qnn.h"

namespace eqk {

enum class DatasetName { kSinus, kCorners, kSpiral, kCircles };

std::string_view to_string(DatasetName name);
DatasetName parse_dataset_name(std::string_view name);

struct Dataset {
    std::vector<DataPoint> points;
    DatasetName name = DatasetName::kSinus;
    std::uint64_t seed = 0;

    std::size_t size() const { return points.size(); }
    std::vector<Features> features() const;
    std::vector<int> labels() const;
};

// Spiral arm: radius 0.9 t / (3 pi) for t in [0, 3 pi), Gaussian jitter 0.05.
inline constexpr double kSpiralGrowth = 0.9;
inline constexpr double kSpiralMaxAngle = 3.0 * std::numbers::pi;
inline constexpr double kSpiralNoise = 0.05;
inline constexpr double kCornerRadius = 0.75;

// Label rules on [-1, 1]^2.
int sinus_label(const Features &x);    // -1 above x2 = -0.8 sin(pi x1)
int corners_label(const Features &x);  // -1 strictly within 0.75 of a corner
int circles_label(const Features &x);  // -1 on the annulus 0.5 r0 <= |x| <= r0, r0 = sqrt(2/pi)

/// Noise-free point on the spiral arm of `label` at angle t; the -1 arm is
/// the point reflection of the +1 arm.
Features spiral_point(double t, int label);

Dataset gen_sinus(std::size_t m, std::uint64_t seed);
Dataset gen_corners(std::size_t m, std::uint64_t seed);
Dataset gen_spiral(std::size_t m, std::uint64_t seed);
Dataset gen_circles(std::size_t m, std::uint64_t seed);
Dataset generate(DatasetName name, std::size_t m, std::uint64_t seed);

/// Disjoint seeded random split into (train, test).
std::pair<Dataset, Dataset> split(const Dataset &dataset, std::size_t n_train, std::size_t n_test,
                                  std::uint64_t seed);

/// CSV with header "x1,x2,y".
void write_dataset_csv(std::ostream &out, const Dataset &dataset);
std::vector<DataPoint> read_dataset_csv(std::istream &in);

}  // namespace eqk

#endif
