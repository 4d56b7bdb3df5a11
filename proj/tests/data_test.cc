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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace eqk {
namespace {

const DatasetName kAll[] = {DatasetName::kSinus, DatasetName::kCorners, DatasetName::kSpiral, DatasetName::kCircles};

TEST(Labels, Sinus) {
    EXPECT_EQ(sinus_label({0.5, 0.0}), -1);   // boundary at -0.8
    EXPECT_EQ(sinus_label({0.5, -0.9}), 1);
    EXPECT_EQ(sinus_label({-0.5, 0.79}), 1);  // boundary at +0.8
    EXPECT_EQ(sinus_label({-0.5, 0.81}), -1);
}

TEST(Labels, Corners) {
    EXPECT_EQ(corners_label({0.9, 0.9}), -1);
    EXPECT_EQ(corners_label({-0.9, 0.8}), -1);
    EXPECT_EQ(corners_label({0.0, 0.0}), 1);
    EXPECT_EQ(corners_label({1.0, 0.25}), 1);  // distance exactly 0.75
    EXPECT_EQ(corners_label({1.0, 0.2501}), -1);
}

TEST(Labels, Circles) {
    EXPECT_EQ(circles_label({0.0, 0.0}), 1);
    EXPECT_EQ(circles_label({0.6, 0.0}), -1);
    EXPECT_EQ(circles_label({0.9, 0.3}), 1);
    EXPECT_EQ(circles_label({0.3, 0.0}), 1);
}

TEST(Spiral, MirroredArms) {
    for (double t : {0.0, 1.0, 4.0, 9.0}) {
        const auto a = spiral_point(t, 1);
        const auto b = spiral_point(t, -1);
        EXPECT_EQ(a[0], -b[0]);
        EXPECT_EQ(a[1], -b[1]);
        EXPECT_NEAR(std::hypot(a[0], a[1]), kSpiralGrowth * t / kSpiralMaxAngle, 1e-15);
    }
    EXPECT_EQ(spiral_point(0.0, 1)[0], 0.0);
}

TEST(Spiral, BalancedAndNearCurve) {
    const auto d = gen_spiral(401, 3);
    const auto y = d.labels();
    const auto pos = std::count(y.begin(), y.end(), 1);
    EXPECT_LE(std::abs(2 * pos - 401), 1);
    // Points sit within a few noise widths of their arm.
    for (const auto &p : d.points) {
        double best = 1e9;
        for (int s = 0; s <= 3000; ++s) {
            const auto q = spiral_point(kSpiralMaxAngle * s / 3000.0, p.y);
            best = std::min(best, std::hypot(p.x[0] - q[0], p.x[1] - q[1]));
        }
        EXPECT_LE(best, 6 * kSpiralNoise);
    }
}

TEST(Generate, DomainDeterminismAndBothClasses) {
    for (auto name : kAll) {
        const auto a = generate(name, 300, 11);
        const auto b = generate(name, 300, 11);
        ASSERT_EQ(a.size(), 300u);
        EXPECT_EQ(a.name, name);
        std::set<int> classes;
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a.points[i].x, b.points[i].x);
            EXPECT_EQ(a.points[i].y, b.points[i].y);
            for (double v : a.points[i].x) {
                EXPECT_GE(v, -1.0);
                EXPECT_LE(v, 1.0);
            }
            classes.insert(a.points[i].y);
        }
        EXPECT_EQ(classes, (std::set<int>{-1, 1})) << to_string(name);
        EXPECT_NE(generate(name, 300, 12).points[5].x, a.points[5].x);
    }
    EXPECT_THROW(gen_sinus(0, 0), std::invalid_argument);
}

TEST(Generate, LabelsFollowTheRules) {
    for (const auto &p : gen_sinus(200, 1).points) EXPECT_EQ(p.y, sinus_label(p.x));
    for (const auto &p : gen_corners(200, 1).points) EXPECT_EQ(p.y, corners_label(p.x));
    for (const auto &p : gen_circles(200, 1).points) EXPECT_EQ(p.y, circles_label(p.x));
}

TEST(DatasetName, RoundTrip) {
    for (auto name : kAll) EXPECT_EQ(parse_dataset_name(to_string(name)), name);
    EXPECT_THROW(parse_dataset_name("moons"), std::invalid_argument);
}

TEST(Split, DisjointExactAndSeeded) {
    const auto d = gen_corners(1000, 0);
    const auto [train, test] = split(d, 500, 500, 1);
    EXPECT_EQ(train.size(), 500u);
    EXPECT_EQ(test.size(), 500u);
    std::set<std::pair<double, double>> seen;
    for (const auto &p : train.points) seen.insert({p.x[0], p.x[1]});
    for (const auto &p : test.points) EXPECT_EQ(seen.count({p.x[0], p.x[1]}), 0u);
    const auto again = split(d, 500, 500, 1);
    EXPECT_EQ(again.first.points[17].x, train.points[17].x);
    EXPECT_THROW(split(d, 600, 500, 1), std::invalid_argument);
}

TEST(Csv, RoundTripIsExact) {
    const auto d = gen_spiral(50, 4);
    std::stringstream ss;
    write_dataset_csv(ss, d);
    EXPECT_EQ(ss.str().substr(0, 8), "x1,x2,y\n");
    const auto back = read_dataset_csv(ss);
    ASSERT_EQ(back.size(), d.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].x, d.points[i].x);
        EXPECT_EQ(back[i].y, d.points[i].y);
    }
    std::istringstream no_header("0.1,0.2,1\n");
    EXPECT_THROW(read_dataset_csv(no_header), std::runtime_error);
    std::istringstream bad_label("x1,x2,y\n0.1,0.2,3\n");
    EXPECT_THROW(read_dataset_csv(bad_label), std::runtime_error);
}

}  // namespace
}  // namespace eqk
