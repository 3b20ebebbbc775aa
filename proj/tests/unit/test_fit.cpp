// Copyright 2026 The forgetsim Authors
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
#include <gtest/gtest.h>

#include <cmath>

#include "forgetsim/errors.hpp"
#include "forgetsim/fit.hpp"

using namespace forgetsim;

namespace {

double rel(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

std::vector<Point> critical_data(double a, double pc, double v, double step = 0.01) {
    std::vector<Point> pts;
    for (double x = 0.0; x <= 0.3 + 1e-12; x += step) {
        pts.emplace_back(x, x < pc ? a * std::pow(pc - x, v) : 0.0);
    }
    return pts;
}

}  // namespace

TEST(FitPowerLaw, RecoversNoiselessData) {
    std::vector<Point> pts;
    for (double d : {4.0, 8.0, 16.0, 32.0, 64.0}) {
        pts.emplace_back(d, 4.0 * std::pow(d, -1.25));
    }
    auto fit = fit_power_law(pts);
    EXPECT_EQ(fit.model, FitModel::PowerLaw);
    EXPECT_LT(rel(fit.param("alpha"), 4.0), 1e-9);
    EXPECT_LT(rel(fit.param("v"), -1.25), 1e-9);
    EXPECT_LT(fit.residual_norm, 1e-9);
    EXPECT_EQ(fit.points_used, 5u);
    EXPECT_THROW(fit.param("p_c"), ArgumentError);
}

TEST(FitPowerLaw, ReportsStandardErrorsForNoisyData) {
    std::vector<Point> pts{{4, 0.70}, {8, 0.29}, {16, 0.094}, {32, 0.038}, {64, 0.019}};
    auto fit = fit_power_law(pts);
    EXPECT_GT(fit.std_errors[0], 0.0);
    EXPECT_GT(fit.std_errors[1], 0.0);
    EXPECT_GT(fit.residual_norm, 0.0);
}

TEST(FitPowerLaw, DomainErrors) {
    std::vector<Point> two{{1, 1}, {2, 0.5}};
    EXPECT_THROW(fit_power_law(two), DomainError);
    std::vector<Point> nonpositive{{1, 1}, {2, 0.0}, {4, 0.25}};
    EXPECT_THROW(fit_power_law(nonpositive), DomainError);
    std::vector<Point> negative_x{{-1, 1}, {2, 0.5}, {4, 0.25}};
    EXPECT_THROW(fit_power_law(negative_x), DomainError);
}

TEST(FitCritical, RecoversNoiselessData) {
    auto pts = critical_data(7.3, 0.159, 1.28);
    auto fit = fit_critical(pts);
    EXPECT_EQ(fit.model, FitModel::Critical);
    EXPECT_LT(rel(fit.param("A"), 7.3), 1e-6);
    EXPECT_LT(rel(fit.param("p_c"), 0.159), 1e-6);
    EXPECT_LT(rel(fit.param("v"), 1.28), 1e-6);
    EXPECT_EQ(fit.points_used, 11u);
}

TEST(FitCritical, RecoversOtherParameterSets) {
    for (auto [a, pc, v] : {std::tuple{2.0, 0.2, 0.8}, std::tuple{12.0, 0.17, 1.6}, std::tuple{1.0, 0.16, 1.0}}) {
        auto fit = fit_critical(critical_data(a, pc, v, 0.005));
        EXPECT_LT(rel(fit.param("A"), a), 1e-6);
        EXPECT_LT(rel(fit.param("p_c"), pc), 1e-6);
        EXPECT_LT(rel(fit.param("v"), v), 1e-6);
    }
}

TEST(FitCritical, Errors) {
    std::vector<Point> zeros;
    for (double x = 0.0; x <= 0.3; x += 0.01) {
        zeros.emplace_back(x, 0.0);
    }
    EXPECT_THROW(fit_critical(zeros), FitError);
    auto sparse = critical_data(7.3, 0.159, 1.28, 0.05);
    EXPECT_THROW(fit_critical(sparse), FitError);
    CriticalFitOptions capped;
    capped.max_iterations = 1;
    EXPECT_THROW(fit_critical(critical_data(7.3, 0.159, 1.28), capped), FitError);
}
