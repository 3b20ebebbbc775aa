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
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace forgetsim {

enum class FitModel {
    /// y = alpha * x^v
    PowerLaw,
    /// y = A * (p_c - x)^v for x < p_c, else 0
    Critical,
};

std::string_view to_string(FitModel model);

struct FitResult {
    FitModel model = FitModel::PowerLaw;
    /// Parameter names in estimate order: {alpha, v} or {A, p_c, v}.
    std::vector<std::string> names;
    std::vector<double> estimates;
    std::vector<double> std_errors;
    /// Euclidean norm of the residuals the fit minimized (log space for the
    /// power law).
    double residual_norm = 0.0;
    std::size_t points_used = 0;
    std::size_t iterations = 0;

    double param(std::string_view name) const;
};

using Point = std::pair<double, double>;

/// Least squares of log y against log x. Needs >= 3 points with positive
/// coordinates; throws DomainError otherwise.
FitResult fit_power_law(std::span<const Point> points);

struct CriticalFitOptions {
    double window_lo = 0.05;
    double window_hi = 0.15;
    /// Points above this level count as "not yet purified" when choosing the
    /// initial p_c.
    double noise_floor = 0.01;
    std::size_t max_iterations = 500;
};

/// Levenberg-Marquardt fit of A (p_c - x)^v to the points whose x lies in
/// the window. Initialization: p_c = largest x among all points with
/// y > noise_floor (nudged above the window if needed), v = 1, A from the
/// first window point. Throws FitError for fewer than 4 window points, data
/// at or below the noise floor, or non-convergence.
FitResult fit_critical(std::span<const Point> points, const CriticalFitOptions &options = {});

}  // namespace forgetsim
