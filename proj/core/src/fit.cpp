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
#include "forgetsim/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "forgetsim/errors.hpp"

namespace forgetsim {

std::string_view to_string(FitModel model) {
    return model == FitModel::PowerLaw ? "power_law" : "critical";
}

double FitResult::param(std::string_view name) const {
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (names[k] == name) {
            return estimates[k];
        }
    }
    throw ArgumentError("fit has no parameter named " + std::string(name));
}

FitResult fit_power_law(std::span<const Point> points) {
    if (points.size() < 3) {
        throw DomainError("power-law fit needs at least 3 points, got " + std::to_string(points.size()));
    }
    const double m = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto &[x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0)) {
            throw DomainError("power-law fit needs positive data");
        }
        sx += std::log(x);
        sy += std::log(y);
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (const auto &[x, y] : points) {
        sxx += (std::log(x) - mx) * (std::log(x) - mx);
        sxy += (std::log(x) - mx) * (std::log(y) - my);
    }
    if (sxx <= 0.0) {
        throw DomainError("power-law fit needs at least two distinct x values");
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double rss = 0.0;
    for (const auto &[x, y] : points) {
        const double r = std::log(y) - (intercept + slope * std::log(x));
        rss += r * r;
    }
    const double s2 = rss / (m - 2.0);
    const double se_slope = std::sqrt(s2 / sxx);
    const double se_intercept = std::sqrt(s2 * (1.0 / m + mx * mx / sxx));
    const double alpha = std::exp(intercept);

    FitResult fit;
    fit.model = FitModel::PowerLaw;
    fit.names = {"alpha", "v"};
    fit.estimates = {alpha, slope};
    fit.std_errors = {alpha * se_intercept, se_slope};
    fit.residual_norm = std::sqrt(rss);
    fit.points_used = points.size();
    return fit;
}

namespace {

struct CriticalModel {
    const std::vector<Point> &data;

    Eigen::VectorXd residuals(const Eigen::Vector3d &theta) const {
        Eigen::VectorXd r(static_cast<Eigen::Index>(data.size()));
        for (std::size_t k = 0; k < data.size(); ++k) {
            r[static_cast<Eigen::Index>(k)] = data[k].second - value(theta, data[k].first);
        }
        return r;
    }

    static double value(const Eigen::Vector3d &theta, double x) {
        const double gap = theta[1] - x;
        return gap > 0.0 ? theta[0] * std::pow(gap, theta[2]) : 0.0;
    }

    // Jacobian of the model (not the residual).
    Eigen::MatrixXd jacobian(const Eigen::Vector3d &theta) const {
        Eigen::MatrixXd j = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(data.size()), 3);
        for (std::size_t k = 0; k < data.size(); ++k) {
            const double gap = theta[1] - data[k].first;
            if (gap <= 0.0) {
                continue;
            }
            const double p = std::pow(gap, theta[2]);
            const auto row = static_cast<Eigen::Index>(k);
            j(row, 0) = p;
            j(row, 1) = theta[0] * theta[2] * p / gap;
            j(row, 2) = theta[0] * p * std::log(gap);
        }
        return j;
    }
};

}  // namespace

FitResult fit_critical(std::span<const Point> points, const CriticalFitOptions &options) {
    std::vector<Point> window;
    double pc0 = -1.0;
    for (const auto &p : points) {
        if (p.first >= options.window_lo && p.first <= options.window_hi) {
            window.push_back(p);
        }
        if (p.second > options.noise_floor) {
            pc0 = std::max(pc0, p.first);
        }
    }
    std::sort(window.begin(), window.end());
    if (window.size() < 4) {
        throw FitError("critical fit needs >= 4 points in [" + std::to_string(options.window_lo) + ", " +
                       std::to_string(options.window_hi) + "], got " + std::to_string(window.size()));
    }
    const bool any_signal =
        std::any_of(window.begin(), window.end(), [&](const Point &p) { return p.second > options.noise_floor; });
    if (!any_signal || pc0 < 0.0) {
        throw FitError("critical fit: data never rises above the noise floor " + std::to_string(options.noise_floor));
    }
    const double x_max = window.back().first;
    if (pc0 <= x_max) {
        pc0 = x_max + (options.window_hi - options.window_lo) / static_cast<double>(window.size());
    }
    const double gap0 = pc0 - window.front().first;
    Eigen::Vector3d theta(window.front().second / gap0, pc0, 1.0);

    CriticalModel model{window};
    Eigen::VectorXd r = model.residuals(theta);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    std::size_t iter = 0;
    bool converged = false;
    for (; iter < options.max_iterations; ++iter) {
        const Eigen::MatrixXd j = model.jacobian(theta);
        const Eigen::Matrix3d jtj = j.transpose() * j;
        const Eigen::Vector3d g = j.transpose() * r;
        if (g.cwiseAbs().maxCoeff() < 1e-15 || cost < 1e-28) {
            converged = true;
            break;
        }
        bool stepped = false;
        while (lambda < 1e16) {
            Eigen::Matrix3d a = jtj;
            for (int d = 0; d < 3; ++d) {
                a(d, d) += lambda * std::max(jtj(d, d), 1e-12);
            }
            const Eigen::Vector3d delta = a.ldlt().solve(g);
            const Eigen::Vector3d trial = theta + delta;
            const Eigen::VectorXd r_trial = model.residuals(trial);
            const double trial_cost = r_trial.squaredNorm();
            if (std::isfinite(trial_cost) && trial_cost < cost) {
                const double rel_step = delta.cwiseAbs().cwiseQuotient(theta.cwiseAbs().cwiseMax(1e-12)).maxCoeff();
                const double rel_cost = (cost - trial_cost) / std::max(cost, 1e-300);
                theta = trial;
                r = r_trial;
                cost = trial_cost;
                lambda = std::max(lambda / 10.0, 1e-12);
                stepped = true;
                if (rel_step < 1e-13 || rel_cost < 1e-15) {
                    converged = true;
                }
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) {
            // No downhill step exists at any damping: a (local) minimum.
            converged = true;
            break;
        }
        if (converged) {
            ++iter;
            break;
        }
    }
    if (!converged || !theta.allFinite()) {
        std::ostringstream msg;
        msg << "critical fit did not converge after " << iter << " iterations (A=" << theta[0] << ", p_c=" << theta[1]
            << ", v=" << theta[2] << ", cost=" << cost << ")";
        throw FitError(msg.str());
    }

    FitResult fit;
    fit.model = FitModel::Critical;
    fit.names = {"A", "p_c", "v"};
    fit.estimates = {theta[0], theta[1], theta[2]};
    fit.std_errors = {0.0, 0.0, 0.0};
    const double dof = static_cast<double>(window.size()) - 3.0;
    if (dof > 0.0) {
        const Eigen::MatrixXd j = model.jacobian(theta);
        const Eigen::Matrix3d jtj = j.transpose() * j;
        Eigen::FullPivLU<Eigen::Matrix3d> lu(jtj);
        if (lu.isInvertible()) {
            const Eigen::Matrix3d cov = lu.inverse() * (cost / dof);
            for (int d = 0; d < 3; ++d) {
                fit.std_errors[static_cast<std::size_t>(d)] = std::sqrt(std::max(0.0, cov(d, d)));
            }
        }
    }
    fit.residual_norm = std::sqrt(cost);
    fit.points_used = window.size();
    fit.iterations = iter;
    return fit;
}

}  // namespace forgetsim
