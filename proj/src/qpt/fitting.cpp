// Copyright 2026 The qpt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpt/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace qpt {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kGradientTol = 1e-10;
constexpr double kRelativeChangeTol = 1e-12;

struct LmState {
    Eigen::Vector3d params;
    double rss = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;
};

double weighted_rss(const std::vector<double>& deltas, const std::vector<double>& probs,
                    const std::vector<double>& weights, const Eigen::Vector3d& p) {
    double rss = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double r = probs[i] - model_eval(p(0), p(1), p(2), deltas[i]);
        rss += weights[i] * r * r;
    }
    return rss;
}

/// One LM run from the given start. Damping multiplies the normal-equation
/// diagonal: lambda starts at 1e-3, x10 on a rejected step, /10 on an
/// accepted one.
LmState lm_run(const std::vector<double>& deltas, const std::vector<double>& probs,
               const std::vector<double>& weights, const Eigen::Vector3d& start) {
    LmState state;
    state.params = start;
    state.rss = weighted_rss(deltas, probs, weights, state.params);
    state.history.push_back(state.rss);
    double lambda = 1e-3;

    for (state.iterations = 0; state.iterations < kMaxIterations; ++state.iterations) {
        Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
        Eigen::Vector3d gradient = Eigen::Vector3d::Zero();
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            const std::array<double, 3> df =
                model_jacobian(state.params(0), state.params(1), state.params(2), deltas[i]);
            const Eigen::Vector3d jr(-df[0], -df[1], -df[2]);  // d residual / d params
            const double r = probs[i] - model_eval(state.params(0), state.params(1),
                                                   state.params(2), deltas[i]);
            normal += weights[i] * jr * jr.transpose();
            gradient += weights[i] * r * jr;
        }
        state.gradient_norm = gradient.norm();
        if (state.gradient_norm <= kGradientTol) {
            state.converged = true;
            break;
        }

        bool accepted = false;
        for (int attempt = 0; attempt < 60; ++attempt) {
            Eigen::Matrix3d damped = normal;
            for (int d = 0; d < 3; ++d) {
                damped(d, d) += lambda * std::max(normal(d, d), 1e-300);
            }
            const Eigen::Vector3d step = damped.ldlt().solve(-gradient);
            if (!step.allFinite()) {
                lambda *= 10.0;
                continue;
            }
            const Eigen::Vector3d candidate = state.params + step;
            const double rss = weighted_rss(deltas, probs, weights, candidate);
            if (rss <= state.rss) {
                const double relative_change =
                    (state.rss - rss) / std::max(state.rss, std::numeric_limits<double>::min());
                state.params = candidate;
                state.rss = rss;
                state.history.push_back(rss);
                lambda = std::max(lambda / 10.0, 1e-15);
                accepted = true;
                if (relative_change < kRelativeChangeTol) state.converged = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!accepted) {
            // damping exhausted: no downhill step exists at double precision
            state.converged = true;
        }
        if (state.converged) break;
    }
    return state;
}

void canonicalize(Eigen::Vector3d& p) {
    if (p(1) < 0.0) {
        p(1) = -p(1);
        p(2) = -p(2);
    }
    // sin^2 is pi-periodic in its argument; fold c into (-pi/2, pi/2]
    const double pi = std::numbers::pi;
    p(2) = p(2) - pi * std::floor(p(2) / pi + 0.5);
    if (p(2) <= -pi / 2.0) p(2) += pi;
}

}  // namespace

double model_eval(double a, double b, double c, double delta) {
    const double s = std::sin(b * delta / 2.0 - c);
    return 1.0 - a * s * s;
}

double model_eval(const FitParams& params, double delta) {
    return model_eval(params.a, params.b, params.c, delta);
}

std::array<double, 3> model_jacobian(double a, double b, double c, double delta) {
    const double u = b * delta / 2.0 - c;
    const double s = std::sin(u);
    const double s2u = std::sin(2.0 * u);
    return {-s * s, -a * s2u * delta / 2.0, a * s2u};
}

FitParams fit_success_curve(const std::vector<double>& deltas,
                            const std::vector<double>& probabilities,
                            const std::vector<double>* weights) {
    const std::size_t count = deltas.size();
    if (probabilities.size() != count) {
        throw std::invalid_argument("fit_success_curve: deltas and probabilities sizes differ");
    }
    if (count < 4) {
        throw std::invalid_argument("fit_success_curve: need at least 4 data points");
    }
    const auto [min_it, max_it] = std::minmax_element(deltas.begin(), deltas.end());
    if (*max_it - *min_it < 1.0) {
        throw std::invalid_argument("fit_success_curve: deltas must span at least 1 radian");
    }
    std::vector<double> w(count, 1.0);
    if (weights != nullptr) {
        if (weights->size() != count) {
            throw std::invalid_argument("fit_success_curve: weights size mismatch");
        }
        for (std::size_t i = 0; i < count; ++i) {
            if (!((*weights)[i] > 0.0) || !std::isfinite((*weights)[i])) {
                throw std::invalid_argument("fit_success_curve: weights must be finite and > 0");
            }
            w[i] = (*weights)[i];
        }
        // normalize to mean 1: the optimum is scale-invariant and the
        // residual-variance factor restores the absolute scale below
        double mean_w = 0.0;
        for (double v : w) mean_w += v;
        mean_w /= static_cast<double>(count);
        for (double& v : w) v /= mean_w;
    }

    const auto [pmin_it, pmax_it] = std::minmax_element(probabilities.begin(), probabilities.end());
    FitParams result;

    if (*pmax_it - *pmin_it < 1e-14) {
        // constant data: the model reduces to a constant, b and c are
        // unidentifiable
        const double level = probabilities.front();
        result.a = 1.0 - level;
        if (std::abs(result.a) < 1e-14) {
            result.a = 0.0;
            result.b = 1.0;
            result.c = 0.0;
        } else {
            result.b = 0.0;
            result.c = std::numbers::pi / 2.0;  // f == 1 - a sin^2(c) == level
        }
        result.stderr_a = 0.0;
        result.stderr_b = std::numeric_limits<double>::infinity();
        result.stderr_c = std::numeric_limits<double>::infinity();
        result.converged = true;
        result.residual_norm = 0.0;
        result.residual_history = {0.0};
        return result;
    }

    const double a0 = 1.0 - *pmin_it;
    LmState best = lm_run(deltas, probabilities, w, Eigen::Vector3d(a0, 1.0, 0.0));

    // The model is oscillatory in b, so a distant true frequency can strand
    // the default start in a local minimum. If the first run leaves visible
    // structure in the residual, rerun from a deterministic grid of b values
    // and keep the best.
    const double noise_floor = 1e-10 * static_cast<double>(count);
    if (best.rss > noise_floor) {
        for (double b0 = 0.25; b0 <= 3.0 + 1e-9; b0 += 0.25) {
            const LmState candidate =
                lm_run(deltas, probabilities, w, Eigen::Vector3d(a0, b0, 0.0));
            if (candidate.rss < best.rss) best = candidate;
        }
    }

    canonicalize(best.params);
    result.a = best.params(0);
    result.b = best.params(1);
    result.c = best.params(2);
    result.converged = best.converged;
    result.iterations = best.iterations;
    result.gradient_norm = best.gradient_norm;
    result.residual_norm = std::sqrt(best.rss);
    result.residual_history = std::move(best.history);

    // covariance = (J^T W J)^{-1} * rss / (N - 3)
    Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < count; ++i) {
        const std::array<double, 3> df = model_jacobian(result.a, result.b, result.c, deltas[i]);
        const Eigen::Vector3d j(df[0], df[1], df[2]);
        normal += w[i] * j * j.transpose();
    }
    const double dof = static_cast<double>(count) - 3.0;
    const double variance = dof > 0.0 ? best.rss / dof : 0.0;
    const Eigen::Matrix3d covariance =
        normal.fullPivLu().isInvertible()
            ? Eigen::Matrix3d(normal.inverse() * variance)
            : Eigen::Matrix3d::Constant(std::numeric_limits<double>::infinity());
    result.stderr_a = std::sqrt(std::max(covariance(0, 0), 0.0));
    result.stderr_b = std::sqrt(std::max(covariance(1, 1), 0.0));
    result.stderr_c = std::sqrt(std::max(covariance(2, 2), 0.0));
    return result;
}

}  // namespace qpt
