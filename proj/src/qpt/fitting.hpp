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

#ifndef QPT_FITTING_HPP
#define QPT_FITTING_HPP

#include <array>
#include <vector>

namespace qpt {

/// Parameters of the success-probability model f(Delta) = 1 - a sin^2(b Delta / 2 - c),
/// with standard errors from the Jacobian at the optimum scaled by the
/// residual variance. (a, b, c) and (a, -b, -c) are the same curve; fits are
/// canonicalized to b >= 0 and c in (-pi/2, pi/2]. Unidentifiable parameters
/// (constant data) are flagged with infinite standard errors.
struct FitParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double stderr_a = 0.0;
    double stderr_b = 0.0;
    double stderr_c = 0.0;
    double residual_norm = 0.0;  // sqrt of the weighted residual sum of squares
    bool converged = false;
    int iterations = 0;
    double gradient_norm = 0.0;
    std::vector<double> residual_history;  // weighted RSS after each accepted step
};

/// Levenberg-Marquardt fit of the model to (deltas, probabilities) with
/// analytic Jacobian. Weights default to uniform; when supplied they are
/// interpreted as 1/sigma_i^2 factors (any overall scale cancels).
/// Needs >= 4 points spanning at least 1 radian in delta.
FitParams fit_success_curve(const std::vector<double>& deltas,
                            const std::vector<double>& probabilities,
                            const std::vector<double>* weights = nullptr);

/// 1 - a sin^2(b delta / 2 - c).
double model_eval(const FitParams& params, double delta);
double model_eval(double a, double b, double c, double delta);

/// Partial derivatives of the model value with respect to (a, b, c).
std::array<double, 3> model_jacobian(double a, double b, double c, double delta);

}  // namespace qpt

#endif  // QPT_FITTING_HPP
