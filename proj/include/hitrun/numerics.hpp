// Copyright (c) 2026 the hitrun authors
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

#pragma once

#include <functional>
#include <vector>

namespace hitrun {

/// Compensated accumulator; the sum is independent of grouping at double
/// precision for the magnitudes used here.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

struct GaussLegendreRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights; // sum to 2
};

/// n-point Gauss-Legendre rule; rules are cached per n.
const GaussLegendreRule& gauss_legendre(int n);

/// Integrates f on [a, b] with the cached n-point rule.
double gl_integrate(const std::function<double(double)>& f, double a, double b, int n);

/// Adaptive Simpson quadrature on [a, b].
/// Recurses until the local error estimate meets rel_tol against the running
/// value (with an absolute floor), throws on exceeding max_depth.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth = 48);

} // namespace hitrun
