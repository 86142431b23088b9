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
#include <memory>

#include "hitrun/geometry.hpp"
#include "hitrun/rng.hpp"

namespace hitrun {

/// One-dimensional restriction of a density to a chord.
struct Gaussian1D {
    double mean = 0.0;
    double sd = 1.0;
};

struct LineDensity {
    enum class Family { Gaussian1D, Uniform, Generic };

    Interval domain;
    std::function<double(double)> log_eval; // log g(s), concave on the domain
    Family family = Family::Generic;
    Gaussian1D gauss; // valid when family == Gaussian1D
};

/// Class parameters (d, r, R, kappa) of the bounded / average-bounded
/// log-concave density classes, together with the warm-start set G.
struct ClassParams {
    enum class Variant { Bounded, Average };

    int d = 0;
    double r = 0.0;
    double R = 0.0;
    double kappa = 0.0;
    double log_kappa = 0.0; // kept separately: kappa overflows for large d
    Variant variant = Variant::Bounded;
    ConvexBody G = ConvexBody::fullspace(1);
};

/// Non-normalized log-concave density with its support body.
///
/// Gaussians are held as a lower-triangular factor L with Sigma = L L^T so
/// that applications of Sigma^{-1} are triangular solves.
class Density {
public:
    enum class Kind { Gaussian, Uniform, LinearTilt, Blackbox };

    static Density gaussian(const Mat& sigma);
    static Density gaussian_from_factor(Mat factor);
    static Density uniform(ConvexBody body);
    /// rho(x) = exp(-a . x) on the body.
    static Density linear_tilt(Vec a, ConvexBody body);
    /// Caller asserts concavity of log_rho; it is spot-checked by tests, not
    /// proven. The body must provide analytic chords.
    static Density blackbox(std::function<double(const Vec&)> log_rho, ConvexBody body);

    Kind kind() const { return kind_; }
    int dim() const { return support_.dim(); }
    const ConvexBody& support() const { return support_; }

    /// log rho(x); -inf outside the support.
    double log_density(const Vec& x) const;

    /// Restriction to the chord through x in direction u, with the exact
    /// family tag where one exists (gaussian -> 1-D gaussian, uniform ->
    /// uniform, otherwise generic).
    LineDensity restrict_to_line(const Vec& x, const Vec& u) const;

    /// Exact stationary draw; available for the gaussian variant only (the
    /// uniform variant is sampled through sample_initial on its body).
    bool has_exact_sampler() const { return kind_ == Kind::Gaussian; }
    Vec sample_exact(RandomStream& rng) const;

    // Gaussian accessors.
    const Mat& factor() const { return factor_; }
    Mat sigma() const { return factor_ * factor_.transpose(); }
    const Vec& tilt() const { return tilt_; }

private:
    Density() : support_(ConvexBody::fullspace(1)) {}

    Kind kind_ = Kind::Uniform;
    ConvexBody support_;
    Mat factor_; // gaussian
    Vec tilt_;   // linear tilt coefficient
    std::function<double(const Vec&)> log_rho_; // blackbox
};

/// Class parameters for the Gaussian density exp(-x^T Sigma^{-1} x / 2):
/// r = sqrt(lambda_min r*(d)), R = sqrt(tr Sigma)/2,
/// kappa = exp(1/(2 lambda_min)) Gamma(d/2+1) 2^{d/2} sqrt(det Sigma),
/// average-bounded variant with G the unit ball.
ClassParams gaussian_class_params(const Mat& sigma);
ClassParams gaussian_class_params_from_factor(const Mat& factor);

} // namespace hitrun
