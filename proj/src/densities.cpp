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

#include "hitrun/densities.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "hitrun/special_functions.hpp"

namespace hitrun {

namespace {

void check_factor(const Mat& factor) {
    if (factor.rows() != factor.cols())
        throw std::invalid_argument("gaussian: factor must be square");
    for (Eigen::Index i = 0; i < factor.rows(); ++i) {
        if (!(factor(i, i) > 0.0))
            throw std::invalid_argument("gaussian: factor diagonal must be strictly positive");
        for (Eigen::Index j = i + 1; j < factor.cols(); ++j)
            if (factor(i, j) != 0.0)
                throw std::invalid_argument("gaussian: factor must be lower triangular");
    }
}

Mat cholesky(const Mat& sigma) {
    if (sigma.rows() != sigma.cols()) throw std::invalid_argument("gaussian: sigma must be square");
    if (!sigma.isApprox(sigma.transpose(), 1e-12))
        throw std::invalid_argument("gaussian: sigma must be symmetric");
    Eigen::LLT<Mat> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("gaussian: sigma is not positive definite");
    return llt.matrixL();
}

} // namespace

Density Density::gaussian(const Mat& sigma) { return gaussian_from_factor(cholesky(sigma)); }

Density Density::gaussian_from_factor(Mat factor) {
    check_factor(factor);
    Density rho;
    rho.kind_ = Kind::Gaussian;
    rho.support_ = ConvexBody::fullspace(static_cast<int>(factor.rows()));
    rho.factor_ = std::move(factor);
    return rho;
}

Density Density::uniform(ConvexBody body) {
    if (!body.is_bounded()) throw std::invalid_argument("uniform: body must be bounded");
    Density rho;
    rho.kind_ = Kind::Uniform;
    rho.support_ = std::move(body);
    return rho;
}

Density Density::linear_tilt(Vec a, ConvexBody body) {
    if (a.size() != body.dim()) throw std::invalid_argument("linear_tilt: dimension mismatch");
    if (!body.is_bounded()) throw std::invalid_argument("linear_tilt: body must be bounded");
    Density rho;
    rho.kind_ = Kind::LinearTilt;
    rho.support_ = std::move(body);
    rho.tilt_ = std::move(a);
    return rho;
}

Density Density::blackbox(std::function<double(const Vec&)> log_rho, ConvexBody body) {
    if (!log_rho) throw std::invalid_argument("blackbox: evaluator required");
    Density rho;
    rho.kind_ = Kind::Blackbox;
    rho.support_ = std::move(body);
    rho.log_rho_ = std::move(log_rho);
    return rho;
}

double Density::log_density(const Vec& x) const {
    if (x.size() != dim()) throw std::invalid_argument("log_density: dimension mismatch");
    if (!support_.contains(x)) return -kInf;
    switch (kind_) {
    case Kind::Gaussian: {
        const Vec z = factor_.triangularView<Eigen::Lower>().solve(x);
        return -0.5 * z.squaredNorm();
    }
    case Kind::Uniform:
        return 0.0;
    case Kind::LinearTilt:
        return -tilt_.dot(x);
    case Kind::Blackbox:
        return log_rho_(x);
    }
    return -kInf;
}

LineDensity Density::restrict_to_line(const Vec& x, const Vec& u) const {
    if (!support_.contains(x)) throw std::invalid_argument("restrict_to_line: x outside support");
    LineDensity ld;
    ld.domain = support_.chord(x, u);
    switch (kind_) {
    case Kind::Gaussian: {
        // With p = L^{-1} x and q = L^{-1} u the restriction satisfies
        // log rho(x + s u) = -(|p|^2 + 2 s p.q + s^2 |q|^2)/2, a 1-D gaussian
        // with mean -(p.q)/|q|^2 and variance 1/|q|^2.
        const Vec p = factor_.triangularView<Eigen::Lower>().solve(x);
        const Vec q = factor_.triangularView<Eigen::Lower>().solve(u);
        const double qq = q.squaredNorm();
        const double pq = p.dot(q);
        const double pp = p.squaredNorm();
        ld.family = LineDensity::Family::Gaussian1D;
        ld.gauss = Gaussian1D{-pq / qq, 1.0 / std::sqrt(qq)};
        ld.log_eval = [pp, pq, qq](double s) {
            return -0.5 * (pp + 2.0 * s * pq + s * s * qq);
        };
        break;
    }
    case Kind::Uniform:
        ld.family = LineDensity::Family::Uniform;
        ld.log_eval = [](double) { return 0.0; };
        break;
    case Kind::LinearTilt: {
        const double level = -tilt_.dot(x);
        const double slope = -tilt_.dot(u);
        ld.family = LineDensity::Family::Generic;
        ld.log_eval = [level, slope](double s) { return level + slope * s; };
        break;
    }
    case Kind::Blackbox: {
        const auto eval = log_rho_;
        Vec base = x;
        Vec dir = u;
        ld.family = LineDensity::Family::Generic;
        ld.log_eval = [eval, base, dir](double s) { return eval(base + s * dir); };
        break;
    }
    }
    return ld;
}

Vec Density::sample_exact(RandomStream& rng) const {
    if (kind_ != Kind::Gaussian)
        throw std::runtime_error("sample_exact: available for the gaussian variant only");
    Vec z(dim());
    for (int i = 0; i < dim(); ++i) z[i] = rng.normal();
    return factor_ * z;
}

ClassParams gaussian_class_params(const Mat& sigma) {
    return gaussian_class_params_from_factor(cholesky(sigma));
}

ClassParams gaussian_class_params_from_factor(const Mat& factor) {
    check_factor(factor);
    const int d = static_cast<int>(factor.rows());
    const Mat sigma = factor * factor.transpose();

    Eigen::SelfAdjointEigenSolver<Mat> eig(sigma);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("gaussian_class_params: eigen decomposition failed");
    const double lambda_min = eig.eigenvalues().minCoeff();
    if (!(lambda_min > 0.0))
        throw std::invalid_argument("gaussian_class_params: sigma is not positive definite");

    double log_det = 0.0;
    for (int i = 0; i < d; ++i) log_det += 2.0 * std::log(factor(i, i));

    ClassParams params;
    params.d = d;
    params.R = 0.5 * std::sqrt(sigma.trace());
    params.r = std::sqrt(lambda_min * r_star(d).r_star);
    params.log_kappa = 0.5 / lambda_min + std::lgamma(0.5 * d + 1.0) +
                       0.5 * d * std::log(2.0) + 0.5 * log_det;
    params.kappa = std::exp(params.log_kappa); // may overflow to inf for large d
    params.variant = ClassParams::Variant::Average;
    params.G = ConvexBody::ball(Vec::Zero(d), 1.0);
    return params;
}

} // namespace hitrun
