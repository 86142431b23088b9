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

// End-to-end acceptance suite: one pass/fail line per criterion, nonzero
// exit if any criterion fails. The CLI binary path comes in as argv[1].

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "hitrun/densities.hpp"
#include "hitrun/estimators.hpp"
#include "hitrun/hit_and_run.hpp"
#include "hitrun/json_io.hpp"
#include "hitrun/line_sampler.hpp"
#include "hitrun/schedules.hpp"
#include "hitrun/special_functions.hpp"
#include "hitrun/validation.hpp"

using namespace hitrun;

namespace {

struct Harness {
    int failures = 0;

    void report(int index, const std::string& label, bool pass, const std::string& detail,
                double seconds) {
        std::ostringstream line;
        line << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << index << ": " << label
             << "  (" << detail << ", " << std::fixed << seconds << " s)";
        std::cout << line.str() << std::endl;
        if (!pass) ++failures;
    }

    template <typename Fn>
    void run(int index, const std::string& label, Fn&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        bool pass = false;
        std::string detail;
        try {
            pass = fn(detail);
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report(index, label, pass, detail, seconds);
    }
};

Vec make_vec(std::initializer_list<double> values) {
    Vec v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

// --- criterion 1: r* solver ------------------------------------------------

bool criterion_rstar(std::string& detail) {
    bool ok = true;
    const double r2 = r_star(2).r_star;
    ok = ok && std::abs(r2 - std::log(8.0 / 7.0)) <= 1e-9;

    double worst = 0.0;
    for (int d = 1; d <= 500; ++d) {
        const double res = regularized_lower_gamma(0.5 * d, r_star(d).r_star) - 0.125;
        worst = std::max(worst, std::abs(res));
    }
    ok = ok && worst <= 1e-10;

    const double slope = r_star(400).r_star / 400.0;
    ok = ok && slope >= 0.40 && slope <= 0.50;

    detail = "r*(2) err=" + fmt(std::abs(r2 - std::log(8.0 / 7.0))) +
             ", max residual=" + fmt(worst) + ", r*(400)/400=" + fmt(slope);
    return ok;
}

// --- criterion 2: gaussian example -----------------------------------------

bool criterion_gaussian_example(std::string& detail) {
    const ClassParams p = gaussian_class_params(Mat::Identity(2, 2));
    const double R_ref = std::sqrt(2.0) / 2.0;
    const double kappa_ref = 2.0 * std::sqrt(std::exp(1.0));
    const double r_ref = std::sqrt(std::log(8.0 / 7.0));
    bool ok = std::abs(p.R - R_ref) <= 1e-9 && std::abs(p.kappa - kappa_ref) <= 1e-9 &&
              std::abs(p.r - r_ref) <= 1e-9;

    const Density gauss = Density::gaussian(Mat::Identity(2, 2));
    const OracleReport kc =
        check_kappa_condition(gauss, ConvexBody::ball(Vec::Zero(2), 1.0), kappa_ref);
    const double rel = std::abs(kc.statistic / kappa_ref - 1.0);
    ok = ok && kc.pass && rel <= 1e-6;

    detail = "R err=" + fmt(std::abs(p.R - R_ref)) + ", kappa err=" +
             fmt(std::abs(p.kappa - kappa_ref)) + ", r err=" + fmt(std::abs(p.r - r_ref)) +
             ", quadrature ratio rel err=" + fmt(rel);
    return ok;
}

// --- criterion 3: d = 1 one-step exactness ----------------------------------

bool criterion_one_step_d1(std::string& detail) {
    const int n = 100000;
    const double threshold = 1.95 / std::sqrt(static_cast<double>(n));

    const Density unif =
        Density::uniform(ConvexBody::box(Vec::Constant(1, -1.0), Vec::Constant(1, 1.0)));
    RandomStream rng_a(811);
    const Vec start = Vec::Constant(1, 0.9);
    std::vector<double> draws(n);
    for (int i = 0; i < n; ++i) draws[i] = har_step(unif, start, rng_a)[0];
    const double ks_uniform = ks_statistic(
        draws, [](double t) { return std::min(1.0, std::max(0.0, 0.5 * (t + 1.0))); });

    const ConvexBody seg = ConvexBody::box(Vec::Constant(1, -0.5), Vec::Constant(1, 1.5));
    const Density truncated =
        Density::blackbox([](const Vec& v) { return -0.5 * v[0] * v[0]; }, seg);
    RandomStream rng_b(821);
    const Vec start_b = Vec::Constant(1, 0.2);
    for (int i = 0; i < n; ++i) draws[i] = har_step(truncated, start_b, rng_b)[0];
    const double za = norm_cdf(-0.5), zb = norm_cdf(1.5);
    const double ks_gauss = ks_statistic(draws, [za, zb](double t) {
        return (norm_cdf(std::min(std::max(t, -0.5), 1.5)) - za) / (zb - za);
    });

    detail = "KS(uniform)=" + fmt(ks_uniform) + ", KS(trunc normal)=" + fmt(ks_gauss) +
             ", threshold=" + fmt(threshold);
    return ks_uniform < threshold && ks_gauss < threshold;
}

// --- criterion 4: stationarity, reversibility, normalization ----------------

bool criterion_kernel_properties(std::string& detail) {
    bool ok = true;
    std::ostringstream info;

    { // (i) one-step invariance via two-sample KS on projections
        const int n = 100000;
        const double threshold = 1.9495 * std::sqrt(2.0 / n);
        const std::vector<Density> targets = {
            Density::gaussian(Mat::Identity(2, 2)),
            Density::uniform(ConvexBody::ball(Vec::Zero(2), 1.0)),
        };
        const std::vector<Vec> projections = {make_vec({1.0, 0.0}), make_vec({0.0, 1.0}),
                                              make_vec({M_SQRT1_2, M_SQRT1_2})};
        std::uint64_t seed = 831;
        double worst = 0.0;
        for (const Density& rho : targets) {
            RandomStream rng(seed++);
            std::vector<Vec> stepped(n), fresh(n);
            for (int i = 0; i < n; ++i) {
                stepped[i] = har_step(rho, sample_stationary(rho, rng), rng);
                fresh[i] = sample_stationary(rho, rng);
            }
            for (const Vec& proj : projections) {
                std::vector<double> a(n), b(n);
                for (int i = 0; i < n; ++i) {
                    a[i] = proj.dot(stepped[i]);
                    b[i] = proj.dot(fresh[i]);
                }
                worst = std::max(worst, two_sample_ks(a, b));
            }
        }
        ok = ok && worst < threshold;
        info << "max projection KS=" << fmt(worst) << " (thr " << fmt(threshold) << ")";
    }

    { // (ii) detailed balance at 100 random pairs
        const Density unif = Density::uniform(ConvexBody::ball(Vec::Zero(2), 1.0));
        RandomStream rng(853);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Vec x = sample_initial(unif.support(), rng);
            const Vec y = sample_initial(unif.support(), rng);
            if ((x - y).norm() < 1e-8) continue;
            const double lhs = unif.log_density(x) + transition_log_density(unif, x, y);
            const double rhs = unif.log_density(y) + transition_log_density(unif, y, x);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        ok = ok && worst <= 1e-6;
        info << ", balance gap=" << fmt(worst);
    }

    { // (iii) kernel normalization by quadrature
        const Density unif = Density::uniform(ConvexBody::ball(Vec::Zero(2), 1.0));
        const double err = kernel_normalization_error(unif, make_vec({0.3, -0.2}));
        ok = ok && err <= 1e-3;
        info << ", |int H - 1|=" << fmt(err);
    }

    detail = info.str();
    return ok;
}

// --- criterion 5: estimator behavior ----------------------------------------

bool criterion_estimator(std::string& detail) {
    const Density rho = Density::uniform(ConvexBody::ball(Vec::Zero(2), 1.0));
    const IntegrandFn f = [](const Vec& x) { return x[0] > 0.0 ? 1.0 : 0.0; };
    const std::uint64_t n = 10000, n0 = 50;
    bool ok = true;
    std::ostringstream info;

    { // 3-sigma coverage over 100 seeded repetitions
        RandomStream rng(863);
        int within = 0;
        for (int rep = 0; rep < 100; ++rep) {
            RandomStream sub = rng.split();
            const EstimateResult res = multi_run(rho, f, rho.support(), n, n0, sub);
            if (std::abs(res.value - 0.5) <= 0.015) ++within;
        }
        ok = ok && within >= 99;
        info << "within 3sigma: " << within << "/100";
    }

    double mse_base = 0.0;
    { // empirical mse against the theorem-shaped budget
        EstimatorSpec spec{&rho, &f, &rho.support(), EstimatorMode::Multi, n, n0};
        RandomStream rng(877);
        const MseEstimate mse = empirical_mse(spec, 0.5, 200, rng);
        mse_base = mse.mse;

        RandomStream tv_rng(881);
        const int m = 100000;
        std::vector<Vec> states(m), exact(m);
        for (int i = 0; i < m; ++i) {
            RandomStream sub = tv_rng.substream(i);
            states[i] = run_chain(rho, sample_initial(rho.support(), sub), n0, sub).x;
            exact[i] = sample_stationary(rho, sub);
        }
        const double tv_hat = empirical_tv(states, exact);
        const double budget = 1.0 / n + 2.0 * tv_hat + 3.0 * mse.jackknife_se;
        ok = ok && mse.mse <= budget;
        info << ", mse=" << fmt(mse.mse) << " <= budget " << fmt(budget);
    }

    { // doubling n shrinks the mse by roughly half
        EstimatorSpec spec2{&rho, &f, &rho.support(), EstimatorMode::Multi, 2 * n, n0};
        RandomStream rng(887);
        const MseEstimate mse2 = empirical_mse(spec2, 0.5, 200, rng);
        const double ratio = mse2.mse / mse_base;
        ok = ok && ratio >= 0.35 && ratio <= 0.7;
        info << ", doubling ratio=" << fmt(ratio);
    }

    detail = info.str();
    return ok;
}

// --- criterion 6: mixing sanity ----------------------------------------------

bool criterion_mixing(std::string& detail) {
    const Density rho = Density::uniform(ConvexBody::ball(Vec::Zero(2), 1.0));
    RandomStream rng(907);
    const int chains = 100000;
    const Vec x0 = make_vec({0.99, 0.0});
    std::vector<Vec> reached(chains), exact(chains);
    for (int i = 0; i < chains; ++i) {
        RandomStream sub = rng.substream(i);
        reached[i] = run_chain(rho, x0, 200, sub).x;
        exact[i] = sample_stationary(rho, sub);
    }
    const double tv = empirical_tv(reached, exact, 16);
    detail = "TV=" + fmt(tv) + " over 16^2 bins";
    return tv < 0.05;
}

// --- criterion 7: calculator fidelity ----------------------------------------

bool criterion_calculators(std::string& detail) {
    // Independent long-double evaluations, coded directly from the formulas.
    auto n0_bounded = [](int d, long double r, long double R, long double kappa,
                         long double eps) {
        const long double drr = d * R / r;
        const long double l1 = std::log(8.0L * drr * kappa / (eps * eps));
        const long double l2 = std::log(4.0L * kappa / (eps * eps));
        return std::ceil(1e27L * drr * drr * l1 * l1 * l2);
    };
    auto n0_average = [](int d, long double r, long double R, long double kappa,
                         long double eps) {
        const long double drr = d * R / r;
        const long double l1 = std::log(2.0L * drr * kappa / (eps * eps));
        const long double l2 = std::log(kappa / (eps * eps));
        return std::ceil(4e30L * drr * drr * l1 * l1 * l2 * l2 * l2);
    };

    bool ok = true;
    double worst = 0.0;
    RandomStream rng(911);
    int checked = 0;
    while (checked < 1000) {
        const int d = 1 + static_cast<int>(rng.uniform01() * 20.0);
        const double r = rng.uniform(0.05, 2.0);
        const double R = r * rng.uniform(1.0, 50.0);
        if (d * R / r < 3.0) continue;
        const double kappa = std::exp(rng.uniform(std::log(3.0), std::log(1e8)));
        const double eps = rng.uniform(0.005, 0.49);
        const double D = rng.uniform(1.0, 1e4);
        const double n0 = std::floor(rng.uniform(0.0, 1e9));
        const double nn = std::floor(rng.uniform(1.0, 1e30));

        ClassParams pb;
        pb.d = d, pb.r = r, pb.R = R, pb.kappa = kappa, pb.log_kappa = std::log(kappa);
        pb.variant = ClassParams::Variant::Bounded;
        ClassParams pa = pb;
        pa.variant = ClassParams::Variant::Average;

        auto rel = [](double got, long double want) {
            return std::abs(got - (double)want) / std::abs((double)want);
        };
        worst = std::max(worst, rel(schedule_bounded(eps, pb).n0, n0_bounded(d, r, R, kappa, eps)));
        worst = std::max(worst, rel(schedule_average(eps, pa).n0, n0_average(d, r, R, kappa, eps)));

        const long double drr = static_cast<long double>(d) * R / r;
        const long double tve =
            12.0L * drr * D *
            std::pow(std::exp(-1e-9L / std::pow(drr, 2.0L / 3.0L)), std::cbrt((long double)n0));
        worst = std::max(worst, rel(tv_bound_explicit(n0, d, r, R, D).raw, tve));

        const long double lm = std::log(8.0L * drr * D / eps);
        const long double tvm =
            1.5L * eps + 2.0L * D * std::exp(-1e-26L * nn / (8.0L * drr * drr * lm * lm));
        worst = std::max(worst, rel(tv_bound_mixed(nn, d, r, R, D, eps).raw, tvm));

        const long double cond = 1e-13L / (2.0L * drr * std::log(4.0L * drr * D / eps));
        worst = std::max(worst, rel(conductance_lower_bound(d, r, R, D, eps), cond));

        const long double mb = (long double)1.0 / 64.0L + 2.0L * 0.01L;
        worst = std::max(worst, rel(mse_bound(64, 0.01, 1.0), mb));

        const long double gap = 0.25L;
        const long double ge = 4.0L * 0.7L / (128.0L * gap);
        worst = std::max(worst, rel(gap_error_bound(128, 0.25, 0.7, 10.0).mse_bound, ge));
        ++checked;
    }
    ok = ok && worst <= 1e-6;

    // The worked schedule: d=3, r=1, R=2, kappa=100, eps=0.1.
    ClassParams p;
    p.d = 3, p.r = 1.0, p.R = 2.0, p.kappa = 100.0, p.log_kappa = std::log(100.0);
    p.variant = ClassParams::Variant::Bounded;
    const Schedule s = schedule_bounded(0.1, p);
    const long double oracle = n0_bounded(3, 1.0L, 2.0L, 100.0L, 0.1L);
    ok = ok && s.n == 100;
    ok = ok && std::abs(s.n0 - (double)oracle) <= 1e-6 * (double)oracle;
    ok = ok && s.n0 > 6.4e31 && s.n0 < 6.6e31;

    detail = "max rel err=" + fmt(worst) + ", worked example n=" + std::to_string(s.n) +
             " n0=" + fmt(s.n0);
    return ok;
}

// --- criterion 8: CLI determinism ---------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion_cli_determinism(std::string& detail, const std::string& cli) {
    if (cli.empty()) {
        detail = "CLI path not supplied";
        return false;
    }
    Json config;
    config["density"] = {{"type", "uniform"},
                         {"body", {{"type", "ball"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}}};
    config["integrand"] = {{"name", "halfspace"}, {"normal", {1.0, 0.0}}, {"offset", 0.0}};
    config["mode"] = "multi";
    config["n"] = 5000;
    config["n0"] = 25;
    config["reps"] = 4;
    config["seed"] = 20260808;
    config["out"] = "acceptance_cli";
    {
        std::ofstream out("acceptance_cli_config.json");
        out << config.dump(2);
    }
    auto run = [&](const std::string& args) {
        const std::string cmd =
            "'" + cli + "' " + args + " > acceptance_cli_stdout.log 2>acceptance_cli_stderr.log";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    if (run("estimate --config acceptance_cli_config.json --out acc_run --parallel 2") != 0) {
        detail = "CLI invocation failed";
        return false;
    }
    const std::string csv1 = slurp("acc_run.csv");
    const std::string json1 = slurp("acc_run.json");
    if (run("estimate --config acceptance_cli_config.json --out acc_run --parallel 2") != 0) {
        detail = "CLI invocation failed";
        return false;
    }
    const bool identical = !csv1.empty() && csv1 == slurp("acc_run.csv");
    const bool json_identical = json1 == slurp("acc_run.json");
    if (run("estimate --config acceptance_cli_config.json --out acc_run --parallel 1") != 0) {
        detail = "CLI invocation failed";
        return false;
    }
    const bool thread_invariant = csv1 == slurp("acc_run.csv");
    detail = std::string("rerun identical=") + (identical ? "yes" : "NO") +
             ", thread-count invariant=" + (thread_invariant ? "yes" : "NO") +
             ", summary identical=" + (json_identical ? "yes" : "NO");
    return identical && thread_invariant && json_identical;
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    Harness h;

    h.run(1, "r* solver (closed form, residual sweep, linear growth)", criterion_rstar);
    h.run(2, "gaussian example class parameters and kappa identity", criterion_gaussian_example);
    h.run(3, "d = 1 one-step exactness (uniform, truncated normal)", criterion_one_step_d1);
    h.run(4, "stationarity, detailed balance, kernel normalization",
          criterion_kernel_properties);
    h.run(5, "multi-run estimator accuracy and mse scaling", criterion_estimator);
    h.run(6, "mixing from a near-boundary start", criterion_mixing);
    h.run(7, "bound calculators match the high-precision evaluator", criterion_calculators);
    h.run(8, "CLI byte-level determinism and thread-count invariance",
          [&](std::string& detail) { return criterion_cli_determinism(detail, cli); });

    if (h.failures == 0) {
        std::cout << "acceptance: all criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << h.failures << " criterion(s) FAILED" << std::endl;
    return 1;
}
