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

// Batch front end: estimate, schedule, rstar, gaussian-params, validate.
// Exit status: 0 success, 2 configuration error, 3 oracle failure.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "hitrun/densities.hpp"
#include "hitrun/estimators.hpp"
#include "hitrun/integrands.hpp"
#include "hitrun/json_io.hpp"
#include "hitrun/schedules.hpp"
#include "hitrun/special_functions.hpp"
#include "hitrun/validation.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitOracleFailure = 3;

// Largest burn-in this front end will actually execute; theorem schedules
// exceed it by twenty orders of magnitude and are reported, not run.
constexpr double kRunnableStepLimit = 1e12;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

hitrun::Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    hitrun::Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("JSON parse error in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

hitrun::ConvexBody default_start_set(const hitrun::Density& rho) {
    if (rho.support().is_bounded()) return rho.support();
    return hitrun::ConvexBody::ball(hitrun::Vec::Zero(rho.dim()), 1.0);
}

hitrun::ClassParams class_params_from_json(const hitrun::Json& j, int d) {
    hitrun::ClassParams params;
    params.d = d;
    params.r = j.at("r").get<double>();
    params.R = j.at("R").get<double>();
    if (j.contains("log_kappa")) {
        params.log_kappa = j.at("log_kappa").get<double>();
        params.kappa = std::exp(params.log_kappa);
    } else {
        params.kappa = j.at("kappa").get<double>();
        params.log_kappa = std::log(params.kappa);
    }
    const std::string variant = j.value("variant", std::string("bounded"));
    if (variant == "bounded")
        params.variant = hitrun::ClassParams::Variant::Bounded;
    else if (variant == "average")
        params.variant = hitrun::ClassParams::Variant::Average;
    else
        throw std::invalid_argument("schedule variant must be 'bounded' or 'average'");
    return params;
}

int cmd_estimate(const std::string& config_path, std::optional<std::uint64_t> seed_override,
                 std::optional<std::string> out_override, int parallel) {
    hitrun::ExperimentConfig config = hitrun::config_from_json(read_json_file(config_path));
    if (seed_override) config.seed = *seed_override;
    if (out_override) config.out = *out_override;

    const hitrun::Density rho = hitrun::density_from_json(config.density);
    const hitrun::ConvexBody G =
        config.G ? hitrun::body_from_json(*config.G) : default_start_set(rho);
    const hitrun::IntegrandFn f = hitrun::make_integrand(config.integrand, rho.dim());

    std::uint64_t n, n0;
    if (config.schedule) {
        const hitrun::ClassParams params = class_params_from_json(*config.schedule, rho.dim());
        const double eps = config.schedule->at("epsilon").get<double>();
        const hitrun::Schedule plan = params.variant == hitrun::ClassParams::Variant::Bounded
                                          ? hitrun::schedule_bounded(eps, params)
                                          : hitrun::schedule_average(eps, params);
        if (plan.n0 > kRunnableStepLimit)
            throw std::invalid_argument(
                "schedule-derived n0 = " + format_double(plan.n0) +
                " exceeds the runnable step budget; the theorem constants make these "
                "plans astronomically large. Use the `schedule` subcommand to inspect "
                "them and give explicit n/n0 to run an experiment.");
        n = plan.n;
        n0 = static_cast<std::uint64_t>(plan.n0);
    } else {
        n = *config.n;
        n0 = *config.n0;
    }

    std::string csv = "rep,value,n,n0,seed\n";
    std::string timing_csv = "rep,wall_time_ms\n";
    std::vector<double> values(config.reps);
    std::uint64_t clamp_warnings = 0;
    const hitrun::RandomStream master(config.seed);
    for (int rep = 0; rep < config.reps; ++rep) {
        hitrun::RandomStream stream = master.substream(rep);
        const auto t0 = std::chrono::steady_clock::now();
        const hitrun::EstimateResult res =
            config.mode == hitrun::EstimatorMode::Multi
                ? hitrun::multi_run(rho, f, G, n, n0, stream, parallel)
                : hitrun::single_run(rho, f, G, n, n0, stream);
        const auto t1 = std::chrono::steady_clock::now();
        values[rep] = res.value;
        clamp_warnings += res.clamp_warnings;
        csv += std::to_string(rep) + "," + format_double(res.value) + "," + std::to_string(n) +
               "," + std::to_string(n0) + "," + std::to_string(res.seed) + "\n";
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        timing_csv += std::to_string(rep) + "," + format_double(ms) + "\n";
    }

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= config.reps;

    hitrun::Json summary;
    summary["config"] = hitrun::config_to_json(config);
    summary["n"] = n;
    summary["n0"] = n0;
    summary["reps"] = config.reps;
    summary["mean"] = mean;
    summary["clamp_warnings"] = clamp_warnings;
    if (config.reference) {
        double mse = 0.0;
        for (double v : values) mse += (v - *config.reference) * (v - *config.reference);
        mse /= config.reps;
        summary["reference"] = *config.reference;
        summary["empirical_mse"] = mse;
    }

    write_text_file(config.out + ".csv", csv);
    write_text_file(config.out + ".json", summary.dump(2) + "\n");
    // Wall times vary run to run and would break byte-level reproducibility
    // of the result payloads, so they go to a sidecar file.
    write_text_file(config.out + "_timing.csv", timing_csv);
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_schedule(double eps, const std::string& variant, int d, double r, double R,
                 std::optional<double> kappa, std::optional<double> log_kappa) {
    hitrun::ClassParams params;
    params.d = d;
    params.r = r;
    params.R = R;
    if (log_kappa) {
        params.log_kappa = *log_kappa;
        params.kappa = std::exp(*log_kappa);
    } else if (kappa) {
        params.kappa = *kappa;
        params.log_kappa = std::log(*kappa);
    } else {
        throw std::invalid_argument("schedule: give --kappa or --log-kappa");
    }
    params.variant = variant == "average" ? hitrun::ClassParams::Variant::Average
                                          : hitrun::ClassParams::Variant::Bounded;

    const hitrun::Schedule plan = params.variant == hitrun::ClassParams::Variant::Bounded
                                      ? hitrun::schedule_bounded(eps, params)
                                      : hitrun::schedule_average(eps, params);

    hitrun::Json j;
    j["n"] = plan.n;
    j["n0"] = plan.n0;
    j["cost"] = plan.cost;
    j["impractical"] = plan.impractical;
    std::cout << j.dump(2) << "\n";

    const double drr = d * R / r;
    std::cerr << "derivation (" << variant << "-support multi-run plan):\n"
              << "  n  = ceil(eps^-2) = " << plan.n << "\n";
    if (params.variant == hitrun::ClassParams::Variant::Bounded) {
        std::cerr << "  n0 = ceil(1e27 (dR/r)^2 log^2(8 dR/r kappa eps^-2) log(4 kappa eps^-2))\n"
                  << "       with dR/r = " << drr << ", log kappa = " << params.log_kappa
                  << " -> " << format_double(plan.n0) << "\n";
    } else {
        std::cerr << "  n0 = ceil(4e30 (dR/r)^2 log^2(2 dR/r kappa eps^-2) log^3(kappa eps^-2))\n"
                  << "       with dR/r = " << drr << ", log kappa = " << params.log_kappa
                  << " -> " << format_double(plan.n0) << "\n";
    }
    std::cerr << "  cost = n * n0 = " << format_double(plan.cost)
              << (plan.impractical ? "  [impractical: exceeds 2^63 - 1 steps]" : "") << "\n";
    return 0;
}

int cmd_rstar(int d_max, const std::optional<std::string>& out) {
    if (d_max < 1) throw std::invalid_argument("rstar: --dmax must be >= 1");
    std::string csv = "d,r_star\n";
    for (int d = 1; d <= d_max; ++d)
        csv += std::to_string(d) + "," + format_double(hitrun::r_star(d).r_star) + "\n";
    if (out)
        write_text_file(*out, csv);
    else
        std::cout << csv;
    return 0;
}

int cmd_gaussian_params(const std::string& sigma_path) {
    const hitrun::Mat sigma = hitrun::mat_from_json(read_json_file(sigma_path));
    const hitrun::ClassParams params = hitrun::gaussian_class_params(sigma);
    hitrun::Json j;
    j["d"] = params.d;
    j["r"] = params.r;
    j["R"] = params.R;
    j["kappa"] = params.kappa;
    j["log_kappa"] = params.log_kappa;
    // kappa grows exponentially with d; past 1e30 report it as log-scale only.
    j["kappa_overflow_prone"] = !std::isfinite(params.kappa) || params.log_kappa > 30.0 * std::log(10.0);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_validate(std::uint64_t seed, const std::string& out) {
    const std::vector<hitrun::OracleReport> reports = hitrun::run_oracle_suite(seed);

    std::string csv = "name,statistic,threshold,pass,detail\n";
    hitrun::Json j = hitrun::Json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        std::string detail = r.detail;
        for (char& c : detail)
            if (c == ',') c = ';';
        csv += r.name + "," + format_double(r.statistic) + "," + format_double(r.threshold) +
               "," + (r.pass ? "1" : "0") + "," + detail + "\n";
        hitrun::Json row;
        row["name"] = r.name;
        row["statistic"] = r.statistic;
        row["threshold"] = r.threshold;
        row["pass"] = r.pass;
        row["detail"] = r.detail;
        j.push_back(row);
        std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.name
                  << "  statistic=" << format_double(r.statistic)
                  << "  threshold=" << format_double(r.threshold) << "\n";
    }
    write_text_file(out + ".csv", csv);
    write_text_file(out + ".json", j.dump(2) + "\n");
    if (!all_pass) {
        std::cerr << "oracle suite FAILED\n";
        return kExitOracleFailure;
    }
    std::cout << "oracle suite passed (" << reports.size() << " checks)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hit-and-run estimation of expectations under non-normalized "
                 "log-concave densities, with bound calculators and a validation suite"};
    app.require_subcommand(1);

    // estimate
    auto* estimate = app.add_subcommand("estimate", "run a configured experiment");
    std::string config_path;
    estimate->add_option("--config", config_path, "experiment config JSON")->required();
    std::optional<std::uint64_t> seed_override;
    estimate->add_option("--seed", seed_override, "override the config seed");
    std::optional<std::string> out_override;
    estimate->add_option("--out", out_override, "override the output base path");
    int parallel = 0;
    estimate->add_option("--parallel", parallel, "worker threads (0 = all cores)");

    // schedule
    auto* schedule = app.add_subcommand("schedule", "theorem-derived (n, n0) plan");
    double eps = 0.1;
    schedule->add_option("--eps", eps, "target accuracy in (0, 1/2)")->required();
    std::string variant = "bounded";
    schedule->add_option("--variant", variant, "bounded | average")
        ->check(CLI::IsMember({"bounded", "average"}));
    int sd = 1;
    double sr = 1.0, sR = 1.0;
    std::optional<double> kappa, log_kappa;
    schedule->add_option("--d", sd, "dimension")->required();
    schedule->add_option("--r", sr, "level-set ball radius r")->required();
    schedule->add_option("--R", sR, "spread radius R")->required();
    schedule->add_option("--kappa", kappa, "warm-start ratio kappa");
    schedule->add_option("--log-kappa", log_kappa, "log kappa (for very large kappa)");

    // rstar
    auto* rstar = app.add_subcommand("rstar", "table of r*(d) for d = 1..dmax");
    int d_max = 100;
    rstar->add_option("--dmax", d_max, "largest dimension")->required();
    std::optional<std::string> rstar_out;
    rstar->add_option("--out", rstar_out, "CSV output path (default stdout)");

    // gaussian-params
    auto* gp = app.add_subcommand("gaussian-params", "class parameters of a gaussian density");
    std::string sigma_path;
    gp->add_option("--sigma", sigma_path, "covariance matrix JSON file")->required();

    // validate
    auto* validate = app.add_subcommand("validate", "run the oracle suite");
    std::uint64_t vseed = 20260808ull;
    validate->add_option("--seed", vseed, "suite seed");
    std::string vout = "validation_report";
    validate->add_option("--out", vout, "report base path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (estimate->parsed())
            return cmd_estimate(config_path, seed_override, out_override, parallel);
        if (schedule->parsed())
            return cmd_schedule(eps, variant, sd, sr, sR, kappa, log_kappa);
        if (rstar->parsed()) return cmd_rstar(d_max, rstar_out);
        if (gp->parsed()) return cmd_gaussian_params(sigma_path);
        if (validate->parsed()) return cmd_validate(vseed, vout);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
