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

// Compares the OpenMP multi-run kernel against the serial reference on the
// uniform-ball and gaussian testbeds, and asserts bit-identical results.

#include <chrono>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hitrun/densities.hpp"
#include "hitrun/estimators.hpp"

using namespace hitrun;

namespace {

double time_seconds(const std::function<EstimateResult()>& fn, EstimateResult& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_case(const char* name, const Density& rho, const ConvexBody& G, std::uint64_t n,
             std::uint64_t n0) {
    const IntegrandFn f = [](const Vec& x) { return std::tanh(x[0]); };

    RandomStream serial_rng(4242), parallel_rng(4242);
    EstimateResult serial_res, parallel_res;
    const double t_serial = time_seconds(
        [&] { return multi_run_serial(rho, f, G, n, n0, serial_rng); }, serial_res);
    const double t_parallel = time_seconds(
        [&] { return multi_run(rho, f, G, n, n0, parallel_rng, 0); }, parallel_res);

    bool identical = serial_res.value == parallel_res.value &&
                     serial_res.kernel_steps == parallel_res.kernel_steps;
    for (std::size_t i = 0; identical && i < serial_res.per_sample_values.size(); ++i)
        identical = serial_res.per_sample_values[i] == parallel_res.per_sample_values[i];

    std::cout << name << ": n=" << n << " n0=" << n0 << "  serial " << t_serial
              << " s,  parallel " << t_parallel << " s,  speedup "
              << (t_parallel > 0.0 ? t_serial / t_parallel : 0.0)
              << (identical ? "  [results identical]" : "  [RESULT MISMATCH]") << "\n";
    return identical ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t n = 20000, n0 = 50;
    if (argc > 1) n = std::strtoull(argv[1], nullptr, 10);
    if (argc > 2) n0 = std::strtoull(argv[2], nullptr, 10);
#ifdef _OPENMP
    std::cout << "OpenMP threads available: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without OpenMP; both paths run serially\n";
#endif

    int rc = 0;
    const ConvexBody ball = ConvexBody::ball(Vec::Zero(2), 1.0);
    rc |= run_case("uniform ball d=2", Density::uniform(ball), ball, n, n0);

    Mat sigma(3, 3);
    sigma << 2.0, 0.4, 0.0, 0.4, 1.0, 0.2, 0.0, 0.2, 1.5;
    rc |= run_case("gaussian d=3", Density::gaussian(sigma),
                   ConvexBody::ball(Vec::Zero(3), 1.0), n / 4, n0);
    return rc;
}
