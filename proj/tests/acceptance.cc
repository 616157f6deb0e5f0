// Copyright 2026 The wfsim Authors
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

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "wf/channel.h"
#include "wf/cli.h"
#include "wf/friendliness.h"
#include "wf/oracle.h"
#include "wf/scenarios.h"
#include "wf/validate.h"

using namespace wf;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
const double kInvSqrt2 = 1.0 / kSqrt2;
constexpr auto kN0 = MessageOutcome::kZero;
constexpr auto kN1 = MessageOutcome::kOne;
constexpr std::uint64_t kSeed = 20230601;

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char *format, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, format, a, b);
    return buf;
}

Outcome ac1() {
    auto start = Clock::now();
    double model = chsh_value(DensityMatrix::pure(extended_state()));
    double oracle_value = oracle::chsh(false, std::nullopt).overall;
    double elapsed = seconds_since(start);
    double dev = std::max(std::abs(model - 2 * kSqrt2), std::abs(oracle_value - 2 * kSqrt2));
    return {dev < 1e-12 && elapsed < 1.0, fmt("deviation=%.3e runtime=%.3fs", dev, elapsed)};
}

Outcome ac2() {
    double model = chsh_value(DensityMatrix::pure(extended_record_state()));
    double oracle_value = oracle::chsh(true, std::nullopt).overall;
    double dev = std::max(std::abs(model - kSqrt2), std::abs(oracle_value - kSqrt2));
    return {dev < 1e-12, fmt("value=%.15f deviation=%.3e", model, dev)};
}

Outcome ac3() {
    auto grid = uniform_theta_grid(181);
    double worst = 0.0;
    for (double phi : {0.0, kPi / 4, kPi / 2, kPi}) {
        for (const auto &row : sweep_chsh(phi, grid)) {
            double sign = row.n == kN0 ? 1.0 : -1.0;
            double expected = kSqrt2 + sign * kSqrt2 * std::cos(phi) * std::sin(2 * row.theta);
            double dev = std::abs(row.value - expected);
            if (!(dev <= worst)) {
                worst = dev;
            }
        }
    }
    // Curve shape at phi = 0: the n = 0 peak and the n = 1 trough sit at pi/4.
    auto rows = sweep_chsh(0.0, grid);
    bool shape = std::abs(grid[45] - kPi / 4) < 1e-15 && std::abs(rows[90].value - 2 * kSqrt2) < 1e-12 &&
                 std::abs(rows[91].value) < 1e-12;
    for (std::size_t i = 0; i < rows.size(); i += 2) {
        shape = shape && rows[i].value <= rows[90].value + 1e-12 && rows[i + 1].value >= rows[91].value - 1e-12;
    }
    return {worst < 1e-12 && shape, fmt("max_deviation=%.3e peak_at_pi/4=%.0f", worst, shape ? 1.0 : 0.0)};
}

Outcome ac4() {
    SourceAmplitudes src(kInvSqrt2, kInvSqrt2);
    WignerBasis wb(kInvSqrt2, kInvSqrt2);
    auto grid = uniform_theta_grid(181);
    auto rows = sweep_partial_collapse(src, wb, 0.0, grid);
    double worst = 0.0;
    for (const auto &row : rows) {
        oracle::SimpleSetup setup{kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2, oracle::RecordKind::kWhichOutcome,
                                  oracle::ChannelAngles{row.theta, 0.0}};
        auto steps = oracle::simple_pipeline(setup);
        double reference = oracle::run_pipeline(steps).conditioned_on("n", 0).at({0});
        double model = row.p_w_given_n[0][0];
        double formula = 0.5 + 0.5 * std::sin(2 * row.theta);
        for (double dev : {std::abs(model - reference), std::abs(model - formula)}) {
            if (!(dev <= worst)) {
                worst = dev;
            }
        }
    }
    bool endpoints =
        std::abs(rows[0].p_w_given_n[0][0] - 0.5) < 1e-12 && std::abs(rows[45].p_w_given_n[0][0] - 1.0) < 1e-12;
    return {worst < 1e-12 && endpoints,
            fmt("max_deviation=%.3e p(+|0) at pi/4=%.15f", worst, rows[45].p_w_given_n[0][0])};
}

Outcome ac5() {
    CaseGenerator gen(kSeed);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto c = gen.next();
        double dev = joint_probs_wn(c.src, c.wb, c.params).marginal("w").max_abs_diff(collapse_probs(c.src, c.wb));
        if (!(dev <= worst)) {
            worst = dev;
        }
    }
    return {worst < 1e-12, fmt("trials=1000 max_deviation=%.3e", worst)};
}

Outcome ac6() {
    CaseGenerator gen(kSeed + 1);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        double dev = message_basis(gen.next().params).completeness_deviation();
        if (!(dev <= worst)) {
            worst = dev;
        }
    }
    return {worst < 1e-12, fmt("trials=1000 max_deviation=%.3e", worst)};
}

Outcome ac7() {
    SourceAmplitudes src(kInvSqrt2, kInvSqrt2);
    WignerBasis wb(kInvSqrt2, kInvSqrt2);
    double gap = unitary_probs(src, wb).at({0}) - collapse_probs(src, wb).at({0});
    double recorded = record_joint_probs(src, wb).marginal("w").max_abs_diff(collapse_probs(src, wb));
    oracle::SimpleSetup setup{kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2, oracle::RecordKind::kWhichOutcome,
                              std::nullopt};
    auto steps = oracle::simple_pipeline(setup);
    double oracle_recorded = oracle::run_pipeline(steps).marginal("w").max_abs_diff(collapse_probs(src, wb));
    double agree = std::max(recorded, oracle_recorded);
    return {gap >= 0.4 && agree < 1e-12, fmt("no_record_gap=%.15f record_deviation=%.3e", gap, agree)};
}

Outcome ac8() {
    auto start = Clock::now();
    std::ostringstream out, err;
    std::vector<std::string> args{"validate"};
    int code = cli::run(args, out, err);
    double elapsed = seconds_since(start);
    return {code == cli::kExitOk && elapsed < 10.0, fmt("exit=%.0f runtime=%.3fs", code, elapsed)};
}

Outcome ac9() {
    CaseGenerator gen(kSeed + 2);
    const double tsirelson = 2 * kSqrt2 + 1e-10;
    std::string failure;
    auto require = [&failure](bool ok, const char *what) {
        if (!ok && failure.empty()) {
            failure = what;
        }
    };
    for (int trial = 0; trial < 1000 && failure.empty(); ++trial) {
        auto c = gen.next();
        const bool extended_case = trial % 10 == 0;

        auto rho = post_channel_state(c.src, c.params);
        require(max_abs_diff(rho.entries(), rho.entries().adjoint()) < 1e-12, "hermiticity");
        require(std::abs(rho.trace() - Complex(1.0)) < 1e-12, "trace");
        require(rho.min_eigenvalue() >= -1e-10, "positivity");

        auto again = apply_channel(rho, dephasing_channel(message_basis(c.params)), labels::kRecord);
        require(max_abs_diff(rho.entries(), again.entries()) < 1e-12, "channel idempotence");

        auto joint = joint_probs_wn(c.src, c.wb, c.params);
        double perp = joint.at({2, 0}) + joint.at({2, 1});
        perp = std::max(perp, unitary_probs(c.src, c.wb).at({2}));
        perp = std::max(perp, record_joint_probs(c.src, c.wb).marginal("w").at({2}));
        require(std::abs(perp) < 1e-12, "p(perp) = 0");

        if (extended_case) {
            auto ext = channel_extended_state(c.params);
            require(max_abs_diff(ext.entries(), ext.entries().adjoint()) < 1e-12, "extended hermiticity");
            require(std::abs(ext.trace() - Complex(1.0)) < 1e-12, "extended trace");
            require(ext.min_eigenvalue() >= -1e-10, "extended positivity");
        }

        double c0 = extended_case ? conditional_chsh(kN0, c.params).value : conditional_chsh_closed_form(kN0, c.params);
        double c1 = extended_case ? conditional_chsh(kN1, c.params).value : conditional_chsh_closed_form(kN1, c.params);
        require(std::abs(c0) <= tsirelson && std::abs(c1) <= tsirelson, "Tsirelson bound");
        require(!(c0 > 2.0 && c1 > 2.0), "mutual exclusivity of violation");
    }
    return {failure.empty(), failure.empty() ? std::string("trials=1000 all properties hold") : "violated: " + failure};
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        const char *summary;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {"AC1", "no-record CHSH equals 2*sqrt2 in under 1 s", ac1},
        {"AC2", "which-outcome record CHSH equals sqrt2", ac2},
        {"AC3", "conditional CHSH matches closed form on the theta x phi grid", ac3},
        {"AC4", "Bell-case partial collapse p(+|0) = 1/2 + sin(2 theta)/2", ac4},
        {"AC5", "sum over messages reproduces the collapse table", ac5},
        {"AC6", "message basis completeness", ac6},
        {"AC7", "paradox witness without record, agreement with record", ac7},
        {"AC8", "validate command exits 0 in under 10 s", ac8},
        {"AC9", "randomized property suite", ac9},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s %s (%s)\n", o.pass ? "PASS" : "FAIL", c.name, c.summary, o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
