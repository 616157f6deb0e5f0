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

#include "wf/scenarios.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "wf/validate.h"

using namespace wf;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

SourceAmplitudes bell_source() { return {kInvSqrt2, kInvSqrt2}; }
WignerBasis bell_basis() { return {kInvSqrt2, kInvSqrt2}; }

// Generic complex configuration; expected values computed independently.
SourceAmplitudes generic_source() { return {0.6, std::polar(0.8, 0.3)}; }
WignerBasis generic_basis() { return {std::polar(std::cos(0.4), 0.1), std::polar(std::sin(0.4), -0.7)}; }

std::size_t w(WignerOutcome o) { return static_cast<std::size_t>(o); }

}  // namespace

TEST(wigner_basis, rejects_unnormalized) {
    ASSERT_THROW(WignerBasis(1.0, 1.0), InvariantError);
    ASSERT_THROW(SourceAmplitudes(0.5, 0.5), InvariantError);
    ASSERT_NO_THROW(SourceAmplitudes(1.0, 0.0));
}

TEST(wigner_basis, projectors_form_measurement) {
    auto ps = generic_basis().projectors();
    check_projective_measurement(ps);
    ASSERT_NEAR(std::abs(generic_basis().ket1().inner(generic_basis().ket2())), 0.0, 1e-12);
    ASSERT_LT(max_abs_diff(ps[2].entries(), perp_projector().entries()), 1e-12);
}

TEST(scenarios, bell_case_unitary_vs_collapse) {
    auto u = unitary_probs(bell_source(), bell_basis());
    ASSERT_NEAR(u.at({w(WignerOutcome::kOne)}), 1.0, 1e-12);
    ASSERT_NEAR(u.at({w(WignerOutcome::kTwo)}), 0.0, 1e-12);
    auto c = collapse_probs(bell_source(), bell_basis());
    ASSERT_NEAR(c.at({w(WignerOutcome::kOne)}), 0.5, 1e-12);
    ASSERT_NEAR(c.at({w(WignerOutcome::kTwo)}), 0.5, 1e-12);
    ASSERT_GE(u.at({0}) - c.at({0}), 0.4);
}

TEST(scenarios, generic_case_frozen_values) {
    auto u = unitary_probs(generic_source(), generic_basis());
    ASSERT_NEAR(u.at({0}), 0.5586482321376548, 1e-12);
    ASSERT_NEAR(u.at({1}), 0.4413517678623453, 1e-12);
    ASSERT_NEAR(u.at({2}), 0.0, 1e-12);
    auto c = collapse_probs(generic_source(), generic_basis());
    ASSERT_NEAR(c.at({0}), 0.402461060691397, 1e-12);
    ASSERT_NEAR(c.at({1}), 0.597538939308603, 1e-12);
    ASSERT_LT(unitary_probs_closed_form(generic_source(), generic_basis()).max_abs_diff(u), 1e-12);
}

TEST(scenarios, record_conditionals_are_which_outcome_table) {
    auto src = generic_source();
    auto wb = generic_basis();
    auto joint = record_joint_probs(src, wb);
    double a2 = std::norm(wb.a()), b2 = std::norm(wb.b());
    auto given0 = conditional_on(joint, "j", 0);
    auto given1 = conditional_on(joint, "j", 1);
    ASSERT_NEAR(given0.at({0}), a2, 1e-12);
    ASSERT_NEAR(given0.at({1}), b2, 1e-12);
    ASSERT_NEAR(given1.at({0}), b2, 1e-12);
    ASSERT_NEAR(given1.at({1}), a2, 1e-12);
    ASSERT_NEAR(given0.at({2}) + given1.at({2}), 0.0, 1e-12);
    ASSERT_LT(record_joint_probs_closed_form(src, wb).max_abs_diff(joint), 1e-12);
}

TEST(scenarios, conditional_on_null_record_is_zero) {
    SourceAmplitudes src(1.0, 0.0);
    auto given1 = conditional_on(record_joint_probs(src, bell_basis()), "j", 1);
    ASSERT_EQ(given1.total(), 0.0);
}

TEST(scenarios, random_cases_effective_collapse) {
    CaseGenerator gen(101);
    for (int trial = 0; trial < 100; ++trial) {
        auto c = gen.next();
        auto joint = record_joint_probs(c.src, c.wb);
        ASSERT_NEAR(joint.total(), 1.0, 1e-12);
        ASSERT_LT(joint.marginal("w").max_abs_diff(collapse_probs(c.src, c.wb)), 1e-12);
        ASSERT_LT(trivial_record_probs(c.src, c.wb).max_abs_diff(unitary_probs(c.src, c.wb)), 1e-12);
        ASSERT_NEAR(unitary_probs(c.src, c.wb).at({2}), 0.0, 1e-12);
        ASSERT_NEAR(joint.marginal("w").at({2}), 0.0, 1e-12);
        ASSERT_LT(unitary_probs_closed_form(c.src, c.wb).max_abs_diff(unitary_probs(c.src, c.wb)), 1e-12);
    }
}

TEST(scenarios, predictions_agree_without_interference) {
    // The two descriptions coincide when either product of amplitudes vanishes.
    WignerBasis generic = generic_basis();
    for (const auto &src : {SourceAmplitudes(1.0, 0.0), SourceAmplitudes(0.0, Complex(0, 1))}) {
        ASSERT_LT(unitary_probs(src, generic).max_abs_diff(collapse_probs(src, generic)), 1e-12);
    }
    for (const auto &wb : {WignerBasis(1.0, 0.0), WignerBasis(0.0, -1.0)}) {
        ASSERT_LT(unitary_probs(generic_source(), wb).max_abs_diff(collapse_probs(generic_source(), wb)), 1e-12);
    }
}

TEST(scenarios, record_state_layout) {
    auto s = record_state(generic_source());
    ASSERT_EQ(s.layout(), system_friend_record_layout());
    ASSERT_NEAR(std::abs(s[0] - Complex(0.6)), 0.0, 1e-15);
    ASSERT_NEAR(std::abs(s[7] - std::polar(0.8, 0.3)), 0.0, 1e-15);
}
