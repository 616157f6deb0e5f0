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

namespace wf {

namespace {

void require_unit_pair(Complex x, Complex y, const char *what) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || !std::isfinite(y.real()) ||
        !std::isfinite(y.imag())) {
        throw InvariantError(std::string(what) + ": non-finite amplitude");
    }
    double n = std::norm(x) + std::norm(y);
    if (std::abs(n - 1.0) > tol::kAlgebraic) {
        throw InvariantError(std::string(what) + ": |x|^2 + |y|^2 = " + std::to_string(n) + ", expected 1");
    }
}

// Flat indices of |0,0> and |1,1> on S x F.
constexpr Eigen::Index k00 = 0;
constexpr Eigen::Index k11 = 3;

StateVector sf_superposition(Complex c00, Complex c11) {
    CVector v = CVector::Zero(4);
    v[k00] = c00;
    v[k11] = c11;
    return StateVector(system_friend_layout(), std::move(v));
}

}  // namespace

SourceAmplitudes::SourceAmplitudes(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
    require_unit_pair(alpha, beta, "SourceAmplitudes");
}

WignerBasis::WignerBasis(Complex a, Complex b) : a_(a), b_(b) { require_unit_pair(a, b, "WignerBasis"); }

StateVector WignerBasis::ket1() const { return sf_superposition(a_, b_); }

StateVector WignerBasis::ket2() const { return sf_superposition(std::conj(b_), -std::conj(a_)); }

std::array<Operator, 3> WignerBasis::projectors() const {
    return {Operator::projector(ket1()), Operator::projector(ket2()), perp_projector()};
}

OutcomeAxis wigner_axis() { return {"w", {"1", "2", "perp"}}; }

OutcomeAxis record_axis() { return {"j", {"0", "1"}}; }

SpaceLayout system_friend_layout() { return SpaceLayout({{labels::kSystem, 2}, {labels::kFriend, 2}}); }

SpaceLayout system_friend_record_layout(std::size_t record_dim) {
    return SpaceLayout({{labels::kSystem, 2}, {labels::kFriend, 2}, {labels::kRecord, record_dim}});
}

Operator perp_projector() {
    CMatrix m = CMatrix::Zero(4, 4);
    m(1, 1) = 1.0;
    m(2, 2) = 1.0;
    return Operator(system_friend_layout(), std::move(m));
}

StateVector friend_isometry(const SourceAmplitudes &src) { return sf_superposition(src.alpha(), src.beta()); }

OutcomeDistribution collapse_probs(const SourceAmplitudes &src, const WignerBasis &wb) {
    double pa = std::norm(src.alpha()), pb = std::norm(src.beta());
    double qa = std::norm(wb.a()), qb = std::norm(wb.b());
    return OutcomeDistribution({wigner_axis()}, {pa * qa + pb * qb, pb * qa + pa * qb, 0.0});
}

OutcomeDistribution unitary_probs(const SourceAmplitudes &src, const WignerBasis &wb) {
    auto rho = DensityMatrix::pure(friend_isometry(src));
    auto projectors = wb.projectors();
    return OutcomeDistribution({wigner_axis()}, born_probabilities(rho, projectors));
}

OutcomeDistribution unitary_probs_closed_form(const SourceAmplitudes &src, const WignerBasis &wb) {
    Complex alpha = src.alpha(), beta = src.beta(), a = wb.a(), b = wb.b();
    return OutcomeDistribution({wigner_axis()},
                               {std::norm(alpha * std::conj(a) + beta * std::conj(b)), std::norm(beta * a - alpha * b),
                                0.0});
}

StateVector record_state(const SourceAmplitudes &src) {
    CVector v = CVector::Zero(8);
    // |0,0>|r0> -> digits (0,0,0); |1,1>|r1> -> digits (1,1,1).
    v[0] = src.alpha();
    v[7] = src.beta();
    return StateVector(system_friend_record_layout(), std::move(v));
}

OutcomeDistribution record_joint_probs(const SourceAmplitudes &src, const WignerBasis &wb) {
    auto rho = DensityMatrix::pure(record_state(src));
    std::vector<Operator> projectors;
    for (const auto &pw : wb.projectors()) {
        for (std::size_t j = 0; j < 2; ++j) {
            projectors.push_back(tensor(pw, Operator::projector(StateVector::ket(labels::kRecord, 2, j))));
        }
    }
    return OutcomeDistribution({wigner_axis(), record_axis()}, born_probabilities(rho, projectors));
}

OutcomeDistribution record_joint_probs_closed_form(const SourceAmplitudes &src, const WignerBasis &wb) {
    double p0 = std::norm(src.alpha()), p1 = std::norm(src.beta());
    double qa = std::norm(wb.a()), qb = std::norm(wb.b());
    // Rows w = 1, 2, perp; columns j = 0, 1.
    return OutcomeDistribution({wigner_axis(), record_axis()}, {p0 * qa, p1 * qb, p0 * qb, p1 * qa, 0.0, 0.0});
}

OutcomeDistribution conditional_on(const OutcomeDistribution &joint, std::string_view axis, std::size_t outcome) {
    return joint.conditioned_on(axis, outcome);
}

OutcomeDistribution trivial_record_probs(const SourceAmplitudes &src, const WignerBasis &wb) {
    auto record = StateVector::ket(labels::kRecord, 1, 0);
    auto rho = DensityMatrix::pure(tensor(friend_isometry(src), record));
    auto id_r = Operator::identity(record.layout());
    std::vector<Operator> projectors;
    for (const auto &pw : wb.projectors()) {
        projectors.push_back(tensor(pw, id_r));
    }
    return OutcomeDistribution({wigner_axis()}, born_probabilities(rho, projectors));
}

}  // namespace wf
