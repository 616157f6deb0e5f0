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

#include "wf/friendliness.h"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace wf {

namespace {

const std::string kWignerFactors[] = {labels::kFriendQubit, labels::kFriend};

SpaceLayout bob_layout() { return SpaceLayout::single(labels::kBob, 2); }

SpaceLayout wigner_layout() { return SpaceLayout({{labels::kFriendQubit, 2}, {labels::kFriend, 2}}); }

Operator wigner_perp() {
    CMatrix m = CMatrix::Zero(4, 4);
    m(1, 1) = 1.0;
    m(2, 2) = 1.0;
    return Operator(wigner_layout(), std::move(m));
}

void require_eigenvalues(const Operator &op, std::span<const double> allowed, const char *what) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(op.entries(), Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        double ev = solver.eigenvalues()[i];
        bool ok = false;
        for (double a : allowed) {
            ok = ok || std::abs(ev - a) <= tol::kSpectral;
        }
        if (!ok) {
            throw InvariantError(std::string(what) + ": eigenvalue " + std::to_string(ev) + " not allowed");
        }
    }
}

}  // namespace

ObservableSet::ObservableSet(Operator bob_z, Operator bob_x, Operator wigner_z, Operator wigner_x)
    : bob_z_(std::move(bob_z)), bob_x_(std::move(bob_x)), wigner_z_(std::move(wigner_z)),
      wigner_x_(std::move(wigner_x)) {
    static constexpr double kBobSpectrum[] = {-1.0, 1.0};
    static constexpr double kWignerSpectrum[] = {-1.0, 0.0, 1.0};
    for (const Operator *b : {&bob_z_, &bob_x_}) {
        if (b->dim() != 2 || !b->is_hermitian()) {
            throw InvariantError("ObservableSet: Bob observables must be Hermitian on a qubit");
        }
        require_eigenvalues(*b, kBobSpectrum, "ObservableSet (Bob)");
    }
    const auto perp = wigner_perp();
    const auto id = Operator::identity(wigner_layout());
    for (const Operator *w : {&wigner_z_, &wigner_x_}) {
        if (w->dim() != 4 || !w->is_hermitian()) {
            throw InvariantError("ObservableSet: Wigner observables must be Hermitian on 2 x F");
        }
        require_eigenvalues(*w, kWignerSpectrum, "ObservableSet (Wigner)");
        // Zero eigenspace is exactly the complement of span{|0,0>, |1,1>}.
        auto wr = w->relabeled(wigner_layout());
        if (max_abs_diff((wr * perp).entries(), CMatrix::Zero(4, 4)) > tol::kAlgebraic ||
            max_abs_diff((wr * wr).entries(), (id - perp).entries()) > tol::kAlgebraic) {
            throw InvariantError("ObservableSet: Wigner observable must vanish exactly on the complement");
        }
    }
}

ObservableSet ObservableSet::standard() {
    const double h = 1.0 / std::numbers::sqrt2;
    CMatrix bz(2, 2), bx(2, 2);
    bz << h, h, h, -h;
    bx << h, -h, -h, -h;
    CMatrix wz = CMatrix::Zero(4, 4), wx = CMatrix::Zero(4, 4);
    wz(0, 0) = 1.0;
    wz(3, 3) = -1.0;
    wx(0, 3) = 1.0;
    wx(3, 0) = 1.0;
    return ObservableSet(Operator(bob_layout(), bz), Operator(bob_layout(), bx), Operator(wigner_layout(), wz),
                         Operator(wigner_layout(), wx));
}

ChshSpec::ChshSpec(std::array<ChshTerm, 4> terms) : terms_(terms) {
    int negatives = 0;
    for (const auto &t : terms_) {
        if (t.sign != 1 && t.sign != -1) {
            throw InvariantError("ChshSpec: signs must be +1 or -1");
        }
        negatives += t.sign < 0;
    }
    if (negatives != 1) {
        throw InvariantError("ChshSpec: exactly one term must be subtracted");
    }
}

ChshSpec ChshSpec::standard() { return subtracting(2); }

ChshSpec ChshSpec::subtracting(std::size_t index) {
    if (index > 3) {
        throw LayoutError("ChshSpec::subtracting: index out of range");
    }
    std::array<ChshTerm, 4> terms = {{
        {BobSetting::kZ, WignerSetting::kZ, 1},
        {BobSetting::kX, WignerSetting::kZ, 1},
        {BobSetting::kZ, WignerSetting::kX, 1},
        {BobSetting::kX, WignerSetting::kX, 1},
    }};
    terms[index].sign = -1;
    return ChshSpec(terms);
}

SpaceLayout extended_layout() {
    return SpaceLayout({{labels::kBob, 2}, {labels::kFriendQubit, 2}, {labels::kFriend, 2}});
}

SpaceLayout extended_record_layout() { return extended_layout().concat(SpaceLayout::single(labels::kRecord, 2)); }

Operator correlator(const Operator &bob, const Operator &wigner, const SpaceLayout &layout) {
    auto b = embed(bob, labels::kBob, layout);
    auto w = embed(wigner, kWignerFactors, layout);
    return b * w;
}

StateVector extended_state() {
    const double h = 1.0 / std::numbers::sqrt2;
    CVector v = CVector::Zero(8);
    v[0] = h;
    v[7] = -h;
    return StateVector(extended_layout(), std::move(v));
}

StateVector extended_record_state() {
    const double h = 1.0 / std::numbers::sqrt2;
    CVector v = CVector::Zero(16);
    v[0] = h;
    v[15] = -h;
    return StateVector(extended_record_layout(), std::move(v));
}

DensityMatrix channel_extended_state(const ChannelParams &params) {
    return apply_channel(DensityMatrix::pure(extended_record_state()), dephasing_channel(message_basis(params)),
                         labels::kRecord);
}

double chsh_value(const DensityMatrix &rho, const ChshSpec &spec, const ObservableSet &observables) {
    double total = 0.0;
    for (const auto &t : spec.terms()) {
        total += t.sign * expectation(rho, correlator(observables.bob(t.bob), observables.wigner(t.wigner), rho.layout()));
    }
    return total;
}

double message_probability(const DensityMatrix &rho, MessageOutcome n, const ChannelParams &params) {
    auto projector = embed(message_basis(params).projector(n), labels::kRecord, rho.layout());
    return expectation(rho, projector);
}

double conditional_expectation(const DensityMatrix &rho, const Operator &bob, const Operator &wigner, MessageOutcome n,
                               const ChannelParams &params) {
    double p = message_probability(rho, n, params);
    if (p <= tol::kZeroProbability) {
        return 0.0;
    }
    auto message = embed(message_basis(params).projector(n), labels::kRecord, rho.layout());
    return expectation(rho, correlator(bob, wigner, rho.layout()) * message) / p;
}

ConditionalChshRow conditional_chsh(MessageOutcome n, const ChannelParams &params, const ChshSpec &spec) {
    const auto rho = channel_extended_state(params);
    const auto obs = ObservableSet::standard();
    double value = 0.0;
    for (const auto &t : spec.terms()) {
        value += t.sign * conditional_expectation(rho, obs.bob(t.bob), obs.wigner(t.wigner), n, params);
    }
    return {n, params.theta(), params.phi(), value};
}

double conditional_chsh_closed_form(MessageOutcome n, const ChannelParams &params) {
    const double sign = n == MessageOutcome::kZero ? 1.0 : -1.0;
    return std::numbers::sqrt2 * (1.0 + sign * std::cos(params.phi()) * std::sin(2.0 * params.theta()));
}

double unconditioned_chsh(const ChannelParams &params) { return chsh_value(channel_extended_state(params)); }

std::vector<ConditionalChshRow> sweep_chsh(double phi, std::span<const double> theta_grid) {
    if (theta_grid.empty()) {
        throw LayoutError("sweep_chsh: empty theta grid");
    }
    std::vector<ConditionalChshRow> rows;
    rows.reserve(2 * theta_grid.size());
    for (double theta : theta_grid) {
        ChannelParams params(theta, phi);
        rows.push_back(conditional_chsh(MessageOutcome::kZero, params));
        rows.push_back(conditional_chsh(MessageOutcome::kOne, params));
    }
    return rows;
}

}  // namespace wf
