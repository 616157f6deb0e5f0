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

#include "wf/channel.h"

#include <cmath>
#include <numbers>

namespace wf {

namespace {

double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) {
        r += period;
    }
    return r >= period ? 0.0 : r;
}

}  // namespace

ChannelParams::ChannelParams(double theta, double phi) : theta_(theta), phi_(phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw InvariantError("ChannelParams: theta and phi must be finite");
    }
}

ChannelParams ChannelParams::canonical() const {
    return ChannelParams(wrap(theta_, std::numbers::pi), wrap(phi_, 2.0 * std::numbers::pi));
}

MessageBasis::MessageBasis(std::array<StateVector, 2> kets) : kets_(std::move(kets)) {
    for (const auto &k : kets_) {
        if (k.dim() != 2) {
            throw LayoutError("MessageBasis: kets must live on a qubit record space");
        }
    }
    if (std::abs(kets_[0].inner(kets_[1])) > tol::kAlgebraic) {
        throw InvariantError("MessageBasis: kets are not orthogonal");
    }
}

Complex MessageBasis::overlap(MessageOutcome n, std::size_t record) const {
    if (record > 1) {
        throw LayoutError("MessageBasis::overlap: record index out of range");
    }
    return std::conj(ket(n)[record]);
}

double MessageBasis::completeness_deviation() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            Complex sum = 0.0;
            for (auto m : {MessageOutcome::kZero, MessageOutcome::kOne}) {
                sum += overlap(m, i) * std::conj(overlap(m, j));
            }
            worst = std::max(worst, std::abs(sum - Complex(i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

OutcomeAxis message_axis() { return {"n", {"0", "1"}}; }

MessageBasis message_basis(const ChannelParams &params) {
    const double c = std::cos(params.theta()), s = std::sin(params.theta());
    const Complex phase = std::polar(1.0, params.phi());
    auto layout = SpaceLayout::single(labels::kRecord, 2);
    CVector zero(2), one(2);
    zero << c, phase * s;
    one << std::conj(phase) * s, -c;
    return MessageBasis({StateVector(layout, zero), StateVector(layout, one)});
}

KrausChannel dephasing_channel(const MessageBasis &basis) {
    return KrausChannel({basis.projector(MessageOutcome::kZero), basis.projector(MessageOutcome::kOne)});
}

DensityMatrix post_channel_state(const SourceAmplitudes &src, const ChannelParams &params) {
    auto rho = DensityMatrix::pure(record_state(src));
    return apply_channel(rho, dephasing_channel(message_basis(params)), labels::kRecord);
}

OutcomeDistribution joint_probs_wn(const SourceAmplitudes &src, const WignerBasis &wb, const ChannelParams &params) {
    auto rho = post_channel_state(src, params);
    auto basis = message_basis(params);
    std::vector<Operator> projectors;
    for (const auto &pw : wb.projectors()) {
        for (auto n : {MessageOutcome::kZero, MessageOutcome::kOne}) {
            projectors.push_back(tensor(pw, basis.projector(n)));
        }
    }
    return OutcomeDistribution({wigner_axis(), message_axis()}, born_probabilities(rho, projectors));
}

OutcomeDistribution joint_probs_wn_closed_form(const SourceAmplitudes &src, const WignerBasis &wb,
                                               const ChannelParams &params) {
    auto basis = message_basis(params);
    const double pa = std::norm(src.alpha()), pb = std::norm(src.beta());
    const double qa = std::norm(wb.a()), qb = std::norm(wb.b());
    const Complex coherence = src.alpha() * std::conj(src.beta()) * std::conj(wb.a()) * wb.b();

    std::array<double, 2> p1{}, p2{};
    for (auto n : {MessageOutcome::kZero, MessageOutcome::kOne}) {
        const Complex o0 = basis.overlap(n, 0), o1 = basis.overlap(n, 1);
        const double cross = 2.0 * (coherence * o0 * std::conj(o1)).real();
        p1[index(n)] = pa * qa * std::norm(o0) + pb * qb * std::norm(o1) + cross;
        p2[index(n)] = pa * qb * std::norm(o0) + pb * qa * std::norm(o1) - cross;
    }
    return OutcomeDistribution({wigner_axis(), message_axis()}, {p1[0], p1[1], p2[0], p2[1], 0.0, 0.0});
}

std::vector<PartialCollapseRow> sweep_partial_collapse(const SourceAmplitudes &src, const WignerBasis &wb, double phi,
                                                       std::span<const double> theta_grid) {
    if (theta_grid.empty()) {
        throw LayoutError("sweep_partial_collapse: empty theta grid");
    }
    std::vector<PartialCollapseRow> rows;
    rows.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        auto joint = joint_probs_wn(src, wb, ChannelParams(theta, phi));
        auto p_n = joint.marginal("n");
        PartialCollapseRow row;
        row.theta = theta;
        row.phi = phi;
        for (std::size_t n = 0; n < 2; ++n) {
            row.p_n[n] = p_n.at({n});
            auto cond = joint.conditioned_on("n", n);
            for (std::size_t w = 0; w < 3; ++w) {
                row.p_w_given_n[n][w] = cond.at({w});
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> uniform_theta_grid(std::size_t points) {
    if (points < 2) {
        throw LayoutError("uniform_theta_grid: need at least 2 points");
    }
    std::vector<double> grid(points);
    for (std::size_t k = 0; k < points; ++k) {
        grid[k] = std::numbers::pi * static_cast<double>(k) / static_cast<double>(points - 1);
    }
    return grid;
}

}  // namespace wf
