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

#ifndef WF_CHANNEL_H
#define WF_CHANNEL_H

#include <array>
#include <span>
#include <vector>

#include "wf/outcome.h"
#include "wf/qcore.h"
#include "wf/scenarios.h"

/// Measure-and-prepare channel between the friend's record R and Wigner.
///
/// The friend writes |r0> or |r1>; the channel measures R and re-prepares
/// the outcome in the message basis
///
///     |0> = cos(theta)|r0> + e^{i phi} sin(theta)|r1>
///     |1> = e^{-i phi} sin(theta)|r0> - cos(theta)|r1>
///
/// theta = 0 reveals the friend's outcome; theta = pi/4, phi = 0 makes the
/// message bases mutually unbiased and reveals nothing.
namespace wf {

class ChannelParams {
   public:
    ChannelParams(double theta, double phi);
    double theta() const { return theta_; }
    double phi() const { return phi_; }
    /// Same channel with theta in [0, pi) and phi in [0, 2 pi).
    ChannelParams canonical() const;

   private:
    double theta_;
    double phi_;
};

enum class MessageOutcome { kZero = 0, kOne = 1 };

inline std::size_t index(MessageOutcome n) { return static_cast<std::size_t>(n); }

class MessageBasis {
   public:
    explicit MessageBasis(std::array<StateVector, 2> kets);

    const StateVector &ket(MessageOutcome n) const { return kets_[index(n)]; }
    Operator projector(MessageOutcome n) const { return Operator::projector(ket(n)); }
    /// <n|r_i>.
    Complex overlap(MessageOutcome n, std::size_t record) const;
    /// max_{i,j} |sum_m <m|r_i><r_j|m> - delta_ij|.
    double completeness_deviation() const;

   private:
    std::array<StateVector, 2> kets_;
};

OutcomeAxis message_axis();

MessageBasis message_basis(const ChannelParams &params);

/// Kraus set {|0><0|, |1><1|} in the message basis.
KrausChannel dephasing_channel(const MessageBasis &basis);

/// (1 x C)|Psi^r><Psi^r| on S x F x R.
DensityMatrix post_channel_state(const SourceAmplitudes &src, const ChannelParams &params);

/// p(w, n) = Tr(|w><w| x |n><n| rho_SFR). Axes (w, n).
OutcomeDistribution joint_probs_wn(const SourceAmplitudes &src, const WignerBasis &wb, const ChannelParams &params);

/// Same table from the overlap formula
///     p(1,n) = |alpha|^2|a|^2|<n|r0>|^2 + |beta|^2|b|^2|<n|r1>|^2 + 2 Re(alpha beta* a* b <n|r0><r1|n>)
///     p(2,n) = |alpha|^2|b|^2|<n|r0>|^2 + |beta|^2|a|^2|<n|r1>|^2 - 2 Re(alpha beta* a* b <n|r0><r1|n>)
OutcomeDistribution joint_probs_wn_closed_form(const SourceAmplitudes &src, const WignerBasis &wb,
                                               const ChannelParams &params);

struct PartialCollapseRow {
    double theta = 0.0;
    double phi = 0.0;
    /// p_w_given_n[n][w] with w in {1, 2, perp}.
    std::array<std::array<double, 3>, 2> p_w_given_n{};
    std::array<double, 2> p_n{};
};

/// Conditional tables p(w|n) along a theta grid, rows in grid order.
std::vector<PartialCollapseRow> sweep_partial_collapse(const SourceAmplitudes &src, const WignerBasis &wb, double phi,
                                                       std::span<const double> theta_grid);

inline constexpr std::size_t kDefaultGridPoints = 181;

/// `points` evenly spaced values on [0, pi], endpoints included.
std::vector<double> uniform_theta_grid(std::size_t points = kDefaultGridPoints);

}  // namespace wf

#endif
