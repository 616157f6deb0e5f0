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

#ifndef WF_SCENARIOS_H
#define WF_SCENARIOS_H

#include <array>

#include "wf/outcome.h"
#include "wf/qcore.h"

/// The simple Wigner's-friend experiment.
///
/// A source prepares alpha|0>_S + beta|1>_S, the friend measures S in the
/// computational basis and stores the result in her memory F, and Wigner
/// measures S+F in the basis
///
///     |1>_SF = a|0,0> + b|1,1>,    |2>_SF = b*|0,0> - a*|1,1>,
///
/// completed by the projector onto the orthogonal complement of
/// span{|0,0>, |1,1>} (outcome "perp").
namespace wf {

namespace labels {
inline const std::string kSystem = "S";
inline const std::string kFriend = "F";
inline const std::string kRecord = "R";
}  // namespace labels

/// alpha, beta with |alpha|^2 + |beta|^2 = 1.
class SourceAmplitudes {
   public:
    SourceAmplitudes(Complex alpha, Complex beta);
    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }

   private:
    Complex alpha_;
    Complex beta_;
};

/// a, b with |a|^2 + |b|^2 = 1, defining Wigner's measurement basis.
class WignerBasis {
   public:
    WignerBasis(Complex a, Complex b);
    Complex a() const { return a_; }
    Complex b() const { return b_; }

    /// |1>_SF and |2>_SF on the S x F layout.
    StateVector ket1() const;
    StateVector ket2() const;
    /// Projectors for outcomes 1, 2 and perp on S x F.
    std::array<Operator, 3> projectors() const;

   private:
    Complex a_;
    Complex b_;
};

enum class FriendOutcome { kZero = 0, kOne = 1 };
enum class WignerOutcome { kOne = 0, kTwo = 1, kPerp = 2 };

/// Axis helpers so every module labels tables identically.
OutcomeAxis wigner_axis();
OutcomeAxis record_axis();

SpaceLayout system_friend_layout();
/// S x F x R with a record space of dimension `record_dim`.
SpaceLayout system_friend_record_layout(std::size_t record_dim = 2);
/// Projector onto span{|0,0>, |1,1>}'s complement on S x F.
Operator perp_projector();

/// alpha|0,0>_SF + beta|1,1>_SF.
StateVector friend_isometry(const SourceAmplitudes &src);

/// The friend's collapse prediction p(w) = |alpha|^2 |<w|0,0>|^2 + |beta|^2 |<w|1,1>|^2.
OutcomeDistribution collapse_probs(const SourceAmplitudes &src, const WignerBasis &wb);

/// Wigner's unitary prediction |<w|Phi>|^2, evaluated with the Born rule on
/// friend_isometry(src).
OutcomeDistribution unitary_probs(const SourceAmplitudes &src, const WignerBasis &wb);
/// |alpha a* + beta b*|^2, |beta a - alpha b|^2, 0.
OutcomeDistribution unitary_probs_closed_form(const SourceAmplitudes &src, const WignerBasis &wb);

/// alpha|0,0>|r0> + beta|1,1>|r1> on S x F x R.
StateVector record_state(const SourceAmplitudes &src);

/// p(w, j) = Tr(|w><w| x |r_j><r_j| rho) on the record state. Axes (w, j).
OutcomeDistribution record_joint_probs(const SourceAmplitudes &src, const WignerBasis &wb);
/// p(j) * p(w|j) from the which-outcome table: p(.|0) = (|a|^2, |b|^2),
/// p(.|1) = (|b|^2, |a|^2), p(j) = (|alpha|^2, |beta|^2).
OutcomeDistribution record_joint_probs_closed_form(const SourceAmplitudes &src, const WignerBasis &wb);

/// p(w | axis = outcome) with the convention p(w|.) = 0 when the
/// conditioning event has probability zero.
OutcomeDistribution conditional_on(const OutcomeDistribution &joint, std::string_view axis, std::size_t outcome);

/// Wigner's prediction when the record is one-dimensional and factors out.
OutcomeDistribution trivial_record_probs(const SourceAmplitudes &src, const WignerBasis &wb);

}  // namespace wf

#endif
