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

#ifndef WF_FRIENDLINESS_H
#define WF_FRIENDLINESS_H

#include <array>
#include <span>
#include <vector>

#include "wf/channel.h"
#include "wf/qcore.h"

/// Extended Wigner's-friend setup: Bob holds qubit 1, the friend measures
/// qubit 2 into her memory F, Wigner measures 2+F, and optionally a record R
/// is passed to Wigner through the measure-and-prepare channel.
///
/// The local-friendliness CHSH expression is
///     <Bz Wz> + <Bx Wz> - <Bz Wx> + <Bx Wx> <= 2.
namespace wf {

namespace labels {
inline const std::string kBob = "1";
inline const std::string kFriendQubit = "2";
}  // namespace labels

enum class BobSetting { kZ, kX };
enum class WignerSetting { kZ, kX };

/// Bob's observables on qubit 1 and Wigner's on 2 x F.
///
/// Wigner's observables act as Z and X on span{|0,0>, |1,1>} and vanish on
/// its complement.
class ObservableSet {
   public:
    ObservableSet(Operator bob_z, Operator bob_x, Operator wigner_z, Operator wigner_x);
    /// Bz = (Z + X)/sqrt2, Bx = (Z - X)/sqrt2, Wz = |00><00| - |11><11|,
    /// Wx = |00><11| + |11><00|.
    static ObservableSet standard();

    const Operator &bob(BobSetting s) const { return s == BobSetting::kZ ? bob_z_ : bob_x_; }
    const Operator &wigner(WignerSetting s) const { return s == WignerSetting::kZ ? wigner_z_ : wigner_x_; }

   private:
    Operator bob_z_;
    Operator bob_x_;
    Operator wigner_z_;
    Operator wigner_x_;
};

struct ChshTerm {
    BobSetting bob;
    WignerSetting wigner;
    int sign;
};

/// Four signed correlators with exactly one subtracted.
class ChshSpec {
   public:
    explicit ChshSpec(std::array<ChshTerm, 4> terms);
    /// (+, +, -, +) on (Bz Wz, Bx Wz, Bz Wx, Bx Wx).
    static ChshSpec standard();
    /// Same four correlators with the term at `index` subtracted instead.
    static ChshSpec subtracting(std::size_t index);

    const std::array<ChshTerm, 4> &terms() const { return terms_; }

   private:
    std::array<ChshTerm, 4> terms_;
};

struct ConditionalChshRow {
    MessageOutcome n = MessageOutcome::kZero;
    double theta = 0.0;
    double phi = 0.0;
    double value = 0.0;
};

SpaceLayout extended_layout();
SpaceLayout extended_record_layout();

/// B x W x identity on `layout`, which must contain 1, 2 and F.
Operator correlator(const Operator &bob, const Operator &wigner, const SpaceLayout &layout);

/// (|0>_1|0,0>_2F - |1>_1|1,1>_2F)/sqrt2.
StateVector extended_state();
/// (|0>_1|0,0>_2F|r0> - |1>_1|1,1>_2F|r1>)/sqrt2.
StateVector extended_record_state();
/// (1 x C)|Psi^r><Psi^r| on 1 x 2 x F x R.
DensityMatrix channel_extended_state(const ChannelParams &params);

double chsh_value(const DensityMatrix &rho, const ChshSpec &spec = ChshSpec::standard(),
                  const ObservableSet &observables = ObservableSet::standard());

/// Tr(1 x |n><n| rho) on a state carrying the record factor R.
double message_probability(const DensityMatrix &rho, MessageOutcome n, const ChannelParams &params);

/// <B x W>^{|n} = Tr(B x W x |n><n| rho)/p(n), or 0 when p(n) = 0.
double conditional_expectation(const DensityMatrix &rho, const Operator &bob, const Operator &wigner, MessageOutcome n,
                               const ChannelParams &params);

ConditionalChshRow conditional_chsh(MessageOutcome n, const ChannelParams &params,
                                    const ChshSpec &spec = ChshSpec::standard());
/// sqrt2 + (-1)^n sqrt2 cos(phi) sin(2 theta), valid for the standard spec.
double conditional_chsh_closed_form(MessageOutcome n, const ChannelParams &params);

/// CHSH on the channel output without conditioning on the message.
double unconditioned_chsh(const ChannelParams &params);

/// Rows for n = 0 then n = 1 at each theta, in grid order.
std::vector<ConditionalChshRow> sweep_chsh(double phi, std::span<const double> theta_grid);

}  // namespace wf

#endif
