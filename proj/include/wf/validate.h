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

#ifndef WF_VALIDATE_H
#define WF_VALIDATE_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "wf/channel.h"
#include "wf/friendliness.h"
#include "wf/scenarios.h"

namespace wf {

/// Reports pass when every deviation is below this.
inline constexpr double kValidationThreshold = 1e-10;
inline constexpr std::uint64_t kDefaultSeed = 20230601;
inline constexpr std::size_t kDefaultTrials = 1000;

struct RandomCase {
    SourceAmplitudes src;
    WignerBasis wb;
    ChannelParams params;

    std::string describe() const;
};

/// Seeded generator of random experiment configurations.
///
/// Each amplitude pair (x, y) is drawn as
///     u ~ U[0,1), gamma ~ U[0, 2pi), delta ~ U[0, 2pi)
///     x = sqrt(1 - u) e^{i gamma},  y = sqrt(u) e^{i (gamma + delta)}
/// which is uniform on the normalized-amplitude manifold. Channel angles are
/// theta ~ U[0, pi), phi ~ U[0, 2pi). Uniform variates are taken from the
/// top 53 bits of std::mt19937_64, so a seed fixes the sequence on every
/// platform.
class CaseGenerator {
   public:
    explicit CaseGenerator(std::uint64_t seed) : engine_(seed) {}
    RandomCase next();
    double uniform();

   private:
    std::mt19937_64 engine_;
};

/// The closed-form formulas under test. Swapping one out is how the
/// negative-control tests corrupt the build.
struct ClosedForms {
    std::function<OutcomeDistribution(const SourceAmplitudes &, const WignerBasis &)> collapse;
    std::function<OutcomeDistribution(const SourceAmplitudes &, const WignerBasis &)> unitary;
    std::function<OutcomeDistribution(const SourceAmplitudes &, const WignerBasis &)> record_joint;
    std::function<OutcomeDistribution(const SourceAmplitudes &, const WignerBasis &, const ChannelParams &)> joint_wn;
    std::function<double(MessageOutcome, const ChannelParams &)> conditional_chsh;

    static ClosedForms reference();
};

struct Deviation {
    std::string quantity;
    double deviation = 0.0;
};

/// Deviations of every closed form and model computation from the oracle
/// for a single configuration.
std::vector<Deviation> check_case(const RandomCase &c, const ClosedForms &forms = ClosedForms::reference());

struct WorstCase {
    std::string quantity;
    double deviation = 0.0;
    std::size_t trial = 0;
    std::string config;
};

struct ValidationReport {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    /// One entry per quantity, in a fixed order.
    std::vector<WorstCase> worst;

    double max_deviation() const;
    bool passed(double threshold = kValidationThreshold) const { return max_deviation() < threshold; }
    /// One line per quantity: config, quantity, deviation.
    void write_text(std::ostream &out) const;
};

ValidationReport cross_validate(std::uint64_t seed, std::size_t trials,
                                const ClosedForms &forms = ClosedForms::reference());

}  // namespace wf

#endif
