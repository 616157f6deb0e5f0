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

#ifndef WF_OUTCOME_H
#define WF_OUTCOME_H

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wf {

/// One measured quantity, e.g. "w" with outcomes {"1", "2", "perp"}.
struct OutcomeAxis {
    std::string name;
    std::vector<std::string> labels;

    bool operator==(const OutcomeAxis &) const = default;
};

/// Dense joint probability table over one or more outcome axes, stored
/// row-major with the first axis most significant.
class OutcomeDistribution {
   public:
    OutcomeDistribution(std::vector<OutcomeAxis> axes, std::vector<double> probabilities);

    const std::vector<OutcomeAxis> &axes() const { return axes_; }
    const std::vector<double> &probabilities() const { return probs_; }
    std::size_t axis_index(std::string_view name) const;
    std::size_t outcome_index(std::string_view axis, std::string_view label) const;

    double at(std::span<const std::size_t> outcome) const;
    double at(std::initializer_list<std::size_t> outcome) const {
        return at(std::span<const std::size_t>(outcome.begin(), outcome.size()));
    }
    double total() const;

    /// Distribution of the named axes only (in the given order).
    OutcomeDistribution marginal(std::span<const std::string> keep) const;
    OutcomeDistribution marginal(const std::string &keep) const;

    /// Distribution of the remaining axes given `axis` == `outcome`.
    /// All zeros when the conditioning event has probability zero.
    OutcomeDistribution conditioned_on(std::string_view axis, std::size_t outcome) const;

    /// Largest |p - q| over all entries. Axes must match.
    double max_abs_diff(const OutcomeDistribution &other) const;

    bool operator==(const OutcomeDistribution &) const = default;

   private:
    std::size_t flat(std::span<const std::size_t> outcome) const;

    std::vector<OutcomeAxis> axes_;
    std::vector<double> probs_;
};

}  // namespace wf

#endif
