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

#include "wf/outcome.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wf/qcore.h"

namespace wf {

OutcomeDistribution::OutcomeDistribution(std::vector<OutcomeAxis> axes, std::vector<double> probabilities)
    : axes_(std::move(axes)), probs_(std::move(probabilities)) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (axes_[i].labels.empty()) {
            throw LayoutError("OutcomeDistribution: axis '" + axes_[i].name + "' has no outcomes");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (axes_[j].name == axes_[i].name) {
                throw LayoutError("OutcomeDistribution: duplicate axis '" + axes_[i].name + "'");
            }
        }
        size *= axes_[i].labels.size();
    }
    if (probs_.size() != size) {
        throw LayoutError("OutcomeDistribution: expected " + std::to_string(size) + " entries, got " +
                          std::to_string(probs_.size()));
    }
    for (double p : probs_) {
        if (!std::isfinite(p)) {
            throw InvariantError("OutcomeDistribution: non-finite probability");
        }
    }
}

std::size_t OutcomeDistribution::axis_index(std::string_view name) const {
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (axes_[i].name == name) {
            return i;
        }
    }
    throw LayoutError("OutcomeDistribution: unknown axis '" + std::string(name) + "'");
}

std::size_t OutcomeDistribution::outcome_index(std::string_view axis, std::string_view label) const {
    const auto &labels = axes_[axis_index(axis)].labels;
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw LayoutError("OutcomeDistribution: unknown outcome '" + std::string(label) + "' on axis '" +
                          std::string(axis) + "'");
    }
    return static_cast<std::size_t>(it - labels.begin());
}

std::size_t OutcomeDistribution::flat(std::span<const std::size_t> outcome) const {
    if (outcome.size() != axes_.size()) {
        throw LayoutError("OutcomeDistribution: expected " + std::to_string(axes_.size()) + " outcome indices");
    }
    std::size_t index = 0;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (outcome[i] >= axes_[i].labels.size()) {
            throw LayoutError("OutcomeDistribution: outcome index out of range on axis '" + axes_[i].name + "'");
        }
        index = index * axes_[i].labels.size() + outcome[i];
    }
    return index;
}

double OutcomeDistribution::at(std::span<const std::size_t> outcome) const { return probs_[flat(outcome)]; }

double OutcomeDistribution::total() const { return std::accumulate(probs_.begin(), probs_.end(), 0.0); }

OutcomeDistribution OutcomeDistribution::marginal(std::span<const std::string> keep) const {
    std::vector<std::size_t> keep_axes;
    std::vector<OutcomeAxis> out_axes;
    for (const auto &name : keep) {
        auto a = axis_index(name);
        if (std::find(keep_axes.begin(), keep_axes.end(), a) != keep_axes.end()) {
            throw LayoutError("OutcomeDistribution::marginal: duplicate axis '" + name + "'");
        }
        keep_axes.push_back(a);
        out_axes.push_back(axes_[a]);
    }
    std::size_t out_size = 1;
    for (const auto &ax : out_axes) {
        out_size *= ax.labels.size();
    }
    std::vector<double> out(out_size, 0.0);
    std::vector<std::size_t> digit(axes_.size(), 0);
    for (double p : probs_) {
        std::size_t index = 0;
        for (auto a : keep_axes) {
            index = index * axes_[a].labels.size() + digit[a];
        }
        out[index] += p;
        for (std::size_t k = axes_.size(); k-- > 0;) {
            if (++digit[k] < axes_[k].labels.size()) {
                break;
            }
            digit[k] = 0;
        }
    }
    return OutcomeDistribution(std::move(out_axes), std::move(out));
}

OutcomeDistribution OutcomeDistribution::marginal(const std::string &keep) const {
    const std::string names[] = {keep};
    return marginal(std::span<const std::string>(names));
}

OutcomeDistribution OutcomeDistribution::conditioned_on(std::string_view axis, std::size_t outcome) const {
    auto a = axis_index(axis);
    if (outcome >= axes_[a].labels.size()) {
        throw LayoutError("OutcomeDistribution::conditioned_on: outcome index out of range");
    }
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (i != a) {
            rest.push_back(axes_[i].name);
        }
    }
    // Slice the table at `outcome`, then reuse marginal() to drop the axis.
    std::vector<double> sliced(probs_.size(), 0.0);
    std::vector<std::size_t> digit(axes_.size(), 0);
    double norm = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (digit[a] == outcome) {
            sliced[i] = probs_[i];
            norm += probs_[i];
        }
        for (std::size_t k = axes_.size(); k-- > 0;) {
            if (++digit[k] < axes_[k].labels.size()) {
                break;
            }
            digit[k] = 0;
        }
    }
    auto joint = OutcomeDistribution(axes_, std::move(sliced)).marginal(rest);
    for (auto &p : joint.probs_) {
        p = norm > tol::kZeroProbability ? p / norm : 0.0;
    }
    return joint;
}

double OutcomeDistribution::max_abs_diff(const OutcomeDistribution &other) const {
    if (axes_ != other.axes_) {
        throw LayoutError("OutcomeDistribution::max_abs_diff: axes differ");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        double d = std::abs(probs_[i] - other.probs_[i]);
        if (!(d <= worst)) {
            worst = d;
        }
    }
    return worst;
}

}  // namespace wf
