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

#ifndef WF_ORACLE_H
#define WF_ORACLE_H

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wf/outcome.h"
#include "wf/qcore.h"

/// Brute-force reference computations.
///
/// Nothing here uses the closed forms or state constructors of the model
/// library: experiments are written as generic step lists (prepare a ket,
/// apply a unitary, apply a channel, measure) and evaluated with qcore
/// primitives only. This header must not include any other wf header than
/// qcore.h and outcome.h.
namespace wf::oracle {

/// Appends a fresh factor in the given pure state. The first Prepare
/// initializes the register.
struct Prepare {
    StateVector state;
};

/// Unitary on the named factors.
struct Isometry {
    Operator unitary;
    std::vector<std::string> on;
};

struct ApplyChannel {
    KrausChannel channel;
    std::string on;
};

/// Projective measurement on the named factors. `projectors` live on the
/// sub-layout of those factors and are listed in the order of `axis.labels`.
struct Measure {
    OutcomeAxis axis;
    std::vector<std::string> on;
    std::vector<Operator> projectors;
};

using PipelineStep = std::variant<Prepare, Isometry, ApplyChannel, Measure>;

/// One measurement event along a branch.
struct BranchNode {
    std::string event;
    std::string outcome;
    /// Absolute probability of reaching this node.
    double probability = 1.0;
    /// Normalized post-measurement state; absent for null branches.
    std::optional<DensityMatrix> state;
    std::vector<BranchNode> children;
};

struct BranchTree {
    BranchNode root;
    std::vector<OutcomeAxis> axes;

    /// Joint distribution over all measurement events (leaf probabilities).
    OutcomeDistribution leaves() const;
    /// Largest |sum(children) - parent| over all internal nodes.
    double max_branch_deviation() const;
    /// Sum of node probabilities at each depth (depth 0 is the root).
    std::vector<double> depth_totals() const;
};

BranchTree run_pipeline_tree(std::span<const PipelineStep> steps);

/// Exact joint distribution over every Measure step, in step order.
OutcomeDistribution run_pipeline(std::span<const PipelineStep> steps);

enum class RecordKind { kNone, kWhichOutcome, kTrivial };

struct ChannelAngles {
    double theta = 0.0;
    double phi = 0.0;
};

/// Simple experiment: source alpha|0> + beta|1> on S, friend copies into F,
/// optional record R (copied from S) with optional measure-and-prepare
/// channel, Wigner measures S+F in {a|00> + b|11>, b*|00> - a*|11>, rest}.
struct SimpleSetup {
    Complex alpha;
    Complex beta;
    Complex a;
    Complex b;
    RecordKind record = RecordKind::kNone;
    std::optional<ChannelAngles> channel;
};

/// Axes: "w" {1, 2, perp}, then "j" {0, 1} for a which-outcome record
/// without channel or "n" {0, 1} with a channel.
std::vector<PipelineStep> simple_pipeline(const SimpleSetup &setup);

/// Extended experiment on 1 x 2 x F (x R): the source emits
/// (|00> - |11>)/sqrt2 on qubits 1, 2, the friend copies qubit 2 into F, and
/// optionally a record of qubit 2 passes through the channel. Bob measures
/// `bob` on 1 and Wigner measures `wigner` on 2 x F via their eigenspaces.
struct ExtendedSetup {
    CMatrix bob;
    CMatrix wigner;
    bool record = false;
    std::optional<ChannelAngles> channel;
};

/// Axes: "b" and "w" labelled by eigenvalue, then "n" when a record exists.
std::vector<PipelineStep> extended_pipeline(const ExtendedSetup &setup);

struct Correlations {
    /// E[b * w] ignoring any message.
    double overall = 0.0;
    /// E[b * w | n] per message (0 when p(n) = 0); empty without a record.
    std::vector<double> by_message;
};

Correlations correlations(const ExtendedSetup &setup);

/// E[b * w], or E[b * w | n] when `message` is given.
double correlator(const ExtendedSetup &setup, std::optional<std::size_t> message = std::nullopt);

/// (Z + X)/sqrt2 and (Z - X)/sqrt2 on a qubit.
CMatrix bob_z();
CMatrix bob_x();
/// Z and X on span{|0,0>, |1,1>} inside 2 x F, zero elsewhere.
CMatrix wigner_z();
CMatrix wigner_x();

/// <BzWz> + <BxWz> - <BzWx> + <BxWx> on the extended pipeline, overall and
/// per message.
Correlations chsh(bool record, std::optional<ChannelAngles> channel);

/// The friend's description: she collapses S to |f> with Born probability,
/// writes f into her memory, and Wigner measures the resulting product
/// state. Axes "f" {0, 1} and "w" {1, 2, perp}.
BranchTree collapse_enumeration(Complex alpha, Complex beta, Complex a, Complex b);

}  // namespace wf::oracle

#endif
