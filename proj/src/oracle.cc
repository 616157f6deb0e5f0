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

#include "wf/oracle.h"

#include <charconv>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace wf::oracle {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

StateVector qubit(const std::string &label, Complex c0, Complex c1) {
    CVector v(2);
    v << c0, c1;
    return StateVector(SpaceLayout::single(label, 2), std::move(v));
}

Operator cnot(const std::string &control, const std::string &target) {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return Operator(SpaceLayout({{control, 2}, {target, 2}}), std::move(m));
}

std::string format_value(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

/// Eigenspace projectors of a Hermitian matrix, eigenvalues ascending and
/// degenerate values merged.
Measure eigen_measurement(const std::string &axis, const CMatrix &observable, SpaceLayout layout) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(observable);
    const auto &values = solver.eigenvalues();
    const auto &vectors = solver.eigenvectors();
    Measure m{{axis, {}}, {}, {}};
    for (const auto &f : layout.factors()) {
        m.on.push_back(f.label);
    }
    Eigen::Index i = 0;
    while (i < values.size()) {
        double v = values[i];
        CMatrix p = CMatrix::Zero(observable.rows(), observable.cols());
        Eigen::Index j = i;
        while (j < values.size() && std::abs(values[j] - v) < 1e-9) {
            p += vectors.col(j) * vectors.col(j).adjoint();
            ++j;
        }
        double rounded = std::round(v * 1e9) / 1e9;
        m.axis.labels.push_back(format_value(rounded == 0.0 ? 0.0 : rounded));
        m.projectors.emplace_back(layout, std::move(p));
        i = j;
    }
    return m;
}

Measure wigner_measurement(Complex a, Complex b, const std::string &first, const std::string &second) {
    SpaceLayout layout({{first, 2}, {second, 2}});
    CVector k1 = CVector::Zero(4), k2 = CVector::Zero(4);
    k1[0] = a;
    k1[3] = b;
    k2[0] = std::conj(b);
    k2[3] = -std::conj(a);
    CMatrix p1 = k1 * k1.adjoint();
    CMatrix p2 = k2 * k2.adjoint();
    CMatrix rest = CMatrix::Identity(4, 4) - p1 - p2;
    return Measure{{"w", {"1", "2", "perp"}},
                   {first, second},
                   {Operator(layout, p1), Operator(layout, p2), Operator(layout, rest)}};
}

std::array<StateVector, 2> message_kets(const std::string &label, const ChannelAngles &angles) {
    const Complex e = std::exp(Complex(0.0, angles.phi));
    const double c = std::cos(angles.theta), s = std::sin(angles.theta);
    return {qubit(label, c, e * s), qubit(label, std::conj(e) * s, -c)};
}

void add_record_and_channel(std::vector<PipelineStep> &steps, const std::string &source,
                            const std::optional<ChannelAngles> &channel) {
    steps.emplace_back(Prepare{StateVector::ket("R", 2, 0)});
    steps.emplace_back(Isometry{cnot(source, "R"), {source, "R"}});
    if (channel) {
        auto kets = message_kets("R", *channel);
        steps.emplace_back(
            ApplyChannel{KrausChannel({Operator::projector(kets[0]), Operator::projector(kets[1])}), "R"});
    }
}

Measure record_measurement(const std::optional<ChannelAngles> &channel) {
    if (channel) {
        auto kets = message_kets("R", *channel);
        return Measure{{"n", {"0", "1"}}, {"R"}, {Operator::projector(kets[0]), Operator::projector(kets[1])}};
    }
    return Measure{{"j", {"0", "1"}},
                   {"R"},
                   {Operator::projector(StateVector::ket("R", 2, 0)), Operator::projector(StateVector::ket("R", 2, 1))}};
}

void collect_leaves(const BranchNode &node, std::size_t depth, std::size_t target, std::vector<double> &out) {
    if (depth == target) {
        out.push_back(node.probability);
        return;
    }
    for (const auto &c : node.children) {
        collect_leaves(c, depth + 1, target, out);
    }
}

double branch_deviation(const BranchNode &node) {
    if (node.children.empty()) {
        return 0.0;
    }
    double sum = 0.0, worst = 0.0;
    for (const auto &c : node.children) {
        sum += c.probability;
        worst = std::max(worst, branch_deviation(c));
    }
    return std::max(worst, std::abs(sum - node.probability));
}

void accumulate_depths(const BranchNode &node, std::size_t depth, std::vector<double> &totals) {
    if (totals.size() <= depth) {
        totals.resize(depth + 1, 0.0);
    }
    totals[depth] += node.probability;
    for (const auto &c : node.children) {
        accumulate_depths(c, depth + 1, totals);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// BranchTree

OutcomeDistribution BranchTree::leaves() const {
    std::vector<double> probs;
    collect_leaves(root, 0, axes.size(), probs);
    return OutcomeDistribution(axes, std::move(probs));
}

double BranchTree::max_branch_deviation() const { return branch_deviation(root); }

std::vector<double> BranchTree::depth_totals() const {
    std::vector<double> totals;
    accumulate_depths(root, 0, totals);
    return totals;
}

// ---------------------------------------------------------------------------
// Pipeline

BranchTree run_pipeline_tree(std::span<const PipelineStep> steps) {
    BranchTree tree;
    std::vector<BranchNode *> frontier = {&tree.root};

    auto require_state = [&](const char *what) {
        if (!tree.root.state && tree.axes.empty()) {
            throw LayoutError(std::string("run_pipeline: ") + what + " before any Prepare step");
        }
    };

    for (const auto &step : steps) {
        std::visit(
            Overloaded{
                [&](const Prepare &p) {
                    if (!tree.root.state && tree.axes.empty()) {
                        tree.root.state = DensityMatrix::pure(p.state);
                        return;
                    }
                    auto fresh = DensityMatrix::pure(p.state);
                    for (auto *node : frontier) {
                        if (node->state) {
                            node->state = tensor(*node->state, fresh);
                        }
                    }
                },
                [&](const Isometry &u) {
                    require_state("Isometry");
                    for (auto *node : frontier) {
                        if (node->state) {
                            node->state = apply_unitary(*node->state, u.unitary, u.on);
                        }
                    }
                },
                [&](const ApplyChannel &c) {
                    require_state("ApplyChannel");
                    for (auto *node : frontier) {
                        if (node->state) {
                            node->state = apply_channel(*node->state, c.channel, c.on);
                        }
                    }
                },
                [&](const Measure &m) {
                    require_state("Measure");
                    if (m.projectors.size() != m.axis.labels.size()) {
                        throw LayoutError("run_pipeline: measurement '" + m.axis.name +
                                          "' has mismatched labels and projectors");
                    }
                    check_projective_measurement(m.projectors);
                    std::vector<BranchNode *> next;
                    for (auto *node : frontier) {
                        node->children.reserve(m.projectors.size());
                        for (std::size_t k = 0; k < m.projectors.size(); ++k) {
                            BranchNode child{m.axis.name, m.axis.labels[k], 0.0, std::nullopt, {}};
                            if (node->state) {
                                auto full = embed(m.projectors[k], m.on, node->state->layout());
                                auto cond = condition(*node->state, full);
                                child.probability = node->probability * cond.probability;
                                child.state = std::move(cond.state);
                            }
                            node->children.push_back(std::move(child));
                        }
                        for (auto &c : node->children) {
                            next.push_back(&c);
                        }
                    }
                    frontier = std::move(next);
                    tree.axes.push_back(m.axis);
                },
            },
            step);
    }
    return tree;
}

OutcomeDistribution run_pipeline(std::span<const PipelineStep> steps) { return run_pipeline_tree(steps).leaves(); }

// ---------------------------------------------------------------------------
// Experiment builders

std::vector<PipelineStep> simple_pipeline(const SimpleSetup &setup) {
    std::vector<PipelineStep> steps;
    steps.emplace_back(Prepare{qubit("S", setup.alpha, setup.beta)});
    steps.emplace_back(Prepare{StateVector::ket("F", 2, 0)});
    steps.emplace_back(Isometry{cnot("S", "F"), {"S", "F"}});
    switch (setup.record) {
        case RecordKind::kNone:
            if (setup.channel) {
                throw LayoutError("simple_pipeline: a channel needs a which-outcome record");
            }
            break;
        case RecordKind::kTrivial:
            if (setup.channel) {
                throw LayoutError("simple_pipeline: a channel needs a which-outcome record");
            }
            steps.emplace_back(Prepare{StateVector::ket("R", 1, 0)});
            break;
        case RecordKind::kWhichOutcome:
            add_record_and_channel(steps, "S", setup.channel);
            break;
    }
    steps.emplace_back(wigner_measurement(setup.a, setup.b, "S", "F"));
    if (setup.record == RecordKind::kWhichOutcome) {
        steps.emplace_back(record_measurement(setup.channel));
    }
    return steps;
}

std::vector<PipelineStep> extended_pipeline(const ExtendedSetup &setup) {
    if (setup.channel && !setup.record) {
        throw LayoutError("extended_pipeline: a channel needs a record");
    }
    const double h = 1.0 / std::numbers::sqrt2;
    CVector source = CVector::Zero(4);
    source[0] = h;
    source[3] = -h;

    std::vector<PipelineStep> steps;
    steps.emplace_back(Prepare{StateVector(SpaceLayout({{"1", 2}, {"2", 2}}), source)});
    steps.emplace_back(Prepare{StateVector::ket("F", 2, 0)});
    steps.emplace_back(Isometry{cnot("2", "F"), {"2", "F"}});
    if (setup.record) {
        add_record_and_channel(steps, "2", setup.channel);
    }
    steps.emplace_back(eigen_measurement("b", setup.bob, SpaceLayout::single("1", 2)));
    steps.emplace_back(eigen_measurement("w", setup.wigner, SpaceLayout({{"2", 2}, {"F", 2}})));
    if (setup.record) {
        steps.emplace_back(record_measurement(setup.channel));
    }
    return steps;
}

Correlations correlations(const ExtendedSetup &setup) {
    auto steps = extended_pipeline(setup);
    auto dist = run_pipeline(steps);

    auto mean_product = [](const OutcomeDistribution &bw) {
        const auto &bl = bw.axes()[0].labels;
        const auto &wl = bw.axes()[1].labels;
        double total = 0.0;
        for (std::size_t i = 0; i < bl.size(); ++i) {
            for (std::size_t j = 0; j < wl.size(); ++j) {
                total += std::stod(bl[i]) * std::stod(wl[j]) * bw.at({i, j});
            }
        }
        return total;
    };

    Correlations result;
    if (!setup.record) {
        result.overall = mean_product(dist);
        return result;
    }
    const std::string keep[] = {"b", "w"};
    result.overall = mean_product(dist.marginal(keep));
    const auto &message_axis = dist.axes().back().name;
    auto p_message = dist.marginal(message_axis);
    for (std::size_t n = 0; n < p_message.probabilities().size(); ++n) {
        result.by_message.push_back(
            p_message.at({n}) <= tol::kZeroProbability ? 0.0 : mean_product(dist.conditioned_on(message_axis, n)));
    }
    return result;
}

double correlator(const ExtendedSetup &setup, std::optional<std::size_t> message) {
    auto c = correlations(setup);
    if (!message) {
        return c.overall;
    }
    if (*message >= c.by_message.size()) {
        throw LayoutError("correlator: no such message");
    }
    return c.by_message[*message];
}

CMatrix bob_z() {
    const double h = 1.0 / std::numbers::sqrt2;
    CMatrix m(2, 2);
    m << h, h, h, -h;
    return m;
}

CMatrix bob_x() {
    const double h = 1.0 / std::numbers::sqrt2;
    CMatrix m(2, 2);
    m << h, -h, -h, -h;
    return m;
}

CMatrix wigner_z() {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(3, 3) = -1.0;
    return m;
}

CMatrix wigner_x() {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 3) = 1.0;
    m(3, 0) = 1.0;
    return m;
}

Correlations chsh(bool record, std::optional<ChannelAngles> channel) {
    struct Term {
        CMatrix bob, wigner;
        double sign;
    };
    const Term terms[] = {
        {bob_z(), wigner_z(), 1.0},
        {bob_x(), wigner_z(), 1.0},
        {bob_z(), wigner_x(), -1.0},
        {bob_x(), wigner_x(), 1.0},
    };
    Correlations total;
    for (const auto &t : terms) {
        auto c = correlations({t.bob, t.wigner, record, channel});
        total.overall += t.sign * c.overall;
        total.by_message.resize(c.by_message.size(), 0.0);
        for (std::size_t n = 0; n < c.by_message.size(); ++n) {
            total.by_message[n] += t.sign * c.by_message[n];
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Collapse enumeration

BranchTree collapse_enumeration(Complex alpha, Complex beta, Complex a, Complex b) {
    BranchTree tree;
    tree.axes = {{"f", {"0", "1"}}, {"w", {"1", "2", "perp"}}};
    tree.root.state = DensityMatrix::pure(qubit("S", alpha, beta));
    auto wigner = wigner_measurement(a, b, "S", "F");

    for (std::size_t f = 0; f < 2; ++f) {
        BranchNode friend_node{"f", std::to_string(f), 0.0, std::nullopt, {}};
        auto collapsed = condition(*tree.root.state, Operator::projector(StateVector::ket("S", 2, f)));
        friend_node.probability = collapsed.probability;
        if (collapsed.state) {
            friend_node.state = tensor(*collapsed.state, DensityMatrix::pure(StateVector::ket("F", 2, f)));
        }
        for (std::size_t k = 0; k < wigner.projectors.size(); ++k) {
            BranchNode leaf{"w", wigner.axis.labels[k], 0.0, std::nullopt, {}};
            if (friend_node.state) {
                auto full = embed(wigner.projectors[k], wigner.on, friend_node.state->layout());
                auto cond = condition(*friend_node.state, full);
                leaf.probability = friend_node.probability * cond.probability;
                leaf.state = std::move(cond.state);
            }
            friend_node.children.push_back(std::move(leaf));
        }
        tree.root.children.push_back(std::move(friend_node));
    }
    return tree;
}

}  // namespace wf::oracle
