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

#include "wf/qcore.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

using namespace wf;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

SpaceLayout qubits(std::initializer_list<std::string> labels) {
    std::vector<Factor> f;
    for (const auto &l : labels) {
        f.push_back({l, 2});
    }
    return SpaceLayout(std::move(f));
}

CVector random_vector(std::mt19937_64 &rng, std::size_t dim) {
    std::normal_distribution<double> g;
    CVector v(static_cast<Eigen::Index>(dim));
    for (auto &x : v) {
        x = Complex(g(rng), g(rng));
    }
    return v / v.norm();
}

DensityMatrix random_density(std::mt19937_64 &rng, const SpaceLayout &layout, int rank) {
    auto d = static_cast<Eigen::Index>(layout.total_dim());
    std::uniform_real_distribution<double> u(0.1, 1.0);
    CMatrix m = CMatrix::Zero(d, d);
    double total = 0;
    std::vector<double> weights;
    for (int k = 0; k < rank; ++k) {
        weights.push_back(u(rng));
        total += weights.back();
    }
    for (int k = 0; k < rank; ++k) {
        CVector v = random_vector(rng, layout.total_dim());
        m += (weights[k] / total) * v * v.adjoint();
    }
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityMatrix(layout, m);
}

Operator pauli_x(const std::string &label) {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return Operator(SpaceLayout::single(label, 2), m);
}

Operator cnot(const std::string &control, const std::string &target) {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return Operator(SpaceLayout({{control, 2}, {target, 2}}), m);
}

}  // namespace

TEST(space_layout, digits_most_significant_first) {
    SpaceLayout l({{"A", 2}, {"B", 3}});
    ASSERT_EQ(l.total_dim(), 6u);
    ASSERT_EQ(l.digits(0), (std::vector<std::size_t>{0, 0}));
    ASSERT_EQ(l.digits(4), (std::vector<std::size_t>{1, 1}));
    ASSERT_EQ(l.digits(5), (std::vector<std::size_t>{1, 2}));
    std::vector<std::size_t> d{1, 2};
    ASSERT_EQ(l.flat_index(d), 5u);
    for (std::size_t i = 0; i < 6; ++i) {
        auto digits = l.digits(i);
        ASSERT_EQ(l.flat_index(digits), i);
    }
}

TEST(space_layout, rejects_bad_factors) {
    ASSERT_THROW(SpaceLayout({{"A", 2}, {"A", 2}}), LayoutError);
    ASSERT_THROW(SpaceLayout({{"", 2}}), LayoutError);
    ASSERT_THROW(SpaceLayout({{"A", 0}}), LayoutError);
    SpaceLayout l({{"A", 2}, {"B", 3}});
    ASSERT_THROW(l.position("C"), LayoutError);
    ASSERT_THROW(l.concat(SpaceLayout::single("B", 2)), LayoutError);
}

TEST(space_layout, select_and_without) {
    SpaceLayout l({{"A", 2}, {"B", 3}, {"C", 4}});
    std::vector<std::string> ca{"C", "A"};
    auto s = l.select(ca);
    ASSERT_EQ(s, SpaceLayout({{"C", 4}, {"A", 2}}));
    std::vector<std::string> b{"B"};
    ASSERT_EQ(l.without(b), SpaceLayout({{"A", 2}, {"C", 4}}));
    ASSERT_EQ(l.dim_of("C"), 4u);
}

TEST(state_vector, validates_norm) {
    CVector v(2);
    v << 1, 1;
    ASSERT_THROW(StateVector(SpaceLayout::single("A", 2), v), InvariantError);
    v << 1, std::nan("");
    ASSERT_THROW(StateVector::normalized(SpaceLayout::single("A", 2), v), InvariantError);
    CVector w(3);
    w << 1, 0, 0;
    ASSERT_THROW(StateVector(SpaceLayout::single("A", 2), w), LayoutError);
}

TEST(tensor, kets_left_factor_most_significant) {
    auto k = tensor(StateVector::ket("A", 2, 1), StateVector::ket("B", 3, 2));
    ASSERT_EQ(k.dim(), 6u);
    ASSERT_EQ(k[5], Complex(1));
    ASSERT_EQ(k.layout(), SpaceLayout({{"A", 2}, {"B", 3}}));
}

TEST(tensor, bell_state_from_cnot) {
    CVector plus(2);
    plus << kInvSqrt2, kInvSqrt2;
    auto s = tensor(StateVector(SpaceLayout::single("A", 2), plus), StateVector::ket("B", 2, 0));
    auto rho = DensityMatrix::pure(s);
    std::vector<std::string> on{"A", "B"};
    auto bell = apply_unitary(rho, cnot("A", "B"), on);
    ASSERT_NEAR(bell(0, 0).real(), 0.5, 1e-12);
    ASSERT_NEAR(bell(0, 3).real(), 0.5, 1e-12);
    ASSERT_NEAR(bell(3, 3).real(), 0.5, 1e-12);
    ASSERT_NEAR(std::abs(bell(1, 1)), 0.0, 1e-12);
}

TEST(tensor, empty_span_throws) {
    std::vector<StateVector> none;
    ASSERT_THROW(tensor(std::span<const StateVector>(none)), LayoutError);
}

TEST(embed, reorders_factors) {
    auto layout = qubits({"A", "B", "C"});
    std::vector<std::string> on{"C", "A"};
    // CNOT with control C, target A.
    auto op = embed(cnot("C", "A"), on, layout);
    auto in = StateVector::basis(layout, std::vector<std::size_t>{0, 1, 1});
    CVector out = op.entries() * in.amplitudes();
    auto expected = StateVector::basis(layout, std::vector<std::size_t>{1, 1, 1});
    ASSERT_LT((out - expected.amplitudes()).norm(), 1e-12);
}

TEST(partial_trace, bell_gives_maximally_mixed) {
    CVector v = CVector::Zero(4);
    v(0) = v(3) = kInvSqrt2;
    auto rho = DensityMatrix::pure(StateVector(qubits({"A", "B"}), v));
    auto reduced = partial_trace(rho, "B");
    ASSERT_EQ(reduced.layout(), SpaceLayout::single("A", 2));
    ASSERT_LT(max_abs_diff(reduced.entries(), CMatrix::Identity(2, 2) * 0.5), 1e-12);
}

TEST(partial_trace, product_state_returns_factor) {
    std::mt19937_64 rng(7);
    auto a = random_density(rng, SpaceLayout::single("A", 2), 2);
    auto b = random_density(rng, SpaceLayout::single("B", 3), 3);
    auto c = random_density(rng, SpaceLayout::single("C", 2), 1);
    std::vector<DensityMatrix> parts{a, b, c};
    auto abc = tensor(std::span<const DensityMatrix>(parts));
    std::vector<std::string> ac{"A", "C"};
    ASSERT_LT(max_abs_diff(partial_trace(abc, ac).entries(), b.entries()), 1e-12);
    std::vector<std::string> bb{"B"};
    ASSERT_LT(max_abs_diff(partial_trace(abc, bb).entries(), tensor(a, c).entries()), 1e-12);
}

TEST(partial_trace, random_states_stay_valid) {
    std::mt19937_64 rng(11);
    auto layout = SpaceLayout({{"A", 2}, {"B", 3}, {"C", 2}});
    for (int trial = 0; trial < 200; ++trial) {
        auto rho = random_density(rng, layout, 1 + trial % 4);
        for (const auto &label : {"A", "B", "C"}) {
            auto r = partial_trace(rho, std::string(label));
            ASSERT_NEAR(r.trace().real(), 1.0, 1e-12);
            ASSERT_LT(std::abs(r.trace().imag()), 1e-12);
            ASSERT_LT(max_abs_diff(r.entries(), r.entries().adjoint()), 1e-12);
            ASSERT_GE(r.min_eigenvalue(), -1e-10);
        }
    }
}

TEST(density_matrix, rejects_invalid) {
    auto l = SpaceLayout::single("A", 2);
    CMatrix m(2, 2);
    m << 0.5, 0.1, 0.2, 0.5;
    ASSERT_THROW(DensityMatrix(l, m), InvariantError);
    m << 0.6, 0, 0, 0.6;
    ASSERT_THROW(DensityMatrix(l, m), InvariantError);
    m << 1.5, 0, 0, -0.5;
    ASSERT_THROW(DensityMatrix(l, m), InvariantError);
    auto mixed = DensityMatrix::maximally_mixed(qubits({"A", "B", "C"}));
    ASSERT_NEAR(mixed(5, 5).real(), 0.125, 1e-15);
}

TEST(kraus_channel, rejects_incomplete) {
    auto l = SpaceLayout::single("A", 2);
    CMatrix k = CMatrix::Zero(2, 2);
    k(0, 0) = 1;
    ASSERT_THROW(KrausChannel({Operator(l, k)}), InvariantError);
    ASSERT_THROW(KrausChannel({}), LayoutError);
}

TEST(apply_channel, dephasing_kills_coherences_and_is_idempotent) {
    auto layout = qubits({"A", "B"});
    KrausChannel dephase({Operator::projector(StateVector::ket("A", 2, 0)), Operator::projector(StateVector::ket("A", 2, 1))});
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto rho = random_density(rng, layout, 1 + trial % 3);
        auto once = apply_channel(rho, dephase, "A");
        auto twice = apply_channel(once, dephase, "A");
        ASSERT_LT(max_abs_diff(once.entries(), twice.entries()), 1e-12);
        // <0_A ...|rho|1_A ...> vanishes.
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                ASSERT_LT(std::abs(once(i, 2 + j)), 1e-12);
            }
        }
        ASSERT_NEAR(once.trace().real(), 1.0, 1e-12);
        ASSERT_GE(once.min_eigenvalue(), -1e-10);
        // Tr_A is untouched by a channel on A.
        ASSERT_LT(max_abs_diff(partial_trace(once, "A").entries(), partial_trace(rho, "A").entries()), 1e-12);
    }
}

TEST(apply_channel, dimension_mismatch_throws) {
    auto rho = DensityMatrix::maximally_mixed(SpaceLayout({{"A", 3}}));
    KrausChannel id({Operator::identity(SpaceLayout::single("A", 2))});
    ASSERT_THROW(apply_channel(rho, id, "A"), LayoutError);
    ASSERT_THROW(apply_channel(rho, id, "Z"), LayoutError);
}

TEST(apply_unitary, rejects_non_unitary) {
    auto rho = DensityMatrix::maximally_mixed(SpaceLayout::single("A", 2));
    CMatrix m = CMatrix::Identity(2, 2) * 2.0;
    std::vector<std::string> on{"A"};
    ASSERT_THROW(apply_unitary(rho, Operator(SpaceLayout::single("A", 2), m), on), InvariantError);
}

TEST(expectation, pauli_values) {
    auto plus = DensityMatrix::pure(StateVector::normalized(SpaceLayout::single("A", 2), CVector::Ones(2)));
    ASSERT_NEAR(expectation(plus, pauli_x("A")), 1.0, 1e-12);
    auto zero = DensityMatrix::pure(StateVector::ket("A", 2, 0));
    ASSERT_NEAR(expectation(zero, pauli_x("A")), 0.0, 1e-12);
    CMatrix y(2, 2);
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    ASSERT_NEAR(expectation(zero, Operator(SpaceLayout::single("A", 2), y)), 0.0, 1e-12);
    CMatrix bad(2, 2);
    bad << 0, 1, 0, 0;
    ASSERT_THROW(expectation(zero, Operator(SpaceLayout::single("A", 2), bad)), InvariantError);
}

TEST(born_probabilities, bell_measurement) {
    auto layout = qubits({"A", "B"});
    CVector v = CVector::Zero(4);
    v(0) = v(3) = kInvSqrt2;
    auto phi_plus = StateVector(layout, v);
    v(3) = -kInvSqrt2;
    auto phi_minus = StateVector(layout, v);
    auto rho = DensityMatrix::pure(phi_plus);
    auto p1 = Operator::projector(phi_plus);
    auto p2 = Operator::projector(phi_minus);
    auto rest = Operator::identity(layout) - p1 - p2;
    std::vector<Operator> ps{p1, p2, rest};
    auto probs = born_probabilities(rho, ps);
    ASSERT_NEAR(probs[0], 1.0, 1e-12);
    ASSERT_NEAR(probs[1], 0.0, 1e-12);
    ASSERT_NEAR(probs[2], 0.0, 1e-12);
}

TEST(born_probabilities, rejects_incomplete_measurement) {
    auto layout = SpaceLayout::single("A", 2);
    auto rho = DensityMatrix::maximally_mixed(layout);
    std::vector<Operator> ps{Operator::projector(StateVector::ket("A", 2, 0))};
    ASSERT_THROW(born_probabilities(rho, ps), InvariantError);
    ASSERT_THROW(check_projective_measurement(ps), InvariantError);
}

TEST(condition, lueders_rule_and_null_branch) {
    auto layout = qubits({"A", "B"});
    CVector v = CVector::Zero(4);
    v(0) = v(3) = kInvSqrt2;
    auto rho = DensityMatrix::pure(StateVector(layout, v));
    auto p0 = embed(Operator::projector(StateVector::ket("A", 2, 0)), "A", layout);
    auto c = condition(rho, p0);
    ASSERT_NEAR(c.probability, 0.5, 1e-12);
    ASSERT_TRUE(c.state.has_value());
    ASSERT_NEAR((*c.state)(0, 0).real(), 1.0, 1e-12);

    auto zero = DensityMatrix::pure(StateVector::basis(layout, std::vector<std::size_t>{0, 0}));
    auto p1 = embed(Operator::projector(StateVector::ket("A", 2, 1)), "A", layout);
    auto null = condition(zero, p1);
    ASSERT_EQ(null.probability, 0.0);
    ASSERT_FALSE(null.state.has_value());
}

TEST(operator_algebra, hermitian_and_adjoint) {
    std::mt19937_64 rng(5);
    auto layout = qubits({"A", "B"});
    CMatrix m(4, 4);
    for (Eigen::Index r = 0; r < 4; ++r) {
        m.col(r) = random_vector(rng, 4);
    }
    Operator op(layout, m);
    ASSERT_FALSE(op.is_hermitian());
    ASSERT_TRUE((op + op.adjoint()).is_hermitian());
    ASSERT_LT(max_abs_diff((op * Complex(2.0)).entries(), (op + op).entries()), 1e-12);
    ASSERT_THROW(op * pauli_x("A"), LayoutError);
}
