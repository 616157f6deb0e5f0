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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace wf {

namespace {

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

bool all_finite(const CMatrix &m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
                return false;
            }
        }
    }
    return true;
}

bool all_finite(const CVector &v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
            return false;
        }
    }
    return true;
}

void require_square(const SpaceLayout &layout, const CMatrix &m, const char *what) {
    auto n = ix(layout.total_dim());
    if (m.rows() != n || m.cols() != n) {
        std::ostringstream ss;
        ss << what << ": matrix is " << m.rows() << "x" << m.cols() << " but layout " << layout.str()
           << " has dimension " << n;
        throw LayoutError(ss.str());
    }
}

void require_same_layout(const SpaceLayout &a, const SpaceLayout &b, const char *what) {
    if (!(a == b)) {
        throw LayoutError(std::string(what) + ": layout mismatch " + a.str() + " vs " + b.str());
    }
}

std::vector<std::size_t> positions_of(const SpaceLayout &layout, std::span<const std::string> labels) {
    std::vector<std::size_t> result;
    result.reserve(labels.size());
    for (const auto &label : labels) {
        auto p = layout.position(label);
        if (std::find(result.begin(), result.end(), p) != result.end()) {
            throw LayoutError("duplicate label '" + label + "'");
        }
        result.push_back(p);
    }
    return result;
}

}  // namespace

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw LayoutError("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// SpaceLayout

SpaceLayout::SpaceLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
    std::set<std::string> seen;
    for (const auto &f : factors_) {
        if (f.label.empty()) {
            throw LayoutError("factor label must be non-empty");
        }
        if (f.dim < 1) {
            throw LayoutError("factor '" + f.label + "' has dimension 0");
        }
        if (!seen.insert(f.label).second) {
            throw LayoutError("duplicate factor label '" + f.label + "'");
        }
        total_dim_ *= f.dim;
    }
}

SpaceLayout SpaceLayout::single(std::string label, std::size_t dim) {
    return SpaceLayout({Factor{std::move(label), dim}});
}

bool SpaceLayout::contains(std::string_view label) const {
    return std::any_of(factors_.begin(), factors_.end(), [&](const Factor &f) { return f.label == label; });
}

std::size_t SpaceLayout::position(std::string_view label) const {
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (factors_[k].label == label) {
            return k;
        }
    }
    throw LayoutError("unknown factor label '" + std::string(label) + "' in layout " + str());
}

SpaceLayout SpaceLayout::concat(const SpaceLayout &other) const {
    auto combined = factors_;
    combined.insert(combined.end(), other.factors_.begin(), other.factors_.end());
    return SpaceLayout(std::move(combined));
}

SpaceLayout SpaceLayout::select(std::span<const std::string> labels) const {
    std::vector<Factor> picked;
    for (auto p : positions_of(*this, labels)) {
        picked.push_back(factors_[p]);
    }
    return SpaceLayout(std::move(picked));
}

SpaceLayout SpaceLayout::without(std::span<const std::string> labels) const {
    auto drop = positions_of(*this, labels);
    std::vector<Factor> kept;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (std::find(drop.begin(), drop.end(), k) == drop.end()) {
            kept.push_back(factors_[k]);
        }
    }
    return SpaceLayout(std::move(kept));
}

std::vector<std::size_t> SpaceLayout::digits(std::size_t index) const {
    std::vector<std::size_t> d(factors_.size());
    for (std::size_t k = factors_.size(); k-- > 0;) {
        d[k] = index % factors_[k].dim;
        index /= factors_[k].dim;
    }
    return d;
}

std::size_t SpaceLayout::flat_index(std::span<const std::size_t> digits) const {
    if (digits.size() != factors_.size()) {
        throw LayoutError("flat_index: expected " + std::to_string(factors_.size()) + " digits");
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (digits[k] >= factors_[k].dim) {
            throw LayoutError("flat_index: digit out of range for factor '" + factors_[k].label + "'");
        }
        index = index * factors_[k].dim + digits[k];
    }
    return index;
}

std::string SpaceLayout::str() const {
    std::string s = "[";
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (k) {
            s += " x ";
        }
        s += factors_[k].label + ":" + std::to_string(factors_[k].dim);
    }
    return s + "]";
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(SpaceLayout layout, CVector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != ix(layout_.total_dim())) {
        throw LayoutError("StateVector: " + std::to_string(amplitudes_.size()) + " amplitudes for layout " +
                          layout_.str());
    }
    if (!all_finite(amplitudes_)) {
        throw InvariantError("StateVector: non-finite amplitude");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > tol::kAlgebraic) {
        throw InvariantError("StateVector: norm " + std::to_string(amplitudes_.norm()) + " is not 1");
    }
}

StateVector StateVector::basis(SpaceLayout layout, std::span<const std::size_t> digits) {
    CVector v = CVector::Zero(ix(layout.total_dim()));
    v[ix(layout.flat_index(digits))] = 1.0;
    return StateVector(std::move(layout), std::move(v));
}

StateVector StateVector::ket(std::string label, std::size_t dim, std::size_t index) {
    std::size_t d[] = {index};
    return basis(SpaceLayout::single(std::move(label), dim), d);
}

StateVector StateVector::normalized(SpaceLayout layout, CVector amplitudes) {
    double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw InvariantError("StateVector::normalized: zero or non-finite vector");
    }
    return StateVector(std::move(layout), amplitudes / n);
}

Complex StateVector::inner(const StateVector &other) const {
    if (dim() != other.dim()) {
        throw LayoutError("inner: dimension mismatch");
    }
    return amplitudes_.dot(other.amplitudes_);
}

StateVector StateVector::relabeled(SpaceLayout layout) const {
    return StateVector(std::move(layout), amplitudes_);
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(SpaceLayout layout, CMatrix entries) : layout_(std::move(layout)), entries_(std::move(entries)) {
    require_square(layout_, entries_, "Operator");
    if (!all_finite(entries_)) {
        throw InvariantError("Operator: non-finite entry");
    }
}

Operator Operator::identity(SpaceLayout layout) {
    auto n = ix(layout.total_dim());
    return Operator(std::move(layout), CMatrix::Identity(n, n));
}

Operator Operator::projector(const StateVector &ket) { return outer(ket, ket); }

Operator Operator::outer(const StateVector &ket, const StateVector &bra) {
    require_same_layout(ket.layout(), bra.layout(), "outer");
    return Operator(ket.layout(), ket.amplitudes() * bra.amplitudes().adjoint());
}

bool Operator::is_hermitian(double tolerance) const {
    return max_abs_diff(entries_, entries_.adjoint()) <= tolerance;
}

Operator Operator::adjoint() const { return Operator(layout_, entries_.adjoint()); }

Operator Operator::relabeled(SpaceLayout layout) const { return Operator(std::move(layout), entries_); }

Operator Operator::operator+(const Operator &other) const {
    require_same_layout(layout_, other.layout_, "Operator +");
    return Operator(layout_, entries_ + other.entries_);
}

Operator Operator::operator-(const Operator &other) const {
    require_same_layout(layout_, other.layout_, "Operator -");
    return Operator(layout_, entries_ - other.entries_);
}

Operator Operator::operator*(const Operator &other) const {
    require_same_layout(layout_, other.layout_, "Operator *");
    return Operator(layout_, entries_ * other.entries_);
}

Operator Operator::operator*(Complex scale) const { return Operator(layout_, entries_ * scale); }

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(SpaceLayout layout, CMatrix entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
    require_square(layout_, entries_, "DensityMatrix");
    if (!all_finite(entries_)) {
        throw InvariantError("DensityMatrix: non-finite entry");
    }
    double asym = max_abs_diff(entries_, entries_.adjoint());
    if (asym > tol::kAlgebraic) {
        throw InvariantError("DensityMatrix: not Hermitian (deviation " + std::to_string(asym) + ")");
    }
    if (std::abs(entries_.trace() - Complex(1.0)) > tol::kAlgebraic) {
        std::ostringstream ss;
        ss << "DensityMatrix: trace " << entries_.trace() << " is not 1";
        throw InvariantError(ss.str());
    }
    double lo = min_eigenvalue();
    if (lo < -tol::kSpectral) {
        throw InvariantError("DensityMatrix: negative eigenvalue " + std::to_string(lo));
    }
}

DensityMatrix DensityMatrix::pure(const StateVector &state) {
    return DensityMatrix(state.layout(), state.amplitudes() * state.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(SpaceLayout layout) {
    auto n = ix(layout.total_dim());
    return DensityMatrix(std::move(layout), CMatrix::Identity(n, n) / static_cast<double>(n));
}

double DensityMatrix::min_eigenvalue() const {
    CMatrix herm = (entries_ + entries_.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// KrausChannel

KrausChannel::KrausChannel(std::vector<Operator> operators) : operators_(std::move(operators)) {
    if (operators_.empty()) {
        throw LayoutError("KrausChannel: no Kraus operators");
    }
    const auto &layout = operators_.front().layout();
    auto n = ix(layout.total_dim());
    CMatrix sum = CMatrix::Zero(n, n);
    for (const auto &k : operators_) {
        require_same_layout(layout, k.layout(), "KrausChannel");
        sum += k.entries().adjoint() * k.entries();
    }
    double dev = max_abs_diff(sum, CMatrix::Identity(n, n));
    if (dev > tol::kSpectral) {
        throw InvariantError("KrausChannel: completeness violated by " + std::to_string(dev));
    }
}

// ---------------------------------------------------------------------------
// Tensor products

namespace {

template <typename Part>
SpaceLayout joint_layout(std::span<const Part> parts) {
    if (parts.empty()) {
        throw LayoutError("tensor: empty part list");
    }
    SpaceLayout layout = parts.front().layout();
    for (std::size_t k = 1; k < parts.size(); ++k) {
        layout = layout.concat(parts[k].layout());
    }
    return layout;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

}  // namespace

StateVector tensor(std::span<const StateVector> parts) {
    auto layout = joint_layout(parts);
    CMatrix acc = parts.front().amplitudes();
    for (std::size_t k = 1; k < parts.size(); ++k) {
        acc = kron(acc, parts[k].amplitudes());
    }
    return StateVector(std::move(layout), acc.col(0));
}

Operator tensor(std::span<const Operator> parts) {
    auto layout = joint_layout(parts);
    CMatrix acc = parts.front().entries();
    for (std::size_t k = 1; k < parts.size(); ++k) {
        acc = kron(acc, parts[k].entries());
    }
    return Operator(std::move(layout), std::move(acc));
}

DensityMatrix tensor(std::span<const DensityMatrix> parts) {
    auto layout = joint_layout(parts);
    CMatrix acc = parts.front().entries();
    for (std::size_t k = 1; k < parts.size(); ++k) {
        acc = kron(acc, parts[k].entries());
    }
    return DensityMatrix(std::move(layout), std::move(acc));
}

StateVector tensor(const StateVector &left, const StateVector &right) {
    const StateVector parts[] = {left, right};
    return tensor(std::span<const StateVector>(parts));
}

Operator tensor(const Operator &left, const Operator &right) {
    const Operator parts[] = {left, right};
    return tensor(std::span<const Operator>(parts));
}

DensityMatrix tensor(const DensityMatrix &left, const DensityMatrix &right) {
    const DensityMatrix parts[] = {left, right};
    return tensor(std::span<const DensityMatrix>(parts));
}

// ---------------------------------------------------------------------------
// Embedding, partial trace, channels

Operator embed(const Operator &op, std::span<const std::string> on, const SpaceLayout &layout) {
    auto pos = positions_of(layout, on);
    auto sub = layout.select(on);
    if (sub.total_dim() != op.dim()) {
        throw LayoutError("embed: operator dimension " + std::to_string(op.dim()) + " does not match factors " +
                          sub.str());
    }
    const auto n = layout.total_dim();
    std::vector<std::vector<std::size_t>> digits(n);
    std::vector<std::size_t> sub_index(n);
    for (std::size_t i = 0; i < n; ++i) {
        digits[i] = layout.digits(i);
        std::vector<std::size_t> sd;
        for (auto p : pos) {
            sd.push_back(digits[i][p]);
        }
        sub_index[i] = sub.flat_index(sd);
    }
    auto is_selected = [&](std::size_t k) { return std::find(pos.begin(), pos.end(), k) != pos.end(); };

    CMatrix out = CMatrix::Zero(ix(n), ix(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            bool spectators_match = true;
            for (std::size_t k = 0; k < layout.num_factors() && spectators_match; ++k) {
                spectators_match = is_selected(k) || digits[i][k] == digits[j][k];
            }
            if (spectators_match) {
                out(ix(i), ix(j)) = op(sub_index[i], sub_index[j]);
            }
        }
    }
    return Operator(layout, std::move(out));
}

Operator embed(const Operator &op, const std::string &on, const SpaceLayout &layout) {
    const std::string labels[] = {on};
    return embed(op, std::span<const std::string>(labels), layout);
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::string> discard) {
    const auto &layout = rho.layout();
    auto drop = positions_of(layout, discard);
    auto kept = layout.without(discard);
    std::vector<std::size_t> keep_pos;
    for (std::size_t k = 0; k < layout.num_factors(); ++k) {
        if (std::find(drop.begin(), drop.end(), k) == drop.end()) {
            keep_pos.push_back(k);
        }
    }

    const auto n = layout.total_dim();
    std::vector<std::size_t> kept_index(n);
    std::vector<std::vector<std::size_t>> dropped_digits(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto d = layout.digits(i);
        std::vector<std::size_t> kd;
        for (auto p : keep_pos) {
            kd.push_back(d[p]);
        }
        for (auto p : drop) {
            dropped_digits[i].push_back(d[p]);
        }
        kept_index[i] = kept.flat_index(kd);
    }

    CMatrix out = CMatrix::Zero(ix(kept.total_dim()), ix(kept.total_dim()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (dropped_digits[i] == dropped_digits[j]) {
                out(ix(kept_index[i]), ix(kept_index[j])) += rho(i, j);
            }
        }
    }
    return DensityMatrix(std::move(kept), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix &rho, const std::string &discard) {
    const std::string labels[] = {discard};
    return partial_trace(rho, std::span<const std::string>(labels));
}

DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &channel, const std::string &on) {
    const auto &layout = rho.layout();
    if (channel.layout().total_dim() != layout.dim_of(on)) {
        throw LayoutError("apply_channel: channel dimension " + std::to_string(channel.layout().total_dim()) +
                          " does not match factor '" + on + "' of dimension " + std::to_string(layout.dim_of(on)));
    }
    auto n = ix(layout.total_dim());
    CMatrix out = CMatrix::Zero(n, n);
    for (const auto &k : channel.operators()) {
        auto full = embed(k, on, layout);
        out += full.entries() * rho.entries() * full.entries().adjoint();
    }
    return DensityMatrix(layout, std::move(out));
}

DensityMatrix apply_unitary(const DensityMatrix &rho, const Operator &unitary, std::span<const std::string> on) {
    auto n = ix(unitary.dim());
    if (max_abs_diff(unitary.entries().adjoint() * unitary.entries(), CMatrix::Identity(n, n)) > tol::kSpectral) {
        throw InvariantError("apply_unitary: operator is not unitary");
    }
    auto full = embed(unitary, on, rho.layout());
    return DensityMatrix(rho.layout(), full.entries() * rho.entries() * full.entries().adjoint());
}

// ---------------------------------------------------------------------------
// Measurement

double expectation(const DensityMatrix &rho, const Operator &observable) {
    require_same_layout(rho.layout(), observable.layout(), "expectation");
    if (!observable.is_hermitian()) {
        throw InvariantError("expectation: observable is not Hermitian");
    }
    Complex value = (observable.entries() * rho.entries()).trace();
    if (std::abs(value.imag()) > tol::kSpectral) {
        throw InvariantError("expectation: imaginary residue " + std::to_string(value.imag()));
    }
    return value.real();
}

void check_projective_measurement(std::span<const Operator> projectors) {
    if (projectors.empty()) {
        throw InvariantError("projective measurement: no projectors");
    }
    const auto &layout = projectors.front().layout();
    auto n = ix(layout.total_dim());
    CMatrix sum = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        const auto &p = projectors[i];
        require_same_layout(layout, p.layout(), "projective measurement");
        if (!p.is_hermitian(tol::kSpectral)) {
            throw InvariantError("projective measurement: projector " + std::to_string(i) + " is not Hermitian");
        }
        if (max_abs_diff(p.entries() * p.entries(), p.entries()) > tol::kSpectral) {
            throw InvariantError("projective measurement: projector " + std::to_string(i) + " is not idempotent");
        }
        for (std::size_t j = i + 1; j < projectors.size(); ++j) {
            CMatrix prod = p.entries() * projectors[j].entries();
            if (prod.cwiseAbs().maxCoeff() > tol::kSpectral) {
                throw InvariantError("projective measurement: projectors " + std::to_string(i) + " and " +
                                     std::to_string(j) + " are not orthogonal");
            }
        }
        sum += p.entries();
    }
    if (max_abs_diff(sum, CMatrix::Identity(n, n)) > tol::kSpectral) {
        throw InvariantError("projective measurement: projectors do not sum to the identity");
    }
}

std::vector<double> born_probabilities(const DensityMatrix &rho, std::span<const Operator> projectors) {
    check_projective_measurement(projectors);
    require_same_layout(rho.layout(), projectors.front().layout(), "born_probabilities");
    std::vector<double> probs;
    probs.reserve(projectors.size());
    double total = 0.0;
    for (const auto &p : projectors) {
        Complex v = (p.entries() * rho.entries()).trace();
        if (std::abs(v.imag()) > tol::kSpectral || v.real() < -tol::kAlgebraic || v.real() > 1.0 + tol::kAlgebraic) {
            std::ostringstream ss;
            ss << "born_probabilities: probability " << v << " out of range";
            throw InvariantError(ss.str());
        }
        total += v.real();
        probs.push_back(std::clamp(v.real(), 0.0, 1.0));
    }
    if (std::abs(total - 1.0) > tol::kSpectral) {
        throw InvariantError("born_probabilities: total " + std::to_string(total) + " is not 1");
    }
    return probs;
}

Conditioned condition(const DensityMatrix &rho, const Operator &projector) {
    require_same_layout(rho.layout(), projector.layout(), "condition");
    const auto &p = projector.entries();
    CMatrix projected = p * rho.entries() * p.adjoint();
    double prob = projected.trace().real();
    if (prob <= tol::kZeroProbability) {
        return {std::max(prob, 0.0), std::nullopt};
    }
    CMatrix post = projected / prob;
    // Restore exact Hermiticity lost to rounding in the triple product.
    post = (post + post.adjoint()).eval() * 0.5;
    return {prob, DensityMatrix(rho.layout(), std::move(post))};
}

}  // namespace wf
