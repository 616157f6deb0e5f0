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

#ifndef WF_QCORE_H
#define WF_QCORE_H

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

/// Dense complex linear algebra on small labeled tensor-product spaces.
///
/// Ordering convention: the leftmost factor of a layout is the most
/// significant digit of a flat index, so |i>_A |j>_B sits at i * dim(B) + j.
/// Every space handled here has dimension <= 16; everything is dense.
namespace wf {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

namespace tol {
/// Algebraic identities (norms, traces, Hermiticity, sum rules).
inline constexpr double kAlgebraic = 1e-12;
/// Spectra, idempotence, and projector-set completeness.
inline constexpr double kSpectral = 1e-10;
/// Probabilities at or below this are treated as zero when conditioning.
inline constexpr double kZeroProbability = 1e-14;
}  // namespace tol

/// Raised for malformed arguments: unknown labels, dimension mismatches,
/// empty inputs.
class LayoutError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a value violates a numerical invariant (norm, trace,
/// Hermiticity, positivity, projector algebra) beyond tolerance.
class InvariantError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

struct Factor {
    std::string label;
    std::size_t dim = 1;

    bool operator==(const Factor &) const = default;
};

/// Ordered list of labeled tensor factors. An empty layout is the trivial
/// one-dimensional space.
class SpaceLayout {
   public:
    SpaceLayout() = default;
    explicit SpaceLayout(std::vector<Factor> factors);
    static SpaceLayout single(std::string label, std::size_t dim);

    const std::vector<Factor> &factors() const { return factors_; }
    std::size_t total_dim() const { return total_dim_; }
    std::size_t num_factors() const { return factors_.size(); }

    bool contains(std::string_view label) const;
    /// Position of `label` among the factors. Throws LayoutError if absent.
    std::size_t position(std::string_view label) const;
    std::size_t dim_of(std::string_view label) const { return factors_[position(label)].dim; }

    /// This layout followed by `other`. Labels must stay unique.
    SpaceLayout concat(const SpaceLayout &other) const;
    /// The factors named in `labels`, in the order given.
    SpaceLayout select(std::span<const std::string> labels) const;
    /// The factors not named in `labels`, in layout order.
    SpaceLayout without(std::span<const std::string> labels) const;

    /// Per-factor digits of a flat index.
    std::vector<std::size_t> digits(std::size_t index) const;
    std::size_t flat_index(std::span<const std::size_t> digits) const;

    std::string str() const;

    bool operator==(const SpaceLayout &) const = default;

   private:
    std::vector<Factor> factors_;
    std::size_t total_dim_ = 1;
};

/// Normalized pure state.
class StateVector {
   public:
    StateVector(SpaceLayout layout, CVector amplitudes);

    /// Computational basis ket with the given per-factor digits.
    static StateVector basis(SpaceLayout layout, std::span<const std::size_t> digits);
    /// |index> on a single factor.
    static StateVector ket(std::string label, std::size_t dim, std::size_t index);
    /// Rescales `amplitudes` to unit norm. Throws on the zero vector.
    static StateVector normalized(SpaceLayout layout, CVector amplitudes);

    const SpaceLayout &layout() const { return layout_; }
    const CVector &amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }
    std::size_t dim() const { return layout_.total_dim(); }

    /// <this|other>. Dimensions must agree.
    Complex inner(const StateVector &other) const;
    /// Same amplitudes relabeled onto a layout of identical dimension.
    StateVector relabeled(SpaceLayout layout) const;

   private:
    SpaceLayout layout_;
    CVector amplitudes_;
};

/// Square matrix on a layout.
class Operator {
   public:
    Operator(SpaceLayout layout, CMatrix entries);

    static Operator identity(SpaceLayout layout);
    /// |ket><ket|.
    static Operator projector(const StateVector &ket);
    /// |ket><bra|. Layouts must agree.
    static Operator outer(const StateVector &ket, const StateVector &bra);

    const SpaceLayout &layout() const { return layout_; }
    const CMatrix &entries() const { return entries_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    std::size_t dim() const { return layout_.total_dim(); }

    bool is_hermitian(double tolerance = tol::kAlgebraic) const;
    Operator adjoint() const;
    Operator relabeled(SpaceLayout layout) const;

    Operator operator+(const Operator &other) const;
    Operator operator-(const Operator &other) const;
    Operator operator*(const Operator &other) const;
    Operator operator*(Complex scale) const;

   private:
    SpaceLayout layout_;
    CMatrix entries_;
};

/// Hermitian, unit-trace, positive semidefinite matrix. Validated on
/// construction.
class DensityMatrix {
   public:
    DensityMatrix(SpaceLayout layout, CMatrix entries);

    static DensityMatrix pure(const StateVector &state);
    static DensityMatrix maximally_mixed(SpaceLayout layout);

    const SpaceLayout &layout() const { return layout_; }
    const CMatrix &entries() const { return entries_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    std::size_t dim() const { return layout_.total_dim(); }

    Complex trace() const { return entries_.trace(); }
    double min_eigenvalue() const;

   private:
    SpaceLayout layout_;
    CMatrix entries_;
};

/// Kraus representation of a CPTP map on one layout.
class KrausChannel {
   public:
    explicit KrausChannel(std::vector<Operator> operators);

    const std::vector<Operator> &operators() const { return operators_; }
    const SpaceLayout &layout() const { return operators_.front().layout(); }

   private:
    std::vector<Operator> operators_;
};

/// Kronecker product, leftmost part most significant.
StateVector tensor(std::span<const StateVector> parts);
Operator tensor(std::span<const Operator> parts);
DensityMatrix tensor(std::span<const DensityMatrix> parts);
StateVector tensor(const StateVector &left, const StateVector &right);
Operator tensor(const Operator &left, const Operator &right);
DensityMatrix tensor(const DensityMatrix &left, const DensityMatrix &right);

/// Lifts `op`, acting on the factors `on` (in that order), to the whole of
/// `layout` with identity elsewhere. The dimension of `op` must equal the
/// product of the selected factor dimensions.
Operator embed(const Operator &op, std::span<const std::string> on, const SpaceLayout &layout);
Operator embed(const Operator &op, const std::string &on, const SpaceLayout &layout);

/// Traces out the factors named in `discard`.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::string> discard);
DensityMatrix partial_trace(const DensityMatrix &rho, const std::string &discard);

/// rho -> sum_k (1 x K_k) rho (1 x K_k)^dagger with the channel acting on
/// factor `on`.
DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &channel, const std::string &on);

/// U rho U^dagger. `unitary` acts on the factors `on`.
DensityMatrix apply_unitary(const DensityMatrix &rho, const Operator &unitary, std::span<const std::string> on);

/// Tr(obs rho) for a Hermitian observable on the same layout.
double expectation(const DensityMatrix &rho, const Operator &observable);

/// Born-rule probabilities Tr(P_i rho) for a complete set of orthogonal
/// projectors on the same layout as `rho`.
std::vector<double> born_probabilities(const DensityMatrix &rho, std::span<const Operator> projectors);

/// Throws InvariantError unless `projectors` are Hermitian, idempotent,
/// mutually orthogonal and sum to the identity.
void check_projective_measurement(std::span<const Operator> projectors);

struct Conditioned {
    double probability = 0.0;
    /// P rho P / p, absent when p is below tol::kZeroProbability.
    std::optional<DensityMatrix> state;
};

/// Lüders update for a single projector acting on the whole layout.
Conditioned condition(const DensityMatrix &rho, const Operator &projector);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const CMatrix &a, const CMatrix &b);

}  // namespace wf

#endif
