#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qlv/errors.hpp"

namespace qlv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Numerical thresholds used by every subspace decision.
///
/// `rank` is a relative singular-value cutoff, `ortho` bounds the
/// orthonormality residual of bases and unitaries, `incl` bounds the
/// projection residual accepted by inclusion tests.
struct ToleranceConfig {
    double rank = 1e-9;
    double ortho = 1e-9;
    double incl = 1e-8;

    /// Throws ValidationError unless all tolerances are positive and `rank`
    /// is at least machine epsilon times the ambient dimension.
    void validate(std::size_t ambient_dim) const;

    /// Tolerances with `incl = eps` and the other two scaled by the same
    /// factor relative to the defaults.
    static ToleranceConfig scaled(double eps);
};

/// A closed subspace of C^d.
///
/// Immutable. Internally a subspace is held as an orthonormal basis either of
/// itself or of its orthocomplement, which makes `complement` O(1) and lets
/// unitary images act on whichever basis is stored. `basis()` always returns
/// an orthonormal basis of the subspace itself.
class Subspace {
public:
    /// The zero subspace of C^0.
    Subspace() = default;

    static Subspace zero(std::size_t ambient_dim);
    static Subspace full(std::size_t ambient_dim);

    /// Wraps columns that are already orthonormal. Throws ValidationError if
    /// the orthonormality residual exceeds `tol.ortho`.
    static Subspace from_orthonormal(ComplexMatrix basis, const ToleranceConfig& tol = {});

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t rank() const { return rank_; }
    bool is_zero() const { return rank_ == 0; }
    bool is_full() const { return rank_ == ambient_dim_; }

    /// Orthonormal d x k basis. Column order and phases are unspecified.
    ComplexMatrix basis() const;

    /// Orthogonal projector onto the subspace (d x d).
    ComplexMatrix projector() const;

    /// Norm of the component of `v` orthogonal to the subspace.
    double distance(const StateVector& v) const;

    /// Stored representation; `stores_complement()` tells which side it spans.
    const ComplexMatrix& stored_basis() const { return stored_; }
    bool stores_complement() const { return complemented_; }

    /// Builds a subspace from a stored representation without checks.
    static Subspace from_parts(ComplexMatrix stored, bool complemented);

private:
    ComplexMatrix stored_;
    bool complemented_ = false;
    std::size_t ambient_dim_ = 0;
    std::size_t rank_ = 0;
};

/// Rank-revealing orthonormalization of the columns of `vectors`.
/// Keeps left singular vectors whose singular value exceeds
/// `tol.rank * sigma_max`.
Subspace span(const ComplexMatrix& vectors, const ToleranceConfig& tol = {});
Subspace span(std::span<const StateVector> vectors, const ToleranceConfig& tol = {});
Subspace span(std::span<const StateVector> vectors, std::size_t ambient_dim,
              const ToleranceConfig& tol = {});

Subspace complement(const Subspace& s);
Subspace sum(const Subspace& s, const Subspace& t, const ToleranceConfig& tol = {});
Subspace intersect(const Subspace& s, const Subspace& t, const ToleranceConfig& tol = {});

/// Largest projection residual of a basis column of `s` against `t`, and the
/// column that attains it (empty when `s` is zero).
struct InclusionResidual {
    double max_residual = 0.0;
    StateVector worst_vector;
};
InclusionResidual inclusion_residual(const Subspace& s, const Subspace& t);

/// s is a subset of t, within `tol.incl`.
bool includes(const Subspace& s, const Subspace& t, const ToleranceConfig& tol = {});

/// Mutual inclusion.
bool equals(const Subspace& s, const Subspace& t, const ToleranceConfig& tol = {});

bool is_unitary(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Image of `s` under the unitary `u`. Throws ValidationError if `u` is not
/// unitary and DimensionError on size mismatch.
Subspace apply_unitary(const ComplexMatrix& u, const Subspace& s, const ToleranceConfig& tol = {});

/// In-place action of a unitary on the columns of a d x k matrix.
using ColumnAction = std::function<void(ComplexMatrix&)>;

/// Image of `s` under a unitary given by its action on columns. When
/// `reorthonormalize` is set the image basis is re-orthonormalized, which
/// absorbs small unitarity defects of the action.
Subspace apply_action(const ColumnAction& action, const Subspace& s, bool reorthonormalize);

/// Measurement closure `s + o(s)` for a Hermitian involution `o`. Throws
/// ValidationError if `o` is not Hermitian or `o^2 != I`.
Subspace closure(const Subspace& s, const ComplexMatrix& o, const ToleranceConfig& tol = {});

/// Measurement closure for an involution given by its column action.
Subspace closure_action(const Subspace& s, const ColumnAction& action, const ToleranceConfig& tol = {});

}  // namespace qlv
