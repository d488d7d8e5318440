#include "qlv/subspace.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace qlv {

namespace {

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double orthonormality_defect(const ComplexMatrix& b) {
    if (b.cols() == 0) return 0.0;
    ComplexMatrix gram = b.adjoint() * b;
    gram.diagonal().array() -= 1.0;
    return max_abs(gram);
}

void require_finite(const ComplexMatrix& m) {
    if (!m.allFinite()) throw ValidationError("matrix has non-finite entries");
}

void require_same_dim(const Subspace& s, const Subspace& t, const char* op) {
    if (s.ambient_dim() != t.ambient_dim()) {
        throw DimensionError(std::string(op) + ": ambient dimensions differ (" +
                             std::to_string(s.ambient_dim()) + " vs " +
                             std::to_string(t.ambient_dim()) + ")");
    }
}

// Orthonormal basis of the numerical range of `a`, from a column-pivoted QR.
// Keeps the leading factors whose |r_kk| exceeds `cutoff` (when `relative`,
// `cutoff * |r_11|`). Pivoting makes the diagonal non-increasing.
ComplexMatrix range_basis(const ComplexMatrix& a, double cutoff, bool relative) {
    const Eigen::Index d = a.rows();
    if (a.cols() == 0 || d == 0) return ComplexMatrix(d, 0);

    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(a);
    const Eigen::VectorXd diag = qr.matrixQR().diagonal().cwiseAbs();
    if (diag.size() == 0 || diag(0) <= 0.0) return ComplexMatrix(d, 0);

    const double threshold = relative ? cutoff * diag(0) : cutoff;
    Eigen::Index keep = 0;
    while (keep < diag.size() && diag(keep) > threshold) ++keep;
    return qr.householderQ() * ComplexMatrix::Identity(d, keep);
}

// Orthonormal basis of the orthocomplement of span(b), b orthonormal.
ComplexMatrix complement_basis(const ComplexMatrix& b) {
    const Eigen::Index d = b.rows();
    const Eigen::Index k = b.cols();
    if (k == 0) return ComplexMatrix::Identity(d, d);
    if (k >= d) return ComplexMatrix(d, 0);
    Eigen::HouseholderQR<ComplexMatrix> qr(b);
    ComplexMatrix c = ComplexMatrix::Identity(d, d).rightCols(d - k);
    c.applyOnTheLeft(qr.householderQ());
    return c;
}

// Orthonormal basis of {c : |m c| <= cutoff}, the orthocomplement of the
// numerical row space of `m`.
ComplexMatrix null_basis(const ComplexMatrix& m, double cutoff) {
    return complement_basis(range_basis(m.adjoint(), cutoff, false));
}

ComplexMatrix thin_q(const ComplexMatrix& m) {
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    return qr.householderQ() * ComplexMatrix::Identity(m.rows(), m.cols());
}

}  // namespace

void ToleranceConfig::validate(std::size_t ambient_dim) const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(rank) || !positive(ortho) || !positive(incl)) {
        throw ValidationError("tolerances must be finite and strictly positive");
    }
    const double floor = std::numeric_limits<double>::epsilon() * static_cast<double>(ambient_dim);
    if (rank < floor) {
        throw ValidationError("rank tolerance " + std::to_string(rank) +
                              " is below machine epsilon times the dimension");
    }
}

ToleranceConfig ToleranceConfig::scaled(double eps) {
    const ToleranceConfig defaults;
    const double factor = eps / defaults.incl;
    return ToleranceConfig{defaults.rank * factor, defaults.ortho * factor, eps};
}

Subspace Subspace::zero(std::size_t ambient_dim) {
    return from_parts(ComplexMatrix(static_cast<Eigen::Index>(ambient_dim), 0), false);
}

Subspace Subspace::full(std::size_t ambient_dim) {
    return from_parts(ComplexMatrix(static_cast<Eigen::Index>(ambient_dim), 0), true);
}

Subspace Subspace::from_orthonormal(ComplexMatrix basis, const ToleranceConfig& tol) {
    require_finite(basis);
    if (basis.cols() > basis.rows()) {
        throw ValidationError("more basis columns than the ambient dimension");
    }
    if (orthonormality_defect(basis) > tol.ortho) {
        throw ValidationError("basis columns are not orthonormal");
    }
    return from_parts(std::move(basis), false);
}

Subspace Subspace::from_parts(ComplexMatrix stored, bool complemented) {
    Subspace s;
    s.ambient_dim_ = static_cast<std::size_t>(stored.rows());
    const auto k = static_cast<std::size_t>(stored.cols());
    s.rank_ = complemented ? s.ambient_dim_ - k : k;
    s.stored_ = std::move(stored);
    s.complemented_ = complemented;
    return s;
}

ComplexMatrix Subspace::basis() const {
    return complemented_ ? complement_basis(stored_) : stored_;
}

ComplexMatrix Subspace::projector() const {
    const auto d = static_cast<Eigen::Index>(ambient_dim_);
    ComplexMatrix p = stored_ * stored_.adjoint();
    if (complemented_) return ComplexMatrix::Identity(d, d) - p;
    return p;
}

double Subspace::distance(const StateVector& v) const {
    if (static_cast<std::size_t>(v.size()) != ambient_dim_) {
        throw DimensionError("vector size does not match the ambient dimension");
    }
    StateVector coeffs = stored_.adjoint() * v;
    if (complemented_) return coeffs.norm();
    return (v - stored_ * coeffs).norm();
}

Subspace span(const ComplexMatrix& vectors, const ToleranceConfig& tol) {
    require_finite(vectors);
    return Subspace::from_parts(range_basis(vectors, tol.rank, true), false);
}

Subspace span(std::span<const StateVector> vectors, const ToleranceConfig& tol) {
    if (vectors.empty()) {
        throw DimensionError("cannot infer the ambient dimension of an empty span");
    }
    return span(vectors, static_cast<std::size_t>(vectors.front().size()), tol);
}

Subspace span(std::span<const StateVector> vectors, std::size_t ambient_dim,
              const ToleranceConfig& tol) {
    const auto d = static_cast<Eigen::Index>(ambient_dim);
    ComplexMatrix m(d, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != d) {
            throw DimensionError("span: vector " + std::to_string(i) + " has dimension " +
                                 std::to_string(vectors[i].size()) + ", expected " +
                                 std::to_string(ambient_dim));
        }
        m.col(static_cast<Eigen::Index>(i)) = vectors[i];
    }
    return span(m, tol);
}

Subspace complement(const Subspace& s) {
    return Subspace::from_parts(s.stored_basis(), !s.stores_complement());
}

Subspace sum(const Subspace& s, const Subspace& t, const ToleranceConfig& tol) {
    require_same_dim(s, t, "sum");
    if (s.is_zero() || t.is_full()) return t;
    if (t.is_zero() || s.is_full()) return s;

    const ComplexMatrix& a = s.stored_basis();
    const ComplexMatrix& b = t.stored_basis();

    // All cutoffs below act on images of orthonormal columns, so the reference
    // scale for rank decisions is 1.
    if (!s.stores_complement() && !t.stores_complement()) {
        // Keep the larger basis and orthonormalize the residual of the smaller one.
        const bool swap = a.cols() < b.cols();
        const ComplexMatrix& base = swap ? b : a;
        const ComplexMatrix& other = swap ? a : b;
        ComplexMatrix residual = other - base * (base.adjoint() * other);
        residual -= base * (base.adjoint() * residual);
        const ComplexMatrix extra = range_basis(residual, tol.rank, false);
        if (extra.cols() == 0) return swap ? t : s;

        ComplexMatrix joined(base.rows(), base.cols() + extra.cols());
        joined << base, extra;
        return Subspace::from_parts(std::move(joined), false);
    }

    if (s.stores_complement() && t.stores_complement()) {
        // A^perp + B^perp = (A cap B)^perp. The part of the smaller basis lying
        // in the other span is the near-null space of its residual.
        const bool swap = a.cols() > b.cols();
        const ComplexMatrix& small = swap ? b : a;
        const ComplexMatrix& large = swap ? a : b;
        ComplexMatrix residual = small - large * (large.adjoint() * small);
        residual -= large * (large.adjoint() * residual);
        return Subspace::from_parts(small * null_basis(residual, tol.rank), true);
    }

    // P + Q^perp = (Q cap P^perp)^perp: the directions of Q orthogonal to P.
    const ComplexMatrix& p = s.stores_complement() ? b : a;
    const ComplexMatrix& q = s.stores_complement() ? a : b;
    return Subspace::from_parts(q * null_basis(p.adjoint() * q, tol.rank), true);
}

Subspace intersect(const Subspace& s, const Subspace& t, const ToleranceConfig& tol) {
    require_same_dim(s, t, "intersect");
    return complement(sum(complement(s), complement(t), tol));
}

InclusionResidual inclusion_residual(const Subspace& s, const Subspace& t) {
    require_same_dim(s, t, "includes");
    InclusionResidual out;
    if (s.is_zero()) return out;

    const ComplexMatrix bs = s.basis();
    const ComplexMatrix& bt = t.stored_basis();
    Eigen::VectorXd norms;
    if (t.stores_complement()) {
        norms = (bt.adjoint() * bs).colwise().norm().transpose();
    } else {
        norms = (bs - bt * (bt.adjoint() * bs)).colwise().norm().transpose();
    }
    Eigen::Index worst = 0;
    out.max_residual = norms.maxCoeff(&worst);
    out.worst_vector = bs.col(worst);
    return out;
}

bool includes(const Subspace& s, const Subspace& t, const ToleranceConfig& tol) {
    require_same_dim(s, t, "includes");
    if (s.rank() > t.rank()) return false;
    if (s.is_zero() || t.is_full()) return true;
    const ComplexMatrix& a = s.stored_basis();
    const ComplexMatrix& b = t.stored_basis();
    auto residual_norm = [](const ComplexMatrix& cols, const ComplexMatrix& onto) {
        return (cols - onto * (onto.adjoint() * cols)).colwise().norm().maxCoeff();
    };
    if (!s.stores_complement()) {
        if (t.stores_complement()) return (b.adjoint() * a).colwise().norm().maxCoeff() <= tol.incl;
        return residual_norm(a, b) <= tol.incl;
    }
    // s = A^perp is inside t iff t^perp is inside A.
    if (t.stores_complement()) return residual_norm(b, a) <= tol.incl;
    return inclusion_residual(s, t).max_residual <= tol.incl;
}

bool equals(const Subspace& s, const Subspace& t, const ToleranceConfig& tol) {
    require_same_dim(s, t, "equals");
    if (s.rank() != t.rank()) return false;
    return includes(s, t, tol) && includes(t, s, tol);
}

bool is_unitary(const ComplexMatrix& m, const ToleranceConfig& tol) {
    if (m.rows() != m.cols()) return false;
    if (!m.allFinite()) return false;
    return orthonormality_defect(m) <= tol.ortho;
}

Subspace apply_unitary(const ComplexMatrix& u, const Subspace& s, const ToleranceConfig& tol) {
    if (u.rows() != u.cols() || static_cast<std::size_t>(u.rows()) != s.ambient_dim()) {
        throw DimensionError("apply_unitary: operator is " + std::to_string(u.rows()) + "x" +
                             std::to_string(u.cols()) + ", subspace lives in dimension " +
                             std::to_string(s.ambient_dim()));
    }
    if (!is_unitary(u, tol)) throw ValidationError("apply_unitary: operator is not unitary");
    const bool exact = orthonormality_defect(u) <= 1e-13;
    return apply_action([&u](ComplexMatrix& m) { m = u * m; }, s, !exact);
}

Subspace apply_action(const ColumnAction& action, const Subspace& s, bool reorthonormalize) {
    ComplexMatrix m = s.stored_basis();
    if (m.cols() > 0) {
        action(m);
        if (reorthonormalize) m = thin_q(m);
    }
    // A unitary commutes with orthocomplementation, so the stored side is kept.
    return Subspace::from_parts(std::move(m), s.stores_complement());
}

Subspace closure(const Subspace& s, const ComplexMatrix& o, const ToleranceConfig& tol) {
    if (o.rows() != o.cols() || static_cast<std::size_t>(o.rows()) != s.ambient_dim()) {
        throw DimensionError("closure: observable does not match the subspace dimension");
    }
    require_finite(o);
    if (max_abs(o - o.adjoint()) > tol.ortho) {
        throw ValidationError("closure: observable is not Hermitian");
    }
    ComplexMatrix sq = o * o;
    sq.diagonal().array() -= 1.0;
    if (max_abs(sq) > tol.ortho) {
        throw ValidationError("closure: observable is not an involution");
    }
    return closure_action(s, [&o](ComplexMatrix& m) { m = o * m; }, tol);
}

Subspace closure_action(const Subspace& s, const ColumnAction& action, const ToleranceConfig& tol) {
    if (s.is_zero() || s.is_full()) return s;
    ComplexMatrix image = s.stored_basis();
    action(image);
    return sum(s, Subspace::from_parts(std::move(image), s.stores_complement()), tol);
}

}  // namespace qlv
