#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "bqm/config.hpp"
#include "bqm/matrix.hpp"

namespace bqm {

/// Hermitian element of the matrix algebra. The stored matrix is the exact
/// Hermitian part of the input after validation, so downstream arithmetic
/// never sees an anti-Hermitian residue.
class Observable {
public:
    Observable() = default;

    /// Throws NotHermitian if the defect exceeds `tol.hermitian`.
    explicit Observable(const ComplexMatrix& m, const Tolerances& tol = default_tolerances());

    static Observable identity(std::size_t dim, double scale = 1.0);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }

    friend bool operator==(const Observable&, const Observable&) = default;

private:
    ComplexMatrix m_;
};

Observable operator+(const Observable& a, const Observable& b);
Observable operator-(const Observable& a, const Observable& b);
Observable operator*(double s, const Observable& a);
/// Product of two observables. Hermitian only when they commute, so this
/// throws NotHermitian otherwise.
Observable product(const Observable& a, const Observable& b, const Tolerances& tol = default_tolerances());

/// Raw eigenpairs of a Hermitian matrix, ascending, eigenvectors as columns.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Cyclic complex Jacobi rotations. Throws ConvergenceFailure after
/// `tol.jacobi_max_sweeps` sweeps.
HermitianEigen hermitian_eigen(const ComplexMatrix& m, const Tolerances& tol = default_tolerances());

struct SpectralDecomposition {
    std::vector<double> eigenvalues;       // distinct, ascending
    std::vector<ComplexMatrix> projectors; // one per eigenvalue

    std::size_t size() const noexcept { return eigenvalues.size(); }
    ComplexMatrix reconstruct() const;
};

/// Joint orthonormal eigenbasis of a commuting family together with the
/// eigenvalue of every member on every basis vector.
class Context {
public:
    /// Build from an explicit basis. Validates orthonormality and that each
    /// member is diagonal in the basis (NotCommuting otherwise).
    static std::shared_ptr<const Context> from_basis(std::vector<ComplexVector> basis,
                                                     std::vector<Observable> members,
                                                     const Tolerances& tol = default_tolerances());

    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<ComplexVector>& basis() const noexcept { return basis_; }
    /// Unitary whose k-th column is basis()[k].
    const ComplexMatrix& basis_matrix() const noexcept { return basis_matrix_; }
    const std::vector<Observable>& members() const noexcept { return members_; }

    /// Eigenvalue of members()[member] on basis vector `index`.
    double member_value(std::size_t member, std::size_t index) const { return labels_.at(member).at(index); }

    /// True when every basis vector carries a distinct eigenvalue tuple, i.e.
    /// the family fixes the basis up to phases.
    bool is_maximal(const Tolerances& tol = default_tolerances()) const;

    /// True when `a` is diagonal in this basis (so it belongs to the commuting set).
    bool contains(const Observable& a, const Tolerances& tol = default_tolerances()) const;

    /// Eigenvalue of `a` on basis vector `index`. Throws NonCommuting when
    /// `a` is not diagonalized by the basis.
    double value_of(const Observable& a, std::size_t index, const Tolerances& tol = default_tolerances()) const;

    /// Same basis (up to per-vector phase) within `tol.orthonormal`.
    bool same_basis(const Context& other, const Tolerances& tol = default_tolerances()) const;

private:
    Context() = default;

    std::vector<ComplexVector> basis_;
    ComplexMatrix basis_matrix_;
    std::vector<Observable> members_;
    std::vector<std::vector<double>> labels_;

    friend std::shared_ptr<const Context> joint_diagonalize(std::span<const Observable>, const Tolerances&);
};

using ContextPtr = std::shared_ptr<const Context>;

/// AB - BA. Throws DimensionMismatch.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// True iff every pairwise commutator has max-norm <= tol.
bool is_commuting_family(std::span<const Observable> obs, double tol);

/// Distinct eigenvalues (merged within `tol.degeneracy`) with their projectors.
SpectralDecomposition spectral_decompose(const Observable& a, const Tolerances& tol = default_tolerances());

/// Simultaneous eigenbasis of a commuting family. Basis vectors are ordered
/// lexicographically by their eigenvalue tuples (members in input order);
/// any residual degeneracy is resolved by Gram-Schmidt over the projected
/// standard basis, which also fixes each vector's phase.
/// Throws NotCommuting, ConvergenceFailure, InvalidArgument (empty family).
ContextPtr joint_diagonalize(std::span<const Observable> obs, const Tolerances& tol = default_tolerances());

inline ContextPtr joint_diagonalize(std::initializer_list<Observable> obs,
                                    const Tolerances& tol = default_tolerances())
{
    return joint_diagonalize(std::span<const Observable>(obs.begin(), obs.size()), tol);
}

/// max |lambda|, equal to sqrt of the largest eigenvalue of A*A.
double operator_norm(const Observable& a, const Tolerances& tol = default_tolerances());

} // namespace bqm
