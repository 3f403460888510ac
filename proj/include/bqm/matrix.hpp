#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bqm {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense square complex matrix stored row-major. Supports the small
/// dimensions used throughout the engine (d <= 16), but nothing enforces an
/// upper bound.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    /// Zero matrix of the given dimension.
    explicit ComplexMatrix(std::size_t dim);

    /// Row-major entries; throws InvalidArgument unless entries.size() == dim*dim,
    /// NotFinite on NaN/Inf.
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    /// Nested rows; must be square.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);
    /// |v><v|
    static ComplexMatrix projector(std::span<const Complex> v);

    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return dim_ == 0; }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    std::span<const Complex> entries() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    /// max |M_ij|
    double max_abs() const;
    double frobenius_norm() const;
    bool is_finite() const;
    /// max |M_ij - conj(M_ji)|
    double hermiticity_defect() const;
    /// (M + M*)/2
    ComplexMatrix hermitian_part() const;

    ComplexVector column(std::size_t col) const;
    ComplexVector apply(std::span<const Complex> v) const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, Complex s) { return lhs *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix rhs) { return rhs *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// max |A_ij - B_ij|; throws DimensionMismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; index of (i, j) is i * b.dim() + j.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace of a bipartite operator on C^{dim_a} (x) C^{dim_b}.
ComplexMatrix partial_trace_first(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b);
ComplexMatrix partial_trace_second(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b);

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);
double norm(std::span<const Complex> v);

/// <v| M |v>
Complex sandwich(std::span<const Complex> v, const ComplexMatrix& m);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
} // namespace pauli

} // namespace bqm
