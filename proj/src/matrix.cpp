#include "bqm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bqm/error.hpp"

namespace bqm {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what)
{
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": " + std::to_string(a.dim()) +
                                                      " vs " + std::to_string(b.dim()));
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries))
{
    if (data_.size() != dim_ * dim_) {
        throw Error(ErrorKind::InvalidArgument, "matrix of dimension " + std::to_string(dim_) + " needs " +
                                                    std::to_string(dim_ * dim_) + " entries, got " +
                                                    std::to_string(data_.size()));
    }
    if (!is_finite()) throw Error(ErrorKind::NotFinite, "matrix has NaN or infinite entries");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size())
{
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) throw Error(ErrorKind::InvalidArgument, "matrix rows must form a square");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!is_finite()) throw Error(ErrorKind::NotFinite, "matrix has NaN or infinite entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim)
{
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values)
{
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra)
{
    if (ket.size() != bra.size()) throw Error(ErrorKind::DimensionMismatch, "outer product of unequal vectors");
    ComplexMatrix m(ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i)
        for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> v) { return outer(v, v); }

ComplexMatrix ComplexMatrix::adjoint() const
{
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Complex ComplexMatrix::trace() const
{
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const
{
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::frobenius_norm() const
{
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

bool ComplexMatrix::is_finite() const
{
    return std::all_of(data_.begin(), data_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double ComplexMatrix::hermiticity_defect() const
{
    double d = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j) d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

ComplexMatrix ComplexMatrix::hermitian_part() const
{
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return m;
}

ComplexVector ComplexMatrix::column(std::size_t col) const
{
    ComplexVector v(dim_);
    for (std::size_t i = 0; i < dim_; ++i) v[i] = (*this)(i, col);
    return v;
}

ComplexVector ComplexMatrix::apply(std::span<const Complex> v) const
{
    if (v.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
    ComplexVector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs)
{
    require_same_dim(*this, rhs, "matrix sum");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs)
{
    require_same_dim(*this, rhs, "matrix difference");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar)
{
    for (auto& z : data_) z *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs)
{
    require_same_dim(lhs, rhs, "matrix product");
    const std::size_t n = lhs.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b)
{
    require_same_dim(a, b, "max_abs_diff");
    double d = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
    return d;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    return out;
}

ComplexMatrix partial_trace_first(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b)
{
    if (m.dim() != dim_a * dim_b) throw Error(ErrorKind::DimensionMismatch, "partial trace factor sizes");
    ComplexMatrix out(dim_b);
    for (std::size_t k = 0; k < dim_b; ++k)
        for (std::size_t l = 0; l < dim_b; ++l)
            for (std::size_t i = 0; i < dim_a; ++i) out(k, l) += m(i * dim_b + k, i * dim_b + l);
    return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b)
{
    if (m.dim() != dim_a * dim_b) throw Error(ErrorKind::DimensionMismatch, "partial trace factor sizes");
    ComplexMatrix out(dim_a);
    for (std::size_t i = 0; i < dim_a; ++i)
        for (std::size_t j = 0; j < dim_a; ++j)
            for (std::size_t k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
}

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket)
{
    if (bra.size() != ket.size()) throw Error(ErrorKind::DimensionMismatch, "inner product");
    Complex s = 0.0;
    for (std::size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
    return s;
}

double norm(std::span<const Complex> v)
{
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

Complex sandwich(std::span<const Complex> v, const ComplexMatrix& m)
{
    const auto mv = m.apply(v);
    return inner(v, mv);
}

namespace pauli {
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
} // namespace pauli

} // namespace bqm
