#include "bqm/random_matrices.hpp"

#include <cmath>

namespace bqm::random {

Complex gaussian_complex(CounterRng& rng)
{
    const double re = rng.normal();
    const double im = rng.normal();
    return {re, im};
}

Observable hermitian(std::size_t dim, CounterRng& rng)
{
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = gaussian_complex(rng);
    return Observable(g.hermitian_part());
}

ComplexMatrix unitary(std::size_t dim, CounterRng& rng)
{
    std::vector<ComplexVector> cols;
    while (cols.size() < dim) {
        ComplexVector v(dim);
        for (auto& z : v) z = gaussian_complex(rng);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : cols) {
                const Complex c = inner(u, v);
                for (std::size_t i = 0; i < dim; ++i) v[i] -= c * u[i];
            }
        const double n = norm(v);
        if (n < 1e-6) continue;
        for (auto& z : v) z /= n;
        cols.push_back(std::move(v));
    }
    ComplexMatrix u(dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) u(i, j) = cols[j][i];
    return u;
}

QuantumState density(std::size_t dim, CounterRng& rng)
{
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = gaussian_complex(rng);
    ComplexMatrix rho = g * g.adjoint();
    rho *= Complex(1.0 / rho.trace().real());
    return QuantumState(rho.hermitian_part());
}

QuantumState pure(std::size_t dim, CounterRng& rng)
{
    ComplexVector v(dim);
    for (auto& z : v) z = gaussian_complex(rng);
    return QuantumState::pure(v);
}

Observable with_spectrum(const ComplexMatrix& u, std::span<const double> values)
{
    return Observable((u * ComplexMatrix::diagonal(values) * u.adjoint()).hermitian_part());
}

} // namespace bqm::random
