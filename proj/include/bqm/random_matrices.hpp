#pragma once

#include <cstddef>
#include <span>

#include "bqm/algebra.hpp"
#include "bqm/matrix.hpp"
#include "bqm/rng.hpp"
#include "bqm/states.hpp"

namespace bqm::random {

Complex gaussian_complex(CounterRng& rng);

/// (G + G*)/2 with i.i.d. complex Gaussian G.
Observable hermitian(std::size_t dim, CounterRng& rng);

/// Haar-like unitary from Gram-Schmidt of a complex Gaussian matrix.
ComplexMatrix unitary(std::size_t dim, CounterRng& rng);

/// G G* / Tr(G G*), full rank with probability 1.
QuantumState density(std::size_t dim, CounterRng& rng);

QuantumState pure(std::size_t dim, CounterRng& rng);

/// U diag(values) U*.
Observable with_spectrum(const ComplexMatrix& u, std::span<const double> values);

} // namespace bqm::random
