#include "bqm/dynamics.hpp"

#include <cmath>

#include "bqm/error.hpp"

namespace bqm {

namespace {

void require_finite_time(double t, double hbar)
{
    if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "evolution time must be finite");
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive");
}

bool is_conserved(const Observable& a, const Hamiltonian& h, const Tolerances& tol)
{
    const double scale = std::max(1.0, h.matrix().max_abs() * a.matrix().max_abs());
    return commutator(h.matrix(), a.matrix()).max_abs() <= tol.conserved * scale;
}

} // namespace

ComplexMatrix unitary_at(const Hamiltonian& h, double t, double hbar, const Tolerances& tol)
{
    require_finite_time(t, hbar);
    const std::size_t n = h.dim();
    if (t == 0.0) return ComplexMatrix::identity(n);
    const auto eig = hermitian_eigen(h.matrix(), tol);
    ComplexMatrix u(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex phase = std::polar(1.0, -eig.values[k] * t / hbar);
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = eig.vectors(i, k) * phase;
            for (std::size_t j = 0; j < n; ++j) u(i, j) += vik * std::conj(eig.vectors(j, k));
        }
    }
    return u;
}

Observable heisenberg_evolve(const Observable& a, const Hamiltonian& h, double t, double hbar,
                             const Tolerances& tol)
{
    if (a.dim() != h.dim()) throw Error(ErrorKind::DimensionMismatch, "observable vs Hamiltonian dimension");
    require_finite_time(t, hbar);
    if (t == 0.0 || is_conserved(a, h, tol)) return a;
    const ComplexMatrix u = unitary_at(h, t, hbar, tol);
    return Observable((u.adjoint() * a.matrix() * u).hermitian_part(), tol);
}

double evolved_evaluate(const PhysicalState& phi, const Observable& a, const Hamiltonian& h, double t, double hbar,
                        const Tolerances& tol)
{
    return evaluate(phi, heisenberg_evolve(a, h, t, hbar, tol), tol);
}

QuantumState evolve_state(const QuantumState& state, const Hamiltonian& h, double t, double hbar,
                          const Tolerances& tol)
{
    if (state.dim() != h.dim()) throw Error(ErrorKind::DimensionMismatch, "state vs Hamiltonian dimension");
    const ComplexMatrix u = unitary_at(h, t, hbar, tol);
    return QuantumState((u * state.rho() * u.adjoint()).hermitian_part(), tol);
}

} // namespace bqm
