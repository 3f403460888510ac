#pragma once

#include "bqm/algebra.hpp"
#include "bqm/config.hpp"
#include "bqm/states.hpp"

namespace bqm {

/// Time-independent Hamiltonian.
class Hamiltonian {
public:
    explicit Hamiltonian(Observable h) : h_(std::move(h)) {}
    explicit Hamiltonian(const ComplexMatrix& m, const Tolerances& tol = default_tolerances()) : h_(m, tol) {}

    const Observable& observable() const noexcept { return h_; }
    const ComplexMatrix& matrix() const noexcept { return h_.matrix(); }
    std::size_t dim() const noexcept { return h_.dim(); }

private:
    Observable h_;
};

/// exp(-i H t / hbar) from the eigendecomposition of H.
ComplexMatrix unitary_at(const Hamiltonian& h, double t, double hbar = kHbar,
                         const Tolerances& tol = default_tolerances());

/// Heisenberg-picture observable A(t) = U*(t) A U(t), the solution of
/// dA/dt = (i/hbar)[H, A] with A(0) = A. Returns A itself, bit for bit,
/// when [H, A] vanishes to within `tol.conserved` (relative).
Observable heisenberg_evolve(const Observable& a, const Hamiltonian& h, double t, double hbar = kHbar,
                             const Tolerances& tol = default_tolerances());

/// phi_t(A) = phi_0(A(t)). Throws NonCommuting once A(t) has left the
/// context of phi.
double evolved_evaluate(const PhysicalState& phi, const Observable& a, const Hamiltonian& h, double t,
                        double hbar = kHbar, const Tolerances& tol = default_tolerances());

/// Schrodinger-picture counterpart U rho U*.
QuantumState evolve_state(const QuantumState& state, const Hamiltonian& h, double t, double hbar = kHbar,
                          const Tolerances& tol = default_tolerances());

} // namespace bqm
