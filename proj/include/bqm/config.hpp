#pragma once

#include <string_view>

namespace bqm {

/// Numerical thresholds shared by every module. Defaults are the values the
/// engine is validated against; the CLI may override individual entries.
struct Tolerances {
    double hermitian = 1e-10;        // |M_ij - conj(M_ji)|
    double trace = 1e-10;            // |Tr(rho) - 1|
    double positivity = 1e-10;       // smallest admissible eigenvalue of rho is -positivity
    double projector = 1e-9;         // P^2 = P, P* = P, sum P = I
    double commuting = 1e-9;         // max-norm of [A, B] for "commutes"
    double diagonalized = 1e-9;      // off-diagonal residual of V* A V
    double orthonormal = 1e-9;       // |<e_i|e_j> - delta_ij|
    double degeneracy = 1e-8;        // eigenvalue merge threshold
    double jacobi_offdiag = 1e-12;   // relative off-diagonal norm at convergence
    int jacobi_max_sweeps = 100;
    double weights_sum = 1e-8;       // |sum p_k - 1| in sampling
    double weight_floor = 1e-14;     // sampling weights below this are treated as exact zeros
    double branch_match = 1e-8;      // |phi(A) - A_i| when routing a nucleus
    double zero_branch = 1e-12;      // minimum probability of a branch that can be collapsed onto
    double unit_vector = 1e-10;      // |‖n‖ - 1| for spin directions
    double conserved = 1e-13;        // relative commutator size treated as exactly conserved
};

/// Process-wide defaults. Not thread-safe to modify; set once at start-up.
const Tolerances& default_tolerances();
Tolerances& mutable_default_tolerances();

/// Sets a named field (e.g. "degeneracy"). Returns false for unknown keys.
bool set_tolerance(Tolerances& tol, std::string_view key, double value);

/// Reduced Planck constant in natural units.
inline constexpr double kHbar = 1.0;

} // namespace bqm
