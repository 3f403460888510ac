#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bqm/config.hpp"
#include "bqm/rng.hpp"

namespace bqm {

struct PostulateCheck {
    std::string name;
    bool passed = true;
    double worst = 0.0;     // largest observed deviation (or failure count for statistical checks)
    double threshold = 0.0; // limit `worst` was compared against
    std::size_t cases = 0;
};

struct PostulateReport {
    std::vector<PostulateCheck> checks;
    std::size_t physical_states = 0;

    bool all_passed() const;
};

/// Exercises the valuation rules on `n_states` actual states drawn across
/// random maximal contexts, cycling through `dims`:
///   phi(lambda I) = lambda; phi(A + B) and phi(AB) for commuting A, B;
///   phi(A*A) >= 0 and ‖A‖ > 0 for A != 0; Born weights normalized;
///   Psi linear on non-commuting sums; Monte Carlo means converge to Psi;
///   event ids unique.
PostulateReport check_postulates(const std::vector<std::size_t>& dims, std::size_t n_states, CounterRng& rng,
                                 const Tolerances& tol = default_tolerances());

} // namespace bqm
