#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bqm/algebra.hpp"
#include "bqm/config.hpp"
#include "bqm/matrix.hpp"
#include "bqm/rng.hpp"

namespace bqm {

/// Density matrix. Hermitian, unit trace and positive semidefinite within
/// the configured tolerances; the stored matrix is exactly Hermitian.
class QuantumState {
public:
    QuantumState() = default;

    /// Throws InvalidState (trace/positivity) or NotHermitian.
    explicit QuantumState(const ComplexMatrix& rho, const Tolerances& tol = default_tolerances());

    /// |psi><psi| for a non-zero vector; the vector is normalized first.
    static QuantumState pure(std::span<const Complex> psi, const Tolerances& tol = default_tolerances());
    static QuantumState maximally_mixed(std::size_t dim);

    const ComplexMatrix& rho() const noexcept { return rho_; }
    std::size_t dim() const noexcept { return rho_.dim(); }
    double purity() const;

private:
    ComplexMatrix rho_;
};

using EventId = std::uint64_t;

/// Next id from the process-wide monotone counter. Thread-safe.
EventId next_event_id();
/// Reserves `count` consecutive ids and returns the first. Thread-safe.
EventId reserve_event_ids(std::uint64_t count);

/// One actual state: a context, the selected joint eigenvector, and an id
/// that is never reused within the process.
class PhysicalState {
public:
    /// `event_id` should come from next_event_id()/reserve_event_ids().
    PhysicalState(ContextPtr context, std::size_t outcome_index, EventId event_id);

    const ContextPtr& context() const noexcept { return context_; }
    std::size_t outcome_index() const noexcept { return index_; }
    EventId event_id() const noexcept { return id_; }

private:
    ContextPtr context_;
    std::size_t index_;
    EventId id_;
};

struct AverageEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
};

/// Re Tr(rho A). Throws DimensionMismatch.
double quantum_average(const QuantumState& state, const Observable& a);

/// Born weights <e_k|rho|e_k> over the context basis; entries below
/// `tol.weight_floor` are exact zeros. Throws DegenerateWeights if the sum
/// misses 1 by more than `tol.weights_sum`.
std::vector<double> born_weights(const QuantumState& state, const Context& ctx,
                                 const Tolerances& tol = default_tolerances());

/// Index drawn from non-negative weights (which need not be normalized).
std::size_t sample_index(std::span<const double> weights, CounterRng& rng);

PhysicalState sample_physical_state(const QuantumState& state, const ContextPtr& ctx, CounterRng& rng,
                                    const Tolerances& tol = default_tolerances());

/// Value of the observable in this actual state. Throws NonCommuting if the
/// observable is outside the state's context.
double evaluate(const PhysicalState& phi, const Observable& a, const Tolerances& tol = default_tolerances());

/// Extension to arbitrary elements through M = H1 + i H2 with H1, H2 Hermitian.
Complex evaluate_complex(const PhysicalState& phi, const ComplexMatrix& m,
                         const Tolerances& tol = default_tolerances());

/// Mean of `n` freshly sampled actual states. Throws NonCommuting,
/// DimensionMismatch, InvalidArgument (n == 0).
AverageEstimate monte_carlo_average(const QuantumState& state, const ContextPtr& ctx, const Observable& a,
                                    std::uint64_t n, CounterRng& rng,
                                    const Tolerances& tol = default_tolerances());

/// Same context and same outcome index; event ids are ignored.
bool are_equivalent(const PhysicalState& a, const PhysicalState& b, const Tolerances& tol = default_tolerances());

/// Reduced state of one factor of C^{dim_a} (x) C^{dim_b}.
QuantumState reduced_state_first(const QuantumState& state, std::size_t dim_a, std::size_t dim_b);
QuantumState reduced_state_second(const QuantumState& state, std::size_t dim_a, std::size_t dim_b);

} // namespace bqm
