#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bqm/algebra.hpp"
#include "bqm/config.hpp"
#include "bqm/rng.hpp"
#include "bqm/states.hpp"

namespace bqm {

/// Branching device for one observable: one exit per distinct eigenvalue,
/// exits ordered by ascending eigenvalue.
class Analyzer {
public:
    /// Uses the observable's own context.
    explicit Analyzer(Observable observable, const Tolerances& tol = default_tolerances());

    /// Shares an existing context, e.g. to measure several commuting
    /// observables in one experiment. Throws NonCommuting if the observable
    /// is not diagonal in it.
    Analyzer(Observable observable, ContextPtr context, const Tolerances& tol = default_tolerances());

    const Observable& observable() const noexcept { return observable_; }
    const SpectralDecomposition& decomposition() const noexcept { return decomposition_; }
    const ContextPtr& context() const noexcept { return context_; }
    std::size_t branch_count() const noexcept { return decomposition_.size(); }
    double branch_value(std::size_t i) const { return decomposition_.eigenvalues.at(i); }
    const ComplexMatrix& projector(std::size_t i) const { return decomposition_.projectors.at(i); }

private:
    Observable observable_;
    SpectralDecomposition decomposition_;
    ContextPtr context_;
};

struct MeasurementRecord {
    std::size_t branch_index = 0;
    double outcome_value = 0.0;
    QuantumState pre_state;
    QuantumState post_state;
    EventId phi_event_id = 0;
    bool detected = false;
};

/// Exit taken by the nucleus: the unique branch whose label equals phi(A).
/// Throws NonCommuting or NoMatchingBranch.
std::size_t route_nucleus(const PhysicalState& phi, const Analyzer& analyzer,
                          const Tolerances& tol = default_tolerances());

/// W_i = Tr(rho P_i), clamped to [0, 1].
double branch_probability(const QuantumState& state, const Analyzer& analyzer, std::size_t branch);

/// All W_i. Their sum is 1 within 1e-9 for any valid state.
std::vector<double> branch_probabilities(const QuantumState& state, const Analyzer& analyzer);

/// P_i rho P_i / W_i. Throws ZeroProbabilityBranch if W_i < tol.zero_branch.
QuantumState collapse(const QuantumState& state, const Analyzer& analyzer, std::size_t branch,
                      const Tolerances& tol = default_tolerances());

/// Removes the component in `branch`: Q rho Q / Tr(Q rho Q) with Q = I - P_branch.
QuantumState collapse_away(const QuantumState& state, const Analyzer& analyzer, std::size_t branch,
                           const Tolerances& tol = default_tolerances());

/// Detector behind every exit: sample phi, route the nucleus, collapse.
MeasurementRecord detect(const QuantumState& state, const Analyzer& analyzer, CounterRng& rng,
                         const Tolerances& tol = default_tolerances());

/// A single detector behind `detector_branch`. If it stays silent the state
/// still updates by removing that branch.
MeasurementRecord negative_measurement(const QuantumState& state, const Analyzer& analyzer,
                                       std::size_t detector_branch, CounterRng& rng,
                                       const Tolerances& tol = default_tolerances());

/// sum_i W_i A_i.
double measurement_average(const QuantumState& state, const Analyzer& analyzer);

/// Ensemble after a detection whose outcome is not read: sum_i P_i rho P_i.
QuantumState nonselective_update(const QuantumState& state, const Analyzer& analyzer);

struct JointMeasurementRecord {
    std::vector<std::size_t> branch_indices;
    std::vector<double> outcome_values;
    QuantumState post_state;
    EventId phi_event_id = 0;
};

/// Several analyzers sharing one context measured on a single actual state.
/// Throws InvalidArgument if the analyzers do not share a basis.
JointMeasurementRecord detect_joint(const QuantumState& state, std::span<const Analyzer> analyzers,
                                    CounterRng& rng, const Tolerances& tol = default_tolerances());

} // namespace bqm
