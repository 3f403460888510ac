#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "bqm/algebra.hpp"
#include "bqm/config.hpp"
#include "bqm/measurement.hpp"
#include "bqm/rng.hpp"
#include "bqm/states.hpp"

namespace bqm::bell {

/// Unit 3-vector.
class SpinDirection {
public:
    /// Throws NotUnit unless |‖v‖ - 1| <= tol.unit_vector.
    SpinDirection(double x, double y, double z, const Tolerances& tol = default_tolerances());

    /// Direction at `degrees` from +z towards +x, in the x-z plane.
    static SpinDirection planar_degrees(double degrees);

    double x() const noexcept { return v_[0]; }
    double y() const noexcept { return v_[1]; }
    double z() const noexcept { return v_[2]; }
    double dot(const SpinDirection& o) const noexcept { return v_[0] * o.v_[0] + v_[1] * o.v_[1] + v_[2] * o.v_[2]; }

    /// n . sigma on a single spin.
    ComplexMatrix pauli() const;

private:
    std::array<double, 3> v_;
};

enum class Particle { A, B };

/// Singlet (|+-> - |-+>)/sqrt(2) in the sigma_z (x) sigma_z product basis.
QuantumState singlet_state();

/// (n . sigma) (x) I for A, I (x) (n . sigma) for B.
Observable spin_observable(const SpinDirection& dir, Particle particle);

/// Tr(rho A_a B_b).
double correlation_exact(const QuantumState& state, const SpinDirection& a, const SpinDirection& b);

struct CorrelationEstimate {
    AverageEstimate estimate;
    EventId first_event_id = 0; // events occupy [first_event_id, first_event_id + n)
};

/// Per-event product phi(A_a) phi(B_b) over n fresh actual states sampled in
/// the joint context of the pair.
CorrelationEstimate correlation_contextual(const QuantumState& state, const SpinDirection& a,
                                           const SpinDirection& b, std::uint64_t n, CounterRng& rng,
                                           const Tolerances& tol = default_tolerances());

enum class ChshMode { Contextual, Lhv, Exact };
std::string_view to_string(ChshMode mode);

/// Term order: E(a,b), E(a,b'), E(a',b), E(a',b').
struct ChshResult {
    double s = 0.0;
    std::array<double, 4> terms{};
    std::array<double, 4> std_errors{};     // zero for lhv/exact
    std::array<EventId, 4> first_event_ids{}; // contextual only
    std::uint64_t n_per_setting = 0;
    ChshMode mode = ChshMode::Exact;

    /// sqrt of the summed squared term errors.
    double combined_std_error() const;
};

/// |E(a,b) - E(a,b')| + |E(a',b) + E(a',b')|
double chsh_value(const std::array<double, 4>& terms);

struct ChshSettings {
    SpinDirection a, a_prime, b, b_prime;
};

/// Each setting pair gets n fresh events from its own sub-stream
/// (rng.split(0..3)), so no actual state is shared between pairs.
ChshResult chsh_contextual(const QuantumState& state, const ChshSettings& settings, std::uint64_t n,
                           CounterRng& rng, const Tolerances& tol = default_tolerances());

ChshResult chsh_exact(const QuantumState& state, const ChshSettings& settings);

/// Deterministic local response table: one +-1 outcome per local setting.
struct LhvStrategy {
    int a = 1, a_prime = 1; // particle A responses
    int b = 1, b_prime = 1; // particle B responses
};

/// All 16 deterministic strategies (A responses on {a,a'} x B responses on {b,b'}).
std::vector<LhvStrategy> all_lhv_strategies();

/// All 256 full value assignments: each particle carries a predetermined
/// +-1 for every one of the four directions. Only A's values on {a,a'} and
/// B's on {b,b'} enter the correlations, so each maps onto one of the 16
/// effective strategies.
std::vector<LhvStrategy> all_full_assignments();

/// One hidden variable answers all four settings. Throws BadDistribution
/// unless weights are >= 0 and sum to 1 (within 1e-12), or responses are not +-1.
ChshResult chsh_lhv(std::span<const std::pair<LhvStrategy, double>> distribution);

/// Max S over every full assignment; exact integer arithmetic.
int lhv_max_s_exhaustive();

struct EprRecord {
    double outcome_a = 0.0;
    double outcome_b = 0.0;
    bool equal_axes = false;
    /// -S(A) along axis_A: the value of B along the same axis inferred from A.
    double inferred_b_on_axis_a = 0.0;
    /// Only meaningful with equal axes: measured S(B) == -S(A).
    bool anticorrelation_holds = false;
    /// With different axes, phi is booked into both {phi}_{-S_a(A)} (from the
    /// A readout) and {phi}_{S_b(B)} (from the B readout). That combined
    /// information refers to the past and is flagged expired.
    bool intersection_expired = false;
    EventId event_a = 0;
    EventId event_b = 0;
    QuantumState post_state;
};

/// Measures A along axis_a (collapsing), then B along axis_b.
EprRecord epr_indirect(const QuantumState& state, const SpinDirection& axis_a, const SpinDirection& axis_b,
                       CounterRng& rng, const Tolerances& tol = default_tolerances());

} // namespace bqm::bell
