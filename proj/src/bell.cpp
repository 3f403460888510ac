#include "bqm/bell.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bqm/error.hpp"

namespace bqm::bell {

namespace {

void require_two_qubits(const QuantumState& state)
{
    if (state.dim() != 4) throw Error(ErrorKind::DimensionMismatch, "Bell experiments need a 4-dim state");
}

void require_pm1(int v)
{
    if (v != 1 && v != -1) throw Error(ErrorKind::BadDistribution, "strategy responses must be +-1");
}

} // namespace

SpinDirection::SpinDirection(double x, double y, double z, const Tolerances& tol) : v_{x, y, z}
{
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(n) || std::abs(n - 1.0) > tol.unit_vector) {
        throw Error(ErrorKind::NotUnit, "spin direction has norm " + std::to_string(n));
    }
}

SpinDirection SpinDirection::planar_degrees(double degrees)
{
    const double rad = degrees * std::numbers::pi / 180.0;
    return SpinDirection(std::sin(rad), 0.0, std::cos(rad));
}

ComplexMatrix SpinDirection::pauli() const
{
    return pauli::x() * Complex(v_[0]) + pauli::y() * Complex(v_[1]) + pauli::z() * Complex(v_[2]);
}

QuantumState singlet_state()
{
    const double r = 1.0 / std::numbers::sqrt2;
    // index = 2 * (A bit) + (B bit), bit 0 = spin up along z
    const ComplexVector psi{0.0, r, -r, 0.0};
    return QuantumState(ComplexMatrix::projector(psi));
}

Observable spin_observable(const SpinDirection& dir, Particle particle)
{
    const ComplexMatrix id = ComplexMatrix::identity(2);
    return Observable(particle == Particle::A ? kron(dir.pauli(), id) : kron(id, dir.pauli()));
}

double correlation_exact(const QuantumState& state, const SpinDirection& a, const SpinDirection& b)
{
    require_two_qubits(state);
    const Observable ab(kron(a.pauli(), b.pauli()));
    return quantum_average(state, ab);
}

CorrelationEstimate correlation_contextual(const QuantumState& state, const SpinDirection& a,
                                           const SpinDirection& b, std::uint64_t n, CounterRng& rng,
                                           const Tolerances& tol)
{
    require_two_qubits(state);
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "correlation needs n >= 1");
    const Observable obs_a = spin_observable(a, Particle::A);
    const Observable obs_b = spin_observable(b, Particle::B);
    const ContextPtr ctx = joint_diagonalize({obs_a, obs_b}, tol);
    const auto weights = born_weights(state, *ctx, tol);

    std::vector<std::uint64_t> counts(ctx->dim(), 0);
    std::vector<double> products(ctx->dim(), 0.0);
    CorrelationEstimate out;
    out.first_event_id = reserve_event_ids(n);
    for (std::uint64_t s = 0; s < n; ++s) {
        const PhysicalState phi(ctx, sample_index(weights, rng), out.first_event_id + s);
        const std::size_t k = phi.outcome_index();
        if (counts[k]++ == 0) products[k] = evaluate(phi, obs_a, tol) * evaluate(phi, obs_b, tol);
    }

    const double dn = static_cast<double>(n);
    AverageEstimate& est = out.estimate;
    est.n_samples = n;
    for (std::size_t k = 0; k < counts.size(); ++k) est.mean += (static_cast<double>(counts[k]) / dn) * products[k];
    if (n > 1) {
        double var = 0.0;
        for (std::size_t k = 0; k < counts.size(); ++k) {
            const double d = products[k] - est.mean;
            var += static_cast<double>(counts[k]) * d * d;
        }
        est.std_error = std::sqrt(var / (dn - 1.0) / dn);
    }
    return out;
}

std::string_view to_string(ChshMode mode)
{
    switch (mode) {
    case ChshMode::Contextual: return "contextual";
    case ChshMode::Lhv: return "lhv";
    case ChshMode::Exact: return "exact";
    }
    return "unknown";
}

double ChshResult::combined_std_error() const
{
    double s = 0.0;
    for (double e : std_errors) s += e * e;
    return std::sqrt(s);
}

double chsh_value(const std::array<double, 4>& t) { return std::abs(t[0] - t[1]) + std::abs(t[2] + t[3]); }

namespace {
std::array<std::pair<const SpinDirection*, const SpinDirection*>, 4> setting_pairs(const ChshSettings& s)
{
    return {{{&s.a, &s.b}, {&s.a, &s.b_prime}, {&s.a_prime, &s.b}, {&s.a_prime, &s.b_prime}}};
}
} // namespace

ChshResult chsh_contextual(const QuantumState& state, const ChshSettings& settings, std::uint64_t n,
                           CounterRng& rng, const Tolerances& tol)
{
    ChshResult r;
    r.mode = ChshMode::Contextual;
    r.n_per_setting = n;
    const auto pairs = setting_pairs(settings);
    for (std::size_t i = 0; i < 4; ++i) {
        CounterRng stream = rng.split(i);
        const auto c = correlation_contextual(state, *pairs[i].first, *pairs[i].second, n, stream, tol);
        r.terms[i] = c.estimate.mean;
        r.std_errors[i] = c.estimate.std_error;
        r.first_event_ids[i] = c.first_event_id;
    }
    r.s = chsh_value(r.terms);
    return r;
}

ChshResult chsh_exact(const QuantumState& state, const ChshSettings& settings)
{
    ChshResult r;
    r.mode = ChshMode::Exact;
    const auto pairs = setting_pairs(settings);
    for (std::size_t i = 0; i < 4; ++i) r.terms[i] = correlation_exact(state, *pairs[i].first, *pairs[i].second);
    r.s = chsh_value(r.terms);
    return r;
}

std::vector<LhvStrategy> all_lhv_strategies()
{
    std::vector<LhvStrategy> out;
    for (unsigned bits = 0; bits < 16; ++bits) {
        auto pm = [&](unsigned k) { return (bits >> k) & 1U ? -1 : 1; };
        out.push_back(LhvStrategy{pm(0), pm(1), pm(2), pm(3)});
    }
    return out;
}

std::vector<LhvStrategy> all_full_assignments()
{
    // bits 0-3: particle A on (a, a', b, b'); bits 4-7: particle B on (a, a', b, b')
    std::vector<LhvStrategy> out;
    for (unsigned bits = 0; bits < 256; ++bits) {
        auto pm = [&](unsigned k) { return (bits >> k) & 1U ? -1 : 1; };
        out.push_back(LhvStrategy{pm(0), pm(1), pm(6), pm(7)});
    }
    return out;
}

ChshResult chsh_lhv(std::span<const std::pair<LhvStrategy, double>> distribution)
{
    if (distribution.empty()) throw Error(ErrorKind::BadDistribution, "empty strategy distribution");
    double total = 0.0;
    ChshResult r;
    r.mode = ChshMode::Lhv;
    for (const auto& [strategy, w] : distribution) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorKind::BadDistribution, "negative weight");
        require_pm1(strategy.a);
        require_pm1(strategy.a_prime);
        require_pm1(strategy.b);
        require_pm1(strategy.b_prime);
        total += w;
        r.terms[0] += w * strategy.a * strategy.b;
        r.terms[1] += w * strategy.a * strategy.b_prime;
        r.terms[2] += w * strategy.a_prime * strategy.b;
        r.terms[3] += w * strategy.a_prime * strategy.b_prime;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw Error(ErrorKind::BadDistribution, "weights sum to " + std::to_string(total));
    }
    r.s = chsh_value(r.terms);
    return r;
}

int lhv_max_s_exhaustive()
{
    int best = 0;
    for (const auto& st : all_full_assignments()) {
        const int s = std::abs(st.a * st.b - st.a * st.b_prime) + std::abs(st.a_prime * st.b + st.a_prime * st.b_prime);
        best = std::max(best, s);
    }
    return best;
}

EprRecord epr_indirect(const QuantumState& state, const SpinDirection& axis_a, const SpinDirection& axis_b,
                       CounterRng& rng, const Tolerances& tol)
{
    require_two_qubits(state);
    const Analyzer analyzer_a(spin_observable(axis_a, Particle::A), tol);
    const Analyzer analyzer_b(spin_observable(axis_b, Particle::B), tol);

    const MeasurementRecord rec_a = detect(state, analyzer_a, rng, tol);
    const MeasurementRecord rec_b = detect(rec_a.post_state, analyzer_b, rng, tol);

    EprRecord out;
    out.outcome_a = rec_a.outcome_value;
    out.outcome_b = rec_b.outcome_value;
    out.equal_axes = std::abs(axis_a.dot(axis_b) - 1.0) <= tol.unit_vector;
    out.inferred_b_on_axis_a = -rec_a.outcome_value;
    out.anticorrelation_holds =
        out.equal_axes && std::abs(rec_b.outcome_value - out.inferred_b_on_axis_a) <= tol.branch_match;
    out.intersection_expired = !out.equal_axes;
    out.event_a = rec_a.phi_event_id;
    out.event_b = rec_b.phi_event_id;
    out.post_state = rec_b.post_state;
    return out;
}

} // namespace bqm::bell
