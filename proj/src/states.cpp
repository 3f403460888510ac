#include "bqm/states.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "bqm/error.hpp"

namespace bqm {

namespace {
std::atomic<EventId> g_next_event{1};
}

EventId next_event_id() { return g_next_event.fetch_add(1, std::memory_order_relaxed); }

EventId reserve_event_ids(std::uint64_t count)
{
    return g_next_event.fetch_add(count, std::memory_order_relaxed);
}

// ---------------------------------------------------------------------------

QuantumState::QuantumState(const ComplexMatrix& rho, const Tolerances& tol)
{
    if (rho.empty()) throw Error(ErrorKind::InvalidState, "density matrix must have dim >= 1");
    const Observable h(rho, tol); // Hermiticity and finiteness
    const double tr_err = std::abs(h.matrix().trace() - Complex(1.0));
    if (tr_err > tol.trace) {
        throw Error(ErrorKind::InvalidState, "trace differs from 1 by " + std::to_string(tr_err));
    }
    const auto eig = hermitian_eigen(h.matrix(), tol);
    if (eig.values.front() < -tol.positivity) {
        throw Error(ErrorKind::InvalidState, "negative eigenvalue " + std::to_string(eig.values.front()));
    }
    rho_ = h.matrix();
}

QuantumState QuantumState::pure(std::span<const Complex> psi, const Tolerances& tol)
{
    const double n = norm(psi);
    if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::InvalidState, "state vector must be non-zero");
    ComplexVector unit(psi.begin(), psi.end());
    for (auto& z : unit) z /= n;
    return QuantumState(ComplexMatrix::projector(unit), tol);
}

QuantumState QuantumState::maximally_mixed(std::size_t dim)
{
    return QuantumState(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

double QuantumState::purity() const { return (rho_ * rho_).trace().real(); }

PhysicalState::PhysicalState(ContextPtr context, std::size_t outcome_index, EventId event_id)
    : context_(std::move(context)), index_(outcome_index), id_(event_id)
{
    if (!context_) throw Error(ErrorKind::InvalidArgument, "physical state needs a context");
    if (index_ >= context_->dim()) throw Error(ErrorKind::InvalidArgument, "outcome index outside context");
}

// ---------------------------------------------------------------------------

double quantum_average(const QuantumState& state, const Observable& a)
{
    if (state.dim() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "state vs observable dimension");
    const ComplexMatrix& rho = state.rho();
    const ComplexMatrix& m = a.matrix();
    // Tr(rho A) = sum_ij rho_ij A_ji; the imaginary part cancels for Hermitian inputs.
    double s = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j) s += (rho(i, j) * m(j, i)).real();
    return s;
}

std::vector<double> born_weights(const QuantumState& state, const Context& ctx, const Tolerances& tol)
{
    if (state.dim() != ctx.dim()) throw Error(ErrorKind::DimensionMismatch, "state vs context dimension");
    std::vector<double> w(ctx.dim());
    double total = 0.0;
    for (std::size_t k = 0; k < ctx.dim(); ++k) {
        const double p = sandwich(ctx.basis()[k], state.rho()).real();
        w[k] = p < tol.weight_floor ? 0.0 : p;
        total += w[k];
    }
    if (std::abs(total - 1.0) > tol.weights_sum) {
        throw Error(ErrorKind::DegenerateWeights, "sampling weights sum to " + std::to_string(total));
    }
    return w;
}

std::size_t sample_index(std::span<const double> weights, CounterRng& rng)
{
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw Error(ErrorKind::DegenerateWeights, "all sampling weights vanish");
    const double u = rng.uniform() * total;
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k] <= 0.0) continue;
        cum += weights[k];
        last_positive = k;
        if (u < cum) return k;
    }
    return last_positive;
}

PhysicalState sample_physical_state(const QuantumState& state, const ContextPtr& ctx, CounterRng& rng,
                                    const Tolerances& tol)
{
    const auto w = born_weights(state, *ctx, tol);
    const std::size_t k = sample_index(w, rng);
    return PhysicalState(ctx, k, next_event_id());
}

double evaluate(const PhysicalState& phi, const Observable& a, const Tolerances& tol)
{
    return phi.context()->value_of(a, phi.outcome_index(), tol);
}

Complex evaluate_complex(const PhysicalState& phi, const ComplexMatrix& m, const Tolerances& tol)
{
    const ComplexMatrix h1 = m.hermitian_part();
    const ComplexMatrix h2 = (m - m.adjoint()) * Complex(0.0, -0.5);
    return {evaluate(phi, Observable(h1, tol), tol), evaluate(phi, Observable(h2, tol), tol)};
}

AverageEstimate monte_carlo_average(const QuantumState& state, const ContextPtr& ctx, const Observable& a,
                                    std::uint64_t n, CounterRng& rng, const Tolerances& tol)
{
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "monte_carlo_average needs n >= 1");
    if (a.dim() != ctx->dim()) throw Error(ErrorKind::DimensionMismatch, "observable vs context dimension");
    const auto w = born_weights(state, *ctx, tol);

    // phi(A) depends only on the selected index, so evaluate once per index.
    std::vector<double> values(ctx->dim());
    for (std::size_t k = 0; k < ctx->dim(); ++k) values[k] = ctx->value_of(a, k, tol);

    std::vector<std::uint64_t> counts(ctx->dim(), 0);
    const EventId first = reserve_event_ids(n);
    for (std::uint64_t s = 0; s < n; ++s) {
        const PhysicalState phi(ctx, sample_index(w, rng), first + s);
        ++counts[phi.outcome_index()];
    }

    const double dn = static_cast<double>(n);
    AverageEstimate est;
    est.n_samples = n;
    for (std::size_t k = 0; k < counts.size(); ++k) est.mean += (static_cast<double>(counts[k]) / dn) * values[k];
    if (n > 1) {
        double var = 0.0;
        for (std::size_t k = 0; k < counts.size(); ++k) {
            const double d = values[k] - est.mean;
            var += static_cast<double>(counts[k]) * d * d;
        }
        var /= (dn - 1.0);
        est.std_error = std::sqrt(var / dn);
    }
    return est;
}

bool are_equivalent(const PhysicalState& a, const PhysicalState& b, const Tolerances& tol)
{
    if (a.outcome_index() != b.outcome_index()) return false;
    if (a.context() == b.context()) return true;
    return a.context()->same_basis(*b.context(), tol);
}

QuantumState reduced_state_first(const QuantumState& state, std::size_t dim_a, std::size_t dim_b)
{
    return QuantumState(partial_trace_second(state.rho(), dim_a, dim_b));
}

QuantumState reduced_state_second(const QuantumState& state, std::size_t dim_a, std::size_t dim_b)
{
    return QuantumState(partial_trace_first(state.rho(), dim_a, dim_b));
}

} // namespace bqm
