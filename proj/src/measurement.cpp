#include "bqm/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bqm/error.hpp"

namespace bqm {

namespace {

void require_dims(const QuantumState& state, const Analyzer& analyzer)
{
    if (state.dim() != analyzer.observable().dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state vs analyzer dimension");
    }
}

void require_branch(const Analyzer& analyzer, std::size_t branch)
{
    if (branch >= analyzer.branch_count()) {
        throw Error(ErrorKind::InvalidArgument, "branch " + std::to_string(branch) + " of " +
                                                    std::to_string(analyzer.branch_count()));
    }
}

double trace_product(const ComplexMatrix& rho, const ComplexMatrix& p)
{
    double s = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j) s += (rho(i, j) * p(j, i)).real();
    return s;
}

QuantumState project(const QuantumState& state, const ComplexMatrix& p, const Tolerances& tol)
{
    const ComplexMatrix unnormalized = p * state.rho() * p;
    const double w = unnormalized.trace().real();
    if (w < tol.zero_branch) {
        throw Error(ErrorKind::ZeroProbabilityBranch, "projected weight " + std::to_string(w));
    }
    return QuantumState((unnormalized * Complex(1.0 / w)).hermitian_part(), tol);
}

} // namespace

Analyzer::Analyzer(Observable observable, const Tolerances& tol)
    : observable_(std::move(observable)),
      decomposition_(spectral_decompose(observable_, tol)),
      context_(joint_diagonalize({observable_}, tol))
{
}

Analyzer::Analyzer(Observable observable, ContextPtr context, const Tolerances& tol)
    : observable_(std::move(observable)), decomposition_(spectral_decompose(observable_, tol)),
      context_(std::move(context))
{
    if (!context_) throw Error(ErrorKind::InvalidArgument, "analyzer needs a context");
    if (!context_->contains(observable_, tol)) {
        throw Error(ErrorKind::NonCommuting, "analyzer observable is not diagonal in the given context");
    }
}

std::size_t route_nucleus(const PhysicalState& phi, const Analyzer& analyzer, const Tolerances& tol)
{
    const double value = evaluate(phi, analyzer.observable(), tol);
    for (std::size_t i = 0; i < analyzer.branch_count(); ++i) {
        if (std::abs(value - analyzer.branch_value(i)) <= tol.branch_match) return i;
    }
    throw Error(ErrorKind::NoMatchingBranch, "value " + std::to_string(value) + " matches no analyzer exit");
}

double branch_probability(const QuantumState& state, const Analyzer& analyzer, std::size_t branch)
{
    require_dims(state, analyzer);
    require_branch(analyzer, branch);
    return std::clamp(trace_product(state.rho(), analyzer.projector(branch)), 0.0, 1.0);
}

std::vector<double> branch_probabilities(const QuantumState& state, const Analyzer& analyzer)
{
    std::vector<double> w(analyzer.branch_count());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = branch_probability(state, analyzer, i);
    return w;
}

QuantumState collapse(const QuantumState& state, const Analyzer& analyzer, std::size_t branch,
                      const Tolerances& tol)
{
    require_dims(state, analyzer);
    require_branch(analyzer, branch);
    return project(state, analyzer.projector(branch), tol);
}

QuantumState collapse_away(const QuantumState& state, const Analyzer& analyzer, std::size_t branch,
                           const Tolerances& tol)
{
    require_dims(state, analyzer);
    require_branch(analyzer, branch);
    const ComplexMatrix complement = ComplexMatrix::identity(state.dim()) - analyzer.projector(branch);
    return project(state, complement, tol);
}

MeasurementRecord detect(const QuantumState& state, const Analyzer& analyzer, CounterRng& rng,
                         const Tolerances& tol)
{
    require_dims(state, analyzer);
    const PhysicalState phi = sample_physical_state(state, analyzer.context(), rng, tol);
    const std::size_t branch = route_nucleus(phi, analyzer, tol);
    return MeasurementRecord{branch, analyzer.branch_value(branch), state, collapse(state, analyzer, branch, tol),
                             phi.event_id(), true};
}

MeasurementRecord negative_measurement(const QuantumState& state, const Analyzer& analyzer,
                                       std::size_t detector_branch, CounterRng& rng, const Tolerances& tol)
{
    require_dims(state, analyzer);
    if (analyzer.branch_count() < 2) {
        throw Error(ErrorKind::InvalidArgument, "a negative experiment needs at least two analyzer exits");
    }
    require_branch(analyzer, detector_branch);
    const PhysicalState phi = sample_physical_state(state, analyzer.context(), rng, tol);
    const std::size_t branch = route_nucleus(phi, analyzer, tol);
    if (branch == detector_branch) {
        return MeasurementRecord{branch, analyzer.branch_value(branch), state,
                                 collapse(state, analyzer, branch, tol), phi.event_id(), true};
    }
    // The detector stayed silent; the nucleus is known to be elsewhere, but
    // the record still reports the branch it actually took.
    return MeasurementRecord{branch, analyzer.branch_value(branch), state,
                             collapse_away(state, analyzer, detector_branch, tol), phi.event_id(), false};
}

double measurement_average(const QuantumState& state, const Analyzer& analyzer)
{
    require_dims(state, analyzer);
    double s = 0.0;
    for (std::size_t i = 0; i < analyzer.branch_count(); ++i) {
        s += trace_product(state.rho(), analyzer.projector(i)) * analyzer.branch_value(i);
    }
    return s;
}

QuantumState nonselective_update(const QuantumState& state, const Analyzer& analyzer)
{
    require_dims(state, analyzer);
    ComplexMatrix out(state.dim());
    for (const auto& p : analyzer.decomposition().projectors) out += p * state.rho() * p;
    return QuantumState(out.hermitian_part());
}

JointMeasurementRecord detect_joint(const QuantumState& state, std::span<const Analyzer> analyzers,
                                    CounterRng& rng, const Tolerances& tol)
{
    if (analyzers.empty()) throw Error(ErrorKind::InvalidArgument, "detect_joint needs at least one analyzer");
    const ContextPtr& ctx = analyzers.front().context();
    for (const auto& a : analyzers) {
        require_dims(state, a);
        if (a.context() != ctx && !a.context()->same_basis(*ctx, tol)) {
            throw Error(ErrorKind::InvalidArgument, "analyzers in a joint measurement must share one context");
        }
    }
    const PhysicalState phi = sample_physical_state(state, ctx, rng, tol);
    JointMeasurementRecord rec;
    rec.phi_event_id = phi.event_id();
    ComplexMatrix p = ComplexMatrix::identity(state.dim());
    for (const auto& a : analyzers) {
        const std::size_t branch = route_nucleus(phi, a, tol);
        rec.branch_indices.push_back(branch);
        rec.outcome_values.push_back(a.branch_value(branch));
        p = p * a.projector(branch);
    }
    rec.post_state = project(state, p.hermitian_part(), tol);
    return rec;
}

} // namespace bqm
