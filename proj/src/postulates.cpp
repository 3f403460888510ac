#include "bqm/postulates.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "bqm/algebra.hpp"
#include "bqm/error.hpp"
#include "bqm/random_matrices.hpp"
#include "bqm/states.hpp"

namespace bqm {

namespace {

constexpr std::size_t kStatesPerContext = 10;
constexpr std::uint64_t kConvergenceSamples = 2000;
constexpr double kValuationTol = 1e-9;
constexpr double kLinearityTol = 1e-10;

struct Tracker {
    PostulateCheck check;

    Tracker(std::string name, double threshold) { check.name = std::move(name), check.threshold = threshold; }

    void deviation(double d)
    {
        ++check.cases;
        check.worst = std::max(check.worst, d);
        if (!(d <= check.threshold)) check.passed = false;
    }
};

} // namespace

bool PostulateReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const PostulateCheck& c) { return c.passed; });
}

PostulateReport check_postulates(const std::vector<std::size_t>& dims, std::size_t n_states, CounterRng& rng,
                                 const Tolerances& tol)
{
    if (dims.empty()) throw Error(ErrorKind::InvalidArgument, "postulate suite needs at least one dimension");
    for (auto d : dims)
        if (d < 1) throw Error(ErrorKind::InvalidArgument, "dimensions must be >= 1");

    Tracker identity("identity", kValuationTol);
    Tracker additivity("additivity", kValuationTol);
    Tracker multiplicativity("multiplicativity", kValuationTol);
    Tracker positivity("positivity", kValuationTol); // deviation = max(0, -phi(A*A))
    Tracker norm_positive("norm_positive", 0.0);     // deviation = 1 on violation
    Tracker normalization("normalization", tol.weights_sum);
    Tracker linearity("psi_linearity", kLinearityTol);
    Tracker uniqueness("unique_ids", 0.0);

    std::size_t convergence_failures = 0;
    std::size_t convergence_trials = 0;
    std::unordered_set<EventId> ids;

    PostulateReport report;
    const std::size_t n_contexts = (n_states + kStatesPerContext - 1) / kStatesPerContext;
    for (std::size_t c = 0; c < n_contexts; ++c) {
        const std::size_t d = dims[c % dims.size()];
        const ComplexMatrix u = random::unitary(d, rng);
        std::vector<double> qv(d), av(d), bv(d);
        for (std::size_t k = 0; k < d; ++k) {
            qv[k] = static_cast<double>(k) + 0.5 * rng.uniform();
            av[k] = std::floor(4.0 * rng.uniform()) - 1.0; // degenerate integer spectrum
            bv[k] = 4.0 * rng.uniform() - 2.0;
        }
        const Observable q = random::with_spectrum(u, qv);
        const Observable a = random::with_spectrum(u, av);
        const Observable b = random::with_spectrum(u, bv);
        const ContextPtr ctx = joint_diagonalize({a, b, q}, tol);
        const QuantumState rho = random::density(d, rng);

        const auto w = born_weights(rho, *ctx, tol);
        double wsum = 0.0;
        for (double x : w) wsum += x;
        normalization.deviation(std::abs(wsum - 1.0));

        const Observable sum = a + b;
        const Observable prod = product(a, b, tol);
        const Observable square = product(a, a, tol);

        const std::size_t here = std::min(kStatesPerContext, n_states - report.physical_states);
        for (std::size_t s = 0; s < here; ++s) {
            const PhysicalState phi = sample_physical_state(rho, ctx, rng, tol);
            ++report.physical_states;
            uniqueness.deviation(ids.insert(phi.event_id()).second ? 0.0 : 1.0);

            const double lambda = 6.0 * rng.uniform() - 3.0;
            identity.deviation(std::abs(evaluate(phi, Observable::identity(d, lambda), tol) - lambda));

            const double fa = evaluate(phi, a, tol);
            const double fb = evaluate(phi, b, tol);
            additivity.deviation(std::abs(evaluate(phi, sum, tol) - (fa + fb)));
            multiplicativity.deviation(std::abs(evaluate(phi, prod, tol) - fa * fb));
            positivity.deviation(std::max(0.0, -evaluate(phi, square, tol)));
        }

        const Observable x = random::hermitian(d, rng);
        const Observable y = random::hermitian(d, rng);
        linearity.deviation(std::abs(quantum_average(rho, x + y) - quantum_average(rho, x) - quantum_average(rho, y)));
        norm_positive.deviation(operator_norm(x, tol) > 0.0 ? 0.0 : 1.0);
        norm_positive.deviation(operator_norm(Observable(ComplexMatrix(d)), tol) == 0.0 ? 0.0 : 1.0);

        const AverageEstimate est = monte_carlo_average(rho, ctx, b, kConvergenceSamples, rng, tol);
        const double diff = std::abs(est.mean - quantum_average(rho, b));
        ++convergence_trials;
        if (diff > std::max(5.0 * est.std_error, 1e-9)) ++convergence_failures;
    }

    PostulateCheck convergence;
    convergence.name = "convergence";
    convergence.cases = convergence_trials;
    convergence.worst = static_cast<double>(convergence_failures);
    // at most 1% of trials may miss the 5-sigma band
    convergence.threshold = std::floor(0.01 * static_cast<double>(convergence_trials));
    convergence.passed = convergence.worst <= convergence.threshold;

    report.checks = {identity.check,      additivity.check,    multiplicativity.check, positivity.check,
                     norm_positive.check, normalization.check, linearity.check,        convergence,
                     uniqueness.check};
    return report;
}

} // namespace bqm
