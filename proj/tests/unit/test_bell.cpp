#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "bqm/bell.hpp"
#include "bqm/error.hpp"
#include "bqm/random_matrices.hpp"
#include "oracles.hpp"

using namespace bqm;
using namespace bqm::bell;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected bqm::Error";
    return ErrorKind::InvalidArgument;
}

ChshSettings optimal() { return {SpinDirection::planar_degrees(0), SpinDirection::planar_degrees(90),
                                 SpinDirection::planar_degrees(45), SpinDirection::planar_degrees(135)}; }

} // namespace

TEST(Singlet, Basics)
{
    const auto rho = singlet_state();
    EXPECT_NEAR(rho.rho().trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(rho.purity(), 1.0, 1e-15);
    EXPECT_NEAR(quantum_average(rho, Observable(kron(pauli::z(), pauli::z()))), -1.0, 1e-15);
    const ComplexMatrix half = ComplexMatrix::identity(2) * Complex(0.5);
    EXPECT_LT(max_abs_diff(reduced_state_first(rho, 2, 2).rho(), half), 1e-15);
    EXPECT_LT(max_abs_diff(reduced_state_second(rho, 2, 2).rho(), half), 1e-15);
}

TEST(SpinObservable, Examples)
{
    const auto z = SpinDirection(0, 0, 1);
    EXPECT_EQ(spin_observable(z, Particle::A).matrix(), kron(pauli::z(), ComplexMatrix::identity(2)));
    CounterRng rng(1);
    for (int i = 0; i < 50; ++i) {
        double v[3];
        double n = 0;
        for (double& c : v) {
            c = rng.normal();
            n += c * c;
        }
        n = std::sqrt(n);
        const SpinDirection a(v[0] / n, v[1] / n, v[2] / n);
        const SpinDirection b = SpinDirection::planar_degrees(360 * rng.uniform());
        const Observable oa = spin_observable(a, Particle::A);
        EXPECT_NEAR(operator_norm(oa), 1.0, 1e-12);
        EXPECT_EQ(commutator(oa.matrix(), spin_observable(b, Particle::B).matrix()).max_abs(), 0.0);
        const auto ev = oracle::eigenvalues(oa.matrix());
        EXPECT_NEAR(ev[0], -1.0, 1e-9);
        EXPECT_NEAR(ev[1], -1.0, 1e-9);
        EXPECT_NEAR(ev[2], 1.0, 1e-9);
        EXPECT_NEAR(ev[3], 1.0, 1e-9);
    }
    EXPECT_EQ(kind_of([] { SpinDirection(1, 1, 0); }), ErrorKind::NotUnit);
}

TEST(CorrelationExact, SingletIsMinusDot)
{
    const auto rho = singlet_state();
    EXPECT_NEAR(correlation_exact(rho, SpinDirection::planar_degrees(10), SpinDirection::planar_degrees(10)), -1.0,
                1e-12);
    EXPECT_NEAR(correlation_exact(rho, SpinDirection::planar_degrees(0), SpinDirection::planar_degrees(90)), 0.0,
                1e-12);
    CounterRng rng(2);
    for (int i = 0; i < 100; ++i) {
        auto random_dir = [&] {
            double v[3], n = 0;
            for (double& c : v) {
                c = rng.normal();
                n += c * c;
            }
            n = std::sqrt(n);
            return SpinDirection(v[0] / n, v[1] / n, v[2] / n);
        };
        const auto a = random_dir(), b = random_dir();
        EXPECT_NEAR(correlation_exact(rho, a, b), -a.dot(b), 1e-10);
    }
    EXPECT_EQ(kind_of([] { correlation_exact(QuantumState::maximally_mixed(2), SpinDirection(0, 0, 1),
                                             SpinDirection(0, 0, 1)); }),
              ErrorKind::DimensionMismatch);
}

TEST(CorrelationContextual, EqualAxesPerfectAntiCorrelation)
{
    CounterRng rng(3);
    const auto a = SpinDirection::planar_degrees(33);
    const auto c = correlation_contextual(singlet_state(), a, a, 20000, rng);
    EXPECT_EQ(c.estimate.mean, -1.0);
    EXPECT_EQ(c.estimate.std_error, 0.0);
}

TEST(CorrelationContextual, OrthogonalAndSixtyDegrees)
{
    CounterRng rng(4);
    const auto a = SpinDirection::planar_degrees(0);
    const auto perp = correlation_contextual(singlet_state(), a, SpinDirection::planar_degrees(90), 100000, rng);
    EXPECT_NEAR(perp.estimate.mean, 0.0, 0.02);
    const auto b60 = SpinDirection::planar_degrees(60);
    const auto sixty = correlation_contextual(singlet_state(), a, b60, 100000, rng);
    EXPECT_NEAR(sixty.estimate.mean, correlation_exact(singlet_state(), a, b60), 0.02);
    EXPECT_NEAR(sixty.estimate.mean, -0.5, 0.02);
}

TEST(Chsh, ContextualAtOptimalAngles)
{
    CounterRng rng(5);
    const auto r = chsh_contextual(singlet_state(), optimal(), 100000, rng);
    EXPECT_NEAR(r.s, 2.0 * std::numbers::sqrt2, 0.05);
    EXPECT_GT((r.s - 2.0) / r.combined_std_error(), 5.0);
    EXPECT_NEAR(r.s, chsh_value(r.terms), 1e-12);
    // disjoint event-id blocks for the four setting pairs
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const auto lo = std::min(r.first_event_ids[i], r.first_event_ids[j]);
            const auto hi = std::max(r.first_event_ids[i], r.first_event_ids[j]);
            EXPECT_GE(hi - lo, r.n_per_setting);
        }
}

TEST(Chsh, ContextualIsReproducibleFromSeed)
{
    CounterRng r1(99), r2(99);
    const auto a = chsh_contextual(singlet_state(), optimal(), 5000, r1);
    const auto b = chsh_contextual(singlet_state(), optimal(), 5000, r2);
    EXPECT_EQ(a.terms, b.terms);
}

TEST(Chsh, DegenerateSettings)
{
    CounterRng rng(6);
    const auto z = SpinDirection::planar_degrees(0);
    const auto all_equal = chsh_contextual(singlet_state(), {z, z, z, z}, 1000, rng);
    EXPECT_EQ(all_equal.s, 2.0);
    const auto b = SpinDirection::planar_degrees(70);
    const auto collapsed = chsh_exact(singlet_state(), {z, z, b, b});
    EXPECT_NEAR(collapsed.s, 2.0 * std::abs(correlation_exact(singlet_state(), z, b)), 1e-12);
    EXPECT_LE(collapsed.s, 2.0);
    EXPECT_NEAR(chsh_exact(singlet_state(), optimal()).s, 2.0 * std::numbers::sqrt2, 1e-12);
}

TEST(ChshLhv, EveryDeterministicStrategyObeysTheBound)
{
    for (const auto& st : all_lhv_strategies()) {
        const std::pair<LhvStrategy, double> point{st, 1.0};
        EXPECT_LE(chsh_lhv(std::span(&point, 1)).s, 2.0);
    }
    EXPECT_EQ(all_lhv_strategies().size(), 16u);
    EXPECT_EQ(all_full_assignments().size(), 256u);
}

TEST(ChshLhv, ExhaustiveMaximumIsTwo)
{
    // Independent enumeration: 8 bits = (A,B) values on each of four directions.
    int best = 0;
    for (int bits = 0; bits < 256; ++bits) {
        int val[8];
        for (int k = 0; k < 8; ++k) val[k] = (bits >> k) & 1 ? -1 : 1;
        const int a = val[0], ap = val[1], b = val[6], bp = val[7];
        best = std::max(best, std::abs(a * b - a * bp) + std::abs(ap * b + ap * bp));
    }
    EXPECT_EQ(best, 2);
    EXPECT_EQ(lhv_max_s_exhaustive(), 2);
}

TEST(ChshLhv, UniformMixtureAndAllPlus)
{
    std::vector<std::pair<LhvStrategy, double>> uniform;
    for (const auto& st : all_lhv_strategies()) uniform.emplace_back(st, 1.0 / 16);
    const auto r = chsh_lhv(uniform);
    for (double t : r.terms) EXPECT_EQ(t, 0.0);
    EXPECT_EQ(r.s, 0.0);

    const std::pair<LhvStrategy, double> plus{LhvStrategy{1, 1, 1, 1}, 1.0};
    EXPECT_EQ(chsh_lhv(std::span(&plus, 1)).s, 2.0);
}

TEST(ChshLhv, BadDistribution)
{
    const std::vector<std::pair<LhvStrategy, double>> unnormalized{{LhvStrategy{}, 0.5}};
    EXPECT_EQ(kind_of([&] { chsh_lhv(unnormalized); }), ErrorKind::BadDistribution);
    const std::vector<std::pair<LhvStrategy, double>> negative{{LhvStrategy{}, 1.5}, {LhvStrategy{}, -0.5}};
    EXPECT_EQ(kind_of([&] { chsh_lhv(negative); }), ErrorKind::BadDistribution);
    const std::vector<std::pair<LhvStrategy, double>> not_pm1{{LhvStrategy{1, 0, 1, 1}, 1.0}};
    EXPECT_EQ(kind_of([&] { chsh_lhv(not_pm1); }), ErrorKind::BadDistribution);
}

TEST(EprIndirect, EqualAxesAlwaysAntiCorrelated)
{
    CounterRng rng(7);
    const auto z = SpinDirection(0, 0, 1);
    for (int i = 0; i < 2000; ++i) {
        const auto rec = epr_indirect(singlet_state(), z, z, rng);
        EXPECT_TRUE(rec.equal_axes);
        EXPECT_TRUE(rec.anticorrelation_holds);
        EXPECT_FALSE(rec.intersection_expired);
        EXPECT_EQ(rec.outcome_b, -rec.outcome_a);
        EXPECT_NE(rec.event_a, rec.event_b);
    }
}

TEST(EprIndirect, OrthogonalAxesAreFiftyFifty)
{
    CounterRng rng(8);
    const auto z = SpinDirection(0, 0, 1), x = SpinDirection(1, 0, 0);
    int counts[2][2] = {{0, 0}, {0, 0}};
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto rec = epr_indirect(singlet_state(), z, x, rng);
        EXPECT_TRUE(rec.intersection_expired);
        counts[rec.outcome_a > 0][rec.outcome_b > 0]++;
    }
    for (int a = 0; a < 2; ++a) {
        const int total = counts[a][0] + counts[a][1];
        EXPECT_NEAR(static_cast<double>(counts[a][1]) / total, 0.5, 4.0 * oracle::binomial_sigma(0.5, total));
    }
}
