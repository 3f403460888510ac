#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "bqm/dynamics.hpp"
#include "bqm/error.hpp"
#include "bqm/random_matrices.hpp"
#include "oracles.hpp"

using namespace bqm;

namespace {
Hamiltonian hz() { return Hamiltonian(pauli::z()); }
}

TEST(UnitaryAt, ZeroTimeIsIdentity)
{
    CounterRng rng(1);
    const Hamiltonian h(random::hermitian(4, rng));
    EXPECT_EQ(unitary_at(h, 0.0), ComplexMatrix::identity(4));
}

TEST(UnitaryAt, DiagonalHamiltonian)
{
    const ComplexMatrix u = unitary_at(hz(), std::numbers::pi / 2);
    const ComplexMatrix expected{{Complex(0, -1), 0.0}, {0.0, Complex(0, 1)}};
    EXPECT_LT(max_abs_diff(u, expected), 1e-12);
}

TEST(UnitaryAt, GroupLawAndUnitarity)
{
    CounterRng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 2 + trial % 6;
        const Hamiltonian h(random::hermitian(d, rng));
        const double t1 = 20.0 * rng.uniform() - 10.0;
        const double t2 = 20.0 * rng.uniform() - 10.0;
        const ComplexMatrix u1 = unitary_at(h, t1), u2 = unitary_at(h, t2);
        EXPECT_LT(max_abs_diff(u1 * u2, unitary_at(h, t1 + t2)), 1e-9);
        const double t_big = 200.0 * rng.uniform() - 100.0;
        const ComplexMatrix ub = unitary_at(h, t_big);
        EXPECT_LT(max_abs_diff(ub.adjoint() * ub, ComplexMatrix::identity(d)), 1e-9);
    }
}

TEST(UnitaryAt, RejectsNonFiniteTime)
{
    EXPECT_THROW(unitary_at(hz(), std::numeric_limits<double>::infinity()), Error);
}

TEST(HeisenbergEvolve, ConservedObservableIsUnchanged)
{
    CounterRng rng(3);
    const Observable h = random::hermitian(4, rng);
    const Observable conserved = product(h, h);
    for (double t : {0.3, 1.0, 17.0}) EXPECT_EQ(heisenberg_evolve(conserved, Hamiltonian(h), t), conserved);
}

TEST(HeisenbergEvolve, PauliXUnderSigmaZ)
{
    const Observable sx(pauli::x());
    for (double t : {0.0, 0.25, 1.0, 2.5, 4.9}) {
        const ComplexMatrix analytic = pauli::x() * Complex(std::cos(2 * t)) - pauli::y() * Complex(std::sin(2 * t));
        const ComplexMatrix spectral = heisenberg_evolve(sx, hz(), t).matrix();
        const ComplexMatrix rk4 = oracle::rk4_heisenberg(pauli::z(), pauli::x(), t, 1e-3);
        EXPECT_LT(max_abs_diff(spectral, analytic), 1e-12);
        EXPECT_LT(max_abs_diff(spectral, rk4), 1e-6);
    }
}

TEST(HeisenbergEvolve, ZeroTimeReturnsInput)
{
    CounterRng rng(4);
    const Observable a = random::hermitian(3, rng);
    EXPECT_EQ(heisenberg_evolve(a, Hamiltonian(random::hermitian(3, rng)), 0.0), a);
}

TEST(HeisenbergEvolve, MatchesRk4AndPreservesSpectrum)
{
    CounterRng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = trial % 2 == 0 ? 2 : 4;
        const Hamiltonian h(random::hermitian(d, rng));
        const Observable a = random::hermitian(d, rng);
        const double t = 5.0 * rng.uniform();
        const Observable at = heisenberg_evolve(a, h, t);
        EXPECT_LT(max_abs_diff(at.matrix(), oracle::rk4_heisenberg(h.matrix(), a.matrix(), t, 1e-3)), 1e-6);
        const auto before = oracle::eigenvalues(a.matrix());
        const auto after = oracle::eigenvalues(at.matrix());
        for (std::size_t k = 0; k < d; ++k) EXPECT_NEAR(before[k], after[k], 1e-8);
    }
}

TEST(HeisenbergEvolve, AgreesWithSchrodingerPicture)
{
    CounterRng rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 2 + trial % 5;
        const Hamiltonian h(random::hermitian(d, rng));
        const Observable a = random::hermitian(d, rng);
        const auto rho = random::density(d, rng);
        const double t = 10.0 * rng.uniform() - 5.0;
        EXPECT_NEAR(quantum_average(rho, heisenberg_evolve(a, h, t)), quantum_average(evolve_state(rho, h, t), a), 1e-9);
    }
}

TEST(HeisenbergEvolve, HbarScalesTime)
{
    CounterRng rng(7);
    const Hamiltonian h(random::hermitian(3, rng));
    const Observable a = random::hermitian(3, rng);
    EXPECT_LT(max_abs_diff(heisenberg_evolve(a, h, 2.0, 2.0).matrix(), heisenberg_evolve(a, h, 1.0).matrix()), 1e-12);
}

TEST(EvolvedEvaluate, ConservedAndTimeZero)
{
    const Observable sz(pauli::z());
    const auto ctx = joint_diagonalize({sz});
    for (std::size_t k = 0; k < 2; ++k) {
        const PhysicalState phi(ctx, k, next_event_id());
        for (double t : {0.0, 0.7, 3.0, 55.5}) EXPECT_EQ(evolved_evaluate(phi, sz, hz(), t), evaluate(phi, sz));
    }
}

TEST(EvolvedEvaluate, IsDeterministic)
{
    CounterRng rng(8);
    const Observable h = random::hermitian(4, rng);
    const Observable f = product(h, h) + h; // commutes with H
    const auto ctx = joint_diagonalize({h});
    const PhysicalState phi(ctx, 2, next_event_id());
    const double v1 = evolved_evaluate(phi, f, Hamiltonian(h), 1.2345);
    const double v2 = evolved_evaluate(phi, f, Hamiltonian(h), 1.2345);
    EXPECT_EQ(std::memcmp(&v1, &v2, sizeof v1), 0);
    EXPECT_EQ(v1, evaluate(phi, f));
}

TEST(EvolvedEvaluate, LeavingTheContextIsNonCommuting)
{
    const Observable sx(pauli::x());
    const auto ctx = joint_diagonalize({sx});
    const PhysicalState phi(ctx, 0, next_event_id());
    EXPECT_NO_THROW(evolved_evaluate(phi, sx, hz(), 0.0));
    try {
        evolved_evaluate(phi, sx, hz(), 0.3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonCommuting);
    }
    // after a half period sigma_x returns to -sigma_x, which is back in the context
    EXPECT_NEAR(evolved_evaluate(phi, sx, hz(), std::numbers::pi / 2), -evaluate(phi, sx), 1e-12);
}
