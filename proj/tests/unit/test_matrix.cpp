#include <gtest/gtest.h>

#include "bqm/error.hpp"
#include "bqm/matrix.hpp"

using namespace bqm;

TEST(ComplexMatrix, RejectsWrongEntryCountAndNonFinite)
{
    EXPECT_THROW(ComplexMatrix(2, {1.0, 2.0, 3.0}), Error);
    try {
        ComplexMatrix(1, {Complex(std::nan(""), 0.0)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotFinite);
    }
}

TEST(ComplexMatrix, ProductAndAdjoint)
{
    const ComplexMatrix a{{1.0, Complex(0, 2)}, {3.0, 4.0}};
    const ComplexMatrix b{{0.0, 1.0}, {1.0, 0.0}};
    const ComplexMatrix ab = a * b;
    EXPECT_EQ(ab(0, 0), Complex(0, 2));
    EXPECT_EQ(ab(0, 1), Complex(1, 0));
    EXPECT_EQ(ab(1, 0), Complex(4, 0));
    EXPECT_EQ(a.adjoint()(1, 0), Complex(0, -2));
    EXPECT_THROW(a * ComplexMatrix::identity(3), Error);
}

TEST(ComplexMatrix, KronAndPartialTraces)
{
    const ComplexMatrix z = pauli::z();
    const ComplexMatrix x = pauli::x();
    const ComplexMatrix zx = kron(z, x);
    EXPECT_EQ(zx(0, 1), Complex(1.0));  // |00><01|
    EXPECT_EQ(zx(2, 3), Complex(-1.0)); // |10><11|
    // Tr_B(z (x) I) = 2 z; Tr_A(I (x) x) = 2 x
    EXPECT_LT(max_abs_diff(partial_trace_second(kron(z, ComplexMatrix::identity(2)), 2, 2), z * Complex(2.0)), 1e-15);
    EXPECT_LT(max_abs_diff(partial_trace_first(kron(ComplexMatrix::identity(2), x), 2, 2), x * Complex(2.0)), 1e-15);
    EXPECT_THROW(partial_trace_first(zx, 3, 2), Error);
}
