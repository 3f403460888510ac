#include "bqm/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bqm/error.hpp"

namespace bqm {

namespace {

// Lexicographic order on eigenvalue tuples; entries closer than `eps` tie.
bool label_less(const std::vector<double>& a, const std::vector<double>& b, double eps)
{
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (std::abs(a[m] - b[m]) > eps) return a[m] < b[m];
    }
    return false;
}

// Groups of consecutive indices of an ascending list whose neighbours differ by <= eps.
std::vector<std::vector<std::size_t>> cluster_ascending(const std::vector<double>& values, double eps)
{
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (groups.empty() || values[i] - values[groups.back().back()] > eps) groups.emplace_back();
        groups.back().push_back(i);
    }
    return groups;
}

double mean_of(const std::vector<double>& values, const std::vector<std::size_t>& idx)
{
    double s = 0.0;
    for (auto i : idx) s += values[i];
    return s / static_cast<double>(idx.size());
}

ComplexMatrix columns_to_matrix(const std::vector<ComplexVector>& cols)
{
    const std::size_t n = cols.size();
    ComplexMatrix m(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
    return m;
}

// Orthonormal basis of span(vectors) chosen canonically: Gram-Schmidt over
// P e_0, P e_1, ... where P projects onto the span.
std::vector<ComplexVector> canonical_basis(const std::vector<ComplexVector>& vectors, std::size_t dim)
{
    const std::size_t k = vectors.size();
    ComplexMatrix p(dim);
    for (const auto& v : vectors) p += ComplexMatrix::projector(v);

    std::vector<ComplexVector> out;
    out.reserve(k);
    // Accept the first column whose residual is not tiny; if the threshold is
    // too strict (can't happen for exact projectors) fall back to the best one.
    for (double threshold : {1e-3, 1e-8}) {
        for (std::size_t j = 0; j < dim && out.size() < k; ++j) {
            ComplexVector r = p.column(j);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& u : out) {
                    const Complex c = inner(u, r);
                    for (std::size_t i = 0; i < dim; ++i) r[i] -= c * u[i];
                }
            }
            const double nr = norm(r);
            if (nr > threshold) {
                for (auto& z : r) z /= nr;
                out.push_back(std::move(r));
            }
        }
        if (out.size() == k) break;
    }
    if (out.size() != k) throw Error(ErrorKind::ConvergenceFailure, "could not canonicalize degenerate eigenspace");
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(const ComplexMatrix& m, const Tolerances& tol)
{
    if (m.empty()) throw Error(ErrorKind::InvalidArgument, "observable must have dim >= 1");
    if (!m.is_finite()) throw Error(ErrorKind::NotFinite, "observable has NaN or infinite entries");
    const double defect = m.hermiticity_defect();
    if (defect > tol.hermitian) {
        throw Error(ErrorKind::NotHermitian, "max |M_ij - conj(M_ji)| = " + std::to_string(defect));
    }
    m_ = m.hermitian_part();
}

Observable Observable::identity(std::size_t dim, double scale)
{
    return Observable(ComplexMatrix::identity(dim) * Complex(scale));
}

Observable operator+(const Observable& a, const Observable& b) { return Observable(a.matrix() + b.matrix()); }
Observable operator-(const Observable& a, const Observable& b) { return Observable(a.matrix() - b.matrix()); }
Observable operator*(double s, const Observable& a) { return Observable(a.matrix() * Complex(s)); }

Observable product(const Observable& a, const Observable& b, const Tolerances& tol)
{
    return Observable(a.matrix() * b.matrix(), tol);
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

HermitianEigen hermitian_eigen(const ComplexMatrix& input, const Tolerances& tol)
{
    const std::size_t n = input.dim();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "eigen decomposition of empty matrix");
    ComplexMatrix a = input.hermitian_part();
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    const double scale = a.frobenius_norm();
    const double target = tol.jacobi_offdiag * std::max(scale, 1e-300);
    int sweep = 0;
    while (scale > 0.0 && off_norm() > target) {
        if (sweep++ >= tol.jacobi_max_sweeps) {
            throw Error(ErrorKind::ConvergenceFailure,
                        "Jacobi eigensolver did not converge in " + std::to_string(tol.jacobi_max_sweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double g = std::abs(apq);
                if (g <= 1e-300 || g < 1e-18 * scale) continue;
                // Phase-rotate the pair to a real symmetric 2x2 block, then a
                // real Givens rotation zeroes it: G = diag(1, e^{-i alpha}) R.
                const Complex phase = apq / g;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * g, aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);

                // A <- A G
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * gpp + aiq * gqp;
                    a(i, q) = aip * gpq + aiq * gqq;
                }
                // A <- G* A
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex apj = a(p, j), aqj = a(q, j);
                    a(p, j) = std::conj(gpp) * apj + std::conj(gqp) * aqj;
                    a(q, j) = std::conj(gpq) * apj + std::conj(gqq) * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                // V <- V G
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * gpp + viq * gqp;
                    v(i, q) = vip * gpq + viq * gqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

// ---------------------------------------------------------------------------

ComplexMatrix SpectralDecomposition::reconstruct() const
{
    if (projectors.empty()) return {};
    ComplexMatrix m(projectors.front().dim());
    for (std::size_t i = 0; i < size(); ++i) m += projectors[i] * Complex(eigenvalues[i]);
    return m;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "commutator operands differ in dimension");
    return a * b - b * a;
}

bool is_commuting_family(std::span<const Observable> obs, double tol)
{
    for (std::size_t i = 0; i < obs.size(); ++i)
        for (std::size_t j = i + 1; j < obs.size(); ++j)
            if (commutator(obs[i].matrix(), obs[j].matrix()).max_abs() > tol) return false;
    return true;
}

SpectralDecomposition spectral_decompose(const Observable& a, const Tolerances& tol)
{
    const auto eig = hermitian_eigen(a.matrix(), tol);
    SpectralDecomposition out;
    for (const auto& group : cluster_ascending(eig.values, tol.degeneracy)) {
        out.eigenvalues.push_back(mean_of(eig.values, group));
        ComplexMatrix p(a.dim());
        for (auto k : group) p += ComplexMatrix::projector(eig.vectors.column(k));
        out.projectors.push_back(p.hermitian_part());
    }
    return out;
}

double operator_norm(const Observable& a, const Tolerances& tol)
{
    const auto eig = hermitian_eigen(a.matrix(), tol);
    return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

// ---------------------------------------------------------------------------
// Context

ContextPtr joint_diagonalize(std::span<const Observable> obs, const Tolerances& tol)
{
    if (obs.empty()) throw Error(ErrorKind::InvalidArgument, "joint_diagonalize needs at least one observable");
    const std::size_t dim = obs.front().dim();
    for (const auto& o : obs)
        if (o.dim() != dim) throw Error(ErrorKind::DimensionMismatch, "observables in a family differ in dimension");
    if (!is_commuting_family(obs, tol.commuting)) {
        throw Error(ErrorKind::NotCommuting, "family contains a non-commuting pair");
    }

    struct Block {
        std::vector<ComplexVector> vectors;
        std::vector<double> labels;
    };
    std::vector<Block> blocks(1);
    for (std::size_t i = 0; i < dim; ++i) {
        ComplexVector e(dim);
        e[i] = 1.0;
        blocks[0].vectors.push_back(std::move(e));
    }

    // Refine every invariant subspace by the next observable.
    for (const auto& o : obs) {
        std::vector<Block> refined;
        for (auto& block : blocks) {
            const std::size_t k = block.vectors.size();
            std::vector<ComplexVector> image;
            image.reserve(k);
            for (const auto& w : block.vectors) image.push_back(o.matrix().apply(w));
            ComplexMatrix restricted(k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) restricted(i, j) = inner(block.vectors[i], image[j]);
            const auto eig = hermitian_eigen(restricted, tol);
            for (const auto& group : cluster_ascending(eig.values, tol.degeneracy)) {
                Block child;
                child.labels = block.labels;
                child.labels.push_back(mean_of(eig.values, group));
                for (auto c : group) {
                    ComplexVector u(dim);
                    for (std::size_t j = 0; j < k; ++j) {
                        const Complex coeff = eig.vectors(j, c);
                        for (std::size_t i = 0; i < dim; ++i) u[i] += coeff * block.vectors[j][i];
                    }
                    child.vectors.push_back(std::move(u));
                }
                refined.push_back(std::move(child));
            }
        }
        blocks = std::move(refined);
    }

    std::stable_sort(blocks.begin(), blocks.end(), [&](const Block& x, const Block& y) {
        return label_less(x.labels, y.labels, tol.degeneracy);
    });

    auto ctx = std::shared_ptr<Context>(new Context());
    for (const auto& block : blocks) {
        for (auto& v : canonical_basis(block.vectors, dim)) ctx->basis_.push_back(std::move(v));
    }
    ctx->basis_matrix_ = columns_to_matrix(ctx->basis_);
    ctx->members_.assign(obs.begin(), obs.end());

    const ComplexMatrix vadj = ctx->basis_matrix_.adjoint();
    for (const auto& o : obs) {
        const ComplexMatrix d = vadj * o.matrix() * ctx->basis_matrix_;
        std::vector<double> labels(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            labels[i] = d(i, i).real();
            for (std::size_t j = 0; j < dim; ++j) {
                if (i != j && std::abs(d(i, j)) > tol.diagonalized * std::max(1.0, o.matrix().max_abs())) {
                    throw Error(ErrorKind::ConvergenceFailure, "joint basis leaves residual " +
                                                                   std::to_string(std::abs(d(i, j))));
                }
            }
        }
        ctx->labels_.push_back(std::move(labels));
    }
    return ctx;
}

ContextPtr Context::from_basis(std::vector<ComplexVector> basis, std::vector<Observable> members,
                               const Tolerances& tol)
{
    const std::size_t dim = basis.size();
    if (dim == 0) throw Error(ErrorKind::InvalidArgument, "context basis is empty");
    for (const auto& v : basis)
        if (v.size() != dim) throw Error(ErrorKind::DimensionMismatch, "basis vectors must have length dim");
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(inner(basis[i], basis[j]) - expected) > tol.orthonormal) {
                throw Error(ErrorKind::InvalidArgument, "context basis is not orthonormal");
            }
        }

    auto ctx = std::shared_ptr<Context>(new Context());
    ctx->basis_ = std::move(basis);
    ctx->basis_matrix_ = columns_to_matrix(ctx->basis_);
    for (auto& m : members) {
        if (m.dim() != dim) throw Error(ErrorKind::DimensionMismatch, "context member dimension");
        if (!ctx->contains(m, tol)) throw Error(ErrorKind::NotCommuting, "member is not diagonal in the basis");
        std::vector<double> labels(dim);
        for (std::size_t k = 0; k < dim; ++k) labels[k] = sandwich(ctx->basis_[k], m.matrix()).real();
        ctx->labels_.push_back(std::move(labels));
        ctx->members_.push_back(std::move(m));
    }
    return ctx;
}

bool Context::is_maximal(const Tolerances& tol) const
{
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j) {
            bool distinct = false;
            for (const auto& l : labels_) distinct = distinct || std::abs(l[i] - l[j]) > tol.degeneracy;
            if (!distinct) return false;
        }
    return true;
}

bool Context::contains(const Observable& a, const Tolerances& tol) const
{
    if (a.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "observable vs context dimension");
    for (const auto& m : members_)
        if (m == a) return true;
    const ComplexMatrix d = basis_matrix_.adjoint() * a.matrix() * basis_matrix_;
    const double bound = tol.diagonalized * std::max(1.0, a.matrix().max_abs());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            if (i != j && std::abs(d(i, j)) > bound) return false;
    return true;
}

double Context::value_of(const Observable& a, std::size_t index, const Tolerances& tol) const
{
    if (a.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "observable vs context dimension");
    if (index >= dim()) throw Error(ErrorKind::InvalidArgument, "basis index out of range");
    for (std::size_t m = 0; m < members_.size(); ++m)
        if (members_[m] == a) return labels_[m][index];
    if (!contains(a, tol)) {
        throw Error(ErrorKind::NonCommuting, "observable is not in the commuting set of this context");
    }
    return sandwich(basis_[index], a.matrix()).real();
}

bool Context::same_basis(const Context& other, const Tolerances& tol) const
{
    if (this == &other) return true;
    if (dim() != other.dim()) return false;
    for (std::size_t k = 0; k < dim(); ++k) {
        if (std::abs(std::abs(inner(basis_[k], other.basis_[k])) - 1.0) > tol.orthonormal) return false;
    }
    return true;
}

} // namespace bqm
