#include "bqm/config.hpp"
#include "bqm/error.hpp"

namespace bqm {

namespace {
Tolerances g_defaults{};
}

const Tolerances& default_tolerances() { return g_defaults; }

Tolerances& mutable_default_tolerances() { return g_defaults; }

bool set_tolerance(Tolerances& tol, std::string_view key, double value)
{
    struct Field {
        std::string_view name;
        double Tolerances::*member;
    };
    static constexpr Field fields[] = {
        {"hermitian", &Tolerances::hermitian},
        {"trace", &Tolerances::trace},
        {"positivity", &Tolerances::positivity},
        {"projector", &Tolerances::projector},
        {"commuting", &Tolerances::commuting},
        {"diagonalized", &Tolerances::diagonalized},
        {"orthonormal", &Tolerances::orthonormal},
        {"degeneracy", &Tolerances::degeneracy},
        {"jacobi_offdiag", &Tolerances::jacobi_offdiag},
        {"weights_sum", &Tolerances::weights_sum},
        {"weight_floor", &Tolerances::weight_floor},
        {"branch_match", &Tolerances::branch_match},
        {"zero_branch", &Tolerances::zero_branch},
        {"unit_vector", &Tolerances::unit_vector},
        {"conserved", &Tolerances::conserved},
    };
    if (key == "jacobi_max_sweeps") {
        if (value < 1) return false;
        tol.jacobi_max_sweeps = static_cast<int>(value);
        return true;
    }
    for (const auto& f : fields) {
        if (f.name == key) {
            if (!(value >= 0.0)) return false;
            tol.*(f.member) = value;
            return true;
        }
    }
    return false;
}

std::string_view error_name(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::NonCommuting: return "NonCommuting";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::DegenerateWeights: return "DegenerateWeights";
    case ErrorKind::NoMatchingBranch: return "NoMatchingBranch";
    case ErrorKind::ZeroProbabilityBranch: return "ZeroProbabilityBranch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::BadDistribution: return "BadDistribution";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace bqm
