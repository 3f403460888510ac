#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bqm/bell.hpp"
#include "bqm/config.hpp"

namespace bqm::cli {

enum class OutputFormat { Json, Csv };

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kStatisticalFailure = 1,
    kInputError = 2,
    kNumericalFailure = 3,
};

struct RunConfig {
    std::uint64_t seed = 1;
    std::uint64_t samples = 100000;
    OutputFormat format = OutputFormat::Json;
    Tolerances tol = default_tolerances();
};

enum class Scenario { Positive, Negative };

struct MeasureOptions {
    Scenario scenario = Scenario::Positive;
    std::optional<std::size_t> detector_branch; // required for Negative
    bool repeat = false;                        // re-measure each post-state
    bool records = true;                        // stream one JSON line per event
};

// Sub-stream layout under the master seed (stable across releases):
//   average     split(0)
//   measure     split(0) first detection, split(1) repeated detection
//   bell        split(i) for the i-th angle of the grid
//   chsh        split(0), then split(0..3) per setting pair
//   postulates  split(0)

/// Exact and Monte Carlo averages of one observable.
int cmd_average(const RunConfig& cfg, const std::string& state_spec, const std::string& observable_spec,
                const std::vector<std::string>& context_specs, std::ostream& out);

int cmd_measure(const RunConfig& cfg, const std::string& state_spec, const std::string& observable_spec,
                const MeasureOptions& opts, std::ostream& out);

/// Correlation scan E(0, theta) over theta = from, from + step, ..., <= to (degrees).
int cmd_bell(const RunConfig& cfg, const std::string& state_spec, double from, double to, double step,
             std::ostream& out);

/// Angles (a, a', b, b') in degrees within the x-z plane.
int cmd_chsh(const RunConfig& cfg, const std::string& state_spec, const std::array<double, 4>& angles,
             bell::ChshMode mode, std::ostream& out);

int cmd_postulates(const RunConfig& cfg, const std::vector<std::size_t>& dims, std::size_t n_states,
                   std::ostream& out);

/// Runs a command, translating exceptions into exit codes 2/3 with a
/// one-line message on `err`.
int run_guarded(const std::function<int()>& command, std::ostream& err);

} // namespace bqm::cli
