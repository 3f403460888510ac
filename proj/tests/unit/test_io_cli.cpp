#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bqm/cli.hpp"
#include "bqm/error.hpp"
#include "bqm/io.hpp"

using namespace bqm;
using nlohmann::json;

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

std::string message_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

cli::RunConfig config(std::uint64_t samples, std::uint64_t seed = 1)
{
    cli::RunConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST(ParseJson, SyntaxErrorsCarryLineAndColumn)
{
    EXPECT_EQ(io::parse_json(R"({"a": [1, 2]})")["a"][1], 2);
    const auto msg = message_of([] { io::parse_json("{\n  \"a\": [1,\n  ", "state.json"); });
    EXPECT_NE(msg.find("state.json:3:"), std::string::npos) << msg;
    EXPECT_EQ(kind_of([] { io::parse_json("[1,,2]"); }), ErrorKind::ParseError);
}

TEST(MatrixFromJson, RealAndComplexEntries)
{
    const auto m = io::matrix_from_json(json::parse(R"([[1, [0, -1]], [[0, 1], 2.5]])"));
    EXPECT_EQ(m(0, 0), Complex(1, 0));
    EXPECT_EQ(m(0, 1), Complex(0, -1));
    EXPECT_EQ(m(1, 0), Complex(0, 1));
    EXPECT_EQ(m(1, 1), Complex(2.5, 0));
    const auto msg = message_of([] { io::matrix_from_json(json::parse(R"([[1, 2], [3]])")); });
    EXPECT_NE(msg.find("matrix/1"), std::string::npos) << msg;
    EXPECT_EQ(kind_of([] { io::matrix_from_json(json::parse(R"([[1, "x"], [0, 1]])")); }), ErrorKind::ParseError);
}

TEST(LoadState, PresetsAndDocuments)
{
    for (const auto& name : io::state_preset_names()) {
        const auto s = io::load_state(name);
        EXPECT_NEAR(s.rho().trace().real(), 1.0, 1e-12) << name;
    }
    EXPECT_NEAR(io::load_state("plus_x").rho()(0, 1).real(), 0.5, 1e-15);
    const auto v = io::load_state(R"({"vector": [3, [0, 4]]})");
    EXPECT_NEAR(v.rho()(0, 0).real(), 0.36, 1e-12);
    EXPECT_NEAR(v.purity(), 1.0, 1e-12);
    EXPECT_NEAR(io::load_state(R"({"preset": "singlet"})").purity(), 1.0, 1e-12);
    EXPECT_NEAR(io::load_state("[[0.25, 0], [0, 0.75]]").rho()(1, 1).real(), 0.75, 0);
    EXPECT_EQ(kind_of([] { io::load_state("[[2, 0], [0, -1]]"); }), ErrorKind::InvalidState);
    EXPECT_EQ(kind_of([] { io::load_state("no_such_preset_or_file"); }), ErrorKind::ParseError);
}

TEST(LoadObservable, PresetsAndValidation)
{
    for (const auto& name : io::observable_preset_names()) EXPECT_NO_THROW(io::load_observable(name)) << name;
    EXPECT_EQ(io::load_observable("pauli_y").matrix(), pauli::y());
    EXPECT_EQ(io::load_observable("zz").matrix(), kron(pauli::z(), pauli::z()));
    EXPECT_EQ(kind_of([] { io::load_observable("[[1, 2], [0, 1]]"); }), ErrorKind::NotHermitian);
    EXPECT_EQ(kind_of([] { io::load_observable("[[1, 2], [2]]"); }), ErrorKind::ParseError);
}

TEST(FormatDouble, RoundTrips)
{
    for (double v : {0.1, -2.5, 1e-17, 2.0 / 3.0, 1e300}) EXPECT_EQ(std::stod(io::format_double(v)), v);
}

TEST(CmdAverage, ExactAndMonteCarlo)
{
    std::ostringstream out;
    EXPECT_EQ(cli::cmd_average(config(20000), "mixed_qubit", "pauli_z", {}, out), cli::kSuccess);
    const auto j = json::parse(out.str());
    EXPECT_EQ(j["schema"], "binary-qm/1");
    EXPECT_EQ(j["exact"], 0.0);
    EXPECT_NEAR(j["mc_mean"].get<double>(), 0.0, 0.05);
    EXPECT_TRUE(j["within_5_sigma"].get<bool>());

    std::ostringstream eigen;
    EXPECT_EQ(cli::cmd_average(config(1000), "up_z", "pauli_z", {}, eigen), cli::kSuccess);
    const auto e = json::parse(eigen.str());
    EXPECT_EQ(e["mc_mean"], 1.0);
    EXPECT_EQ(e["std_error"], 0.0);
}

TEST(CmdAverage, ExplicitContext)
{
    std::ostringstream out;
    EXPECT_EQ(cli::cmd_average(config(5000), "singlet", "zz", {"z_a", "z_b"}, out), cli::kSuccess);
    EXPECT_EQ(json::parse(out.str())["mc_mean"], -1.0);
    std::ostringstream bad, err;
    EXPECT_EQ(cli::run_guarded([&] { return cli::cmd_average(config(10), "singlet", "zz", {"x_a", "z_a"}, bad); }, err),
              cli::kInputError);
}

TEST(CmdMeasure, RecordsAndSummary)
{
    std::ostringstream out;
    cli::MeasureOptions opts;
    opts.repeat = true;
    EXPECT_EQ(cli::cmd_measure(config(2000), "plus_x", "pauli_z", opts, out), cli::kSuccess);
    std::istringstream lines(out.str());
    std::string line;
    std::size_t n_records = 0;
    json summary;
    while (std::getline(lines, line)) {
        const auto j = json::parse(line);
        if (j.contains("command")) {
            summary = j;
        } else {
            ++n_records;
            EXPECT_TRUE(j.contains("phi_event_id"));
        }
    }
    EXPECT_GE(n_records, 2000u);
    EXPECT_TRUE(summary["passed"].get<bool>());
    for (const auto& b : summary["branches"]) EXPECT_TRUE(b["within_4_sigma"].get<bool>());
}

TEST(CmdMeasure, NegativeScenario)
{
    std::ostringstream out;
    cli::MeasureOptions opts;
    opts.scenario = cli::Scenario::Negative;
    opts.detector_branch = 1;
    opts.records = false;
    EXPECT_EQ(cli::cmd_measure(config(20000), "mixed_qubit", "pauli_z", opts, out), cli::kSuccess);
    const auto j = json::parse(out.str());
    EXPECT_TRUE(j["passed"].get<bool>());

    std::ostringstream none, err;
    opts.detector_branch.reset();
    EXPECT_EQ(cli::run_guarded([&] { return cli::cmd_measure(config(10), "mixed_qubit", "pauli_z", opts, none); }, err),
              cli::kInputError);
}

TEST(CmdBell, CsvScan)
{
    auto cfg = config(4000);
    cfg.format = cli::OutputFormat::Csv;
    std::ostringstream out;
    EXPECT_EQ(cli::cmd_bell(cfg, "singlet", 0, 180, 60, out), cli::kSuccess);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "theta_degrees,E_exact,E_mc,std_error,n");
    int rows = 0;
    while (std::getline(lines, line)) {
        const double theta = std::stod(line.substr(0, line.find(',')));
        const double exact = std::stod(line.substr(line.find(',') + 1));
        EXPECT_NEAR(exact, -std::cos(theta * std::acos(-1.0) / 180), 1e-12);
        ++rows;
    }
    EXPECT_EQ(rows, 4);
}

TEST(CmdChsh, Modes)
{
    std::ostringstream ctx;
    EXPECT_EQ(cli::cmd_chsh(config(50000), "singlet", {0, 90, 45, 135}, bell::ChshMode::Contextual, ctx),
              cli::kSuccess);
    EXPECT_NEAR(json::parse(ctx.str())["S"].get<double>(), 2.0 * std::sqrt(2.0), 0.08);

    std::ostringstream lhv;
    EXPECT_EQ(cli::cmd_chsh(config(1), "singlet", {0, 90, 45, 135}, bell::ChshMode::Lhv, lhv), cli::kSuccess);
    const auto j = json::parse(lhv.str());
    EXPECT_EQ(j["max_S"], 2.0);
    EXPECT_EQ(j["strategies_enumerated"], 256);

    std::ostringstream exact;
    EXPECT_EQ(cli::cmd_chsh(config(1), "singlet", {0, 90, 45, 135}, bell::ChshMode::Exact, exact), cli::kSuccess);
    EXPECT_NEAR(json::parse(exact.str())["S"].get<double>(), 2.0 * std::sqrt(2.0), 1e-12);
}

TEST(CmdPostulates, SmallRun)
{
    std::ostringstream out;
    EXPECT_EQ(cli::cmd_postulates(config(500), {2, 3}, 40, out), cli::kSuccess);
    const auto j = json::parse(out.str());
    for (const auto& c : j["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c["name"];
}

TEST(RunGuarded, ExitCodes)
{
    std::ostringstream out, err;
    EXPECT_EQ(cli::run_guarded([&] { return cli::cmd_average(config(10), "mixed_qubit", "[[1, 2], [0, 1]]", {}, out); },
                               err),
              cli::kInputError);
    EXPECT_NE(err.str().find("NotHermitian"), std::string::npos);
    EXPECT_EQ(cli::run_guarded([] () -> int { throw Error(ErrorKind::ConvergenceFailure, "x"); }, err),
              cli::kNumericalFailure);
    EXPECT_EQ(cli::run_guarded([] () -> int { throw std::bad_alloc(); }, err), cli::kNumericalFailure);
    EXPECT_EQ(cli::run_guarded([] { return 0; }, err), cli::kSuccess);
}
