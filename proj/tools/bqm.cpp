// Command-line runner for the binary-model simulation engine.

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "bqm/cli.hpp"
#include "bqm/error.hpp"

using namespace bqm;

int main(int argc, char** argv)
{
    CLI::App app{"Seeded experiments for contextual valuations, measurement and Bell tests"};
    app.require_subcommand(1);

    cli::RunConfig cfg;
    std::string format = "json";
    std::string out_path;
    std::string preset;
    std::vector<std::string> tolerance_overrides;
    app.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    app.add_option("--samples", cfg.samples, "Events per estimate")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--out", out_path, "Write output to PATH instead of stdout");
    app.add_option("--preset", preset, "State preset (shorthand for --state)");
    app.add_option("--tolerance", tolerance_overrides, "Override a tolerance, KEY=VAL")->expected(0, -1);

    std::string state_spec;
    std::string observable_spec;

    auto* average = app.add_subcommand("average", "Exact quantum average vs Monte Carlo over actual states");
    std::vector<std::string> context_specs;
    average->add_option("--state", state_spec, "State preset, JSON document, or file");
    average->add_option("--observable", observable_spec, "Observable preset, JSON document, or file")->required();
    average->add_option("--context", context_specs, "Commuting observables defining the context (default: the observable)");

    auto* measure = app.add_subcommand("measure", "Analyzer/detector experiment");
    cli::MeasureOptions mopts;
    std::string scenario = "positive";
    std::size_t detector_branch = 0;
    bool summary_only = false;
    measure->add_option("--state", state_spec, "State preset, JSON document, or file");
    measure->add_option("--observable", observable_spec, "Observable preset, JSON document, or file")->required();
    measure->add_option("--scenario", scenario)->check(CLI::IsMember({"positive", "negative"}))->capture_default_str();
    auto* branch_opt = measure->add_option("--detector-branch", detector_branch, "Exit watched by the single detector");
    measure->add_flag("--repeat", mopts.repeat, "Re-measure every post-measurement state");
    measure->add_flag("--summary-only", summary_only, "Suppress per-event records");

    auto* bell_cmd = app.add_subcommand("bell", "Correlation scan E(0, theta) on a two-spin state");
    double from = 0.0, to = 180.0, step = 30.0;
    bell_cmd->add_option("--state", state_spec, "State preset, JSON document, or file");
    bell_cmd->add_option("--from", from)->capture_default_str();
    bell_cmd->add_option("--to", to)->capture_default_str();
    bell_cmd->add_option("--step", step)->capture_default_str();

    auto* chsh = app.add_subcommand("chsh", "CHSH quantity for four planar settings");
    std::vector<double> angles{0.0, 90.0, 45.0, 135.0};
    std::string mode = "contextual";
    chsh->add_option("--state", state_spec, "State preset, JSON document, or file");
    chsh->add_option("--angles", angles, "a a' b b' in degrees")->expected(4)->capture_default_str();
    chsh->add_option("--mode", mode)->check(CLI::IsMember({"contextual", "lhv", "exact"}))->capture_default_str();

    auto* postulates = app.add_subcommand("postulates", "Check the valuation postulates on random contexts");
    std::vector<std::size_t> dims{2, 3, 4, 5, 6, 7, 8};
    std::size_t n_states = 1000;
    postulates->add_option("--dims", dims)->capture_default_str();
    postulates->add_option("--states", n_states, "Number of sampled physical states")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kInputError;
    }

    for (const auto& kv : tolerance_overrides) {
        const auto eq = kv.find('=');
        double value = 0.0;
        bool ok = eq != std::string::npos;
        if (ok) {
            try {
                value = std::stod(kv.substr(eq + 1));
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok || !set_tolerance(cfg.tol, kv.substr(0, eq), value)) {
            std::cerr << "error: InvalidArgument: bad --tolerance '" << kv << "'\n";
            return cli::kInputError;
        }
    }
    cfg.format = format == "csv" ? cli::OutputFormat::Csv : cli::OutputFormat::Json;
    if (state_spec.empty()) state_spec = preset;

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot open " << out_path << '\n';
            return cli::kInputError;
        }
    }
    std::ostream& out = out_path.empty() ? std::cout : file;

    auto default_state = [&](const char* fallback) { return state_spec.empty() ? std::string(fallback) : state_spec; };

    return cli::run_guarded(
        [&]() -> int {
            if (*average) return cli::cmd_average(cfg, default_state("mixed_qubit"), observable_spec, context_specs, out);
            if (*measure) {
                mopts.scenario = scenario == "negative" ? cli::Scenario::Negative : cli::Scenario::Positive;
                if (branch_opt->count() > 0) mopts.detector_branch = detector_branch;
                mopts.records = !summary_only;
                return cli::cmd_measure(cfg, default_state("mixed_qubit"), observable_spec, mopts, out);
            }
            if (*bell_cmd) return cli::cmd_bell(cfg, default_state("singlet"), from, to, step, out);
            if (*chsh) {
                const std::map<std::string, bell::ChshMode> modes{{"contextual", bell::ChshMode::Contextual},
                                                                  {"lhv", bell::ChshMode::Lhv},
                                                                  {"exact", bell::ChshMode::Exact}};
                return cli::cmd_chsh(cfg, default_state("singlet"), {angles[0], angles[1], angles[2], angles[3]},
                                     modes.at(mode), out);
            }
            return cli::cmd_postulates(cfg, dims, n_states, out);
        },
        std::cerr);
}
