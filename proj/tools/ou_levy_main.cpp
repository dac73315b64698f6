// CLI for the spectral OU laboratory.
//
//   ou_levy check     --config cfg.json [--out dir]
//   ou_levy simulate  --config cfg.json [--out dir] [--replicas M] [--seed S] [--format json,csv]
//   ou_levy girsanov  --config cfg.json [--out dir] [--replicas M] [--seed S]
//   ou_levy rigidity  --config cfg.json [--out dir] [--replicas M] [--seed S]
//   ou_levy reproduce <example-id>      [--out dir]
//
// Exit codes: 0 success, 2 config error, 3 precondition refusal (divergent
// representative norm, with the witness in the report), 4 self-check failure.

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "oulevy/commands.hpp"
#include "oulevy/errors.hpp"
#include "oulevy/json_io.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int replicas = 0;
    std::string format;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_config) {
    if (needs_config)
        cmd->add_option("--config", o.config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", o.out_dir, "output directory (default from config)");
    cmd->add_option("--seed", o.seed, "master seed override")
        ->each([&o](const std::string&) { o.seed_set = true; });
    cmd->add_option("--replicas", o.replicas, "replica count override");
    cmd->add_option("--format", o.format, "comma-separated output formats (json,csv)");
}

oulevy::ExperimentConfig load_with_overrides(const CommonOpts& o) {
    oulevy::ExperimentConfig cfg = oulevy::load_config_file(o.config_path);
    if (o.seed_set) cfg.run.master_seed = o.seed;
    if (o.replicas > 0) cfg.run.replicas = o.replicas;
    if (!o.format.empty()) {
        cfg.output.formats.clear();
        std::stringstream ss(o.format);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) cfg.output.formats.push_back(item);
    }
    if (!o.out_dir.empty()) cfg.output.directory = o.out_dir;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral Ornstein-Uhlenbeck law-equivalence laboratory"};
    app.require_subcommand(1);

    CommonOpts check_o, sim_o, gir_o, rig_o, rep_o;
    std::string example_id;

    CLI::App* check = app.add_subcommand("check", "evaluate the deterministic criteria");
    add_common(check, check_o, true);
    CLI::App* sim = app.add_subcommand("simulate", "write sample paths and stats");
    add_common(sim, sim_o, true);
    CLI::App* gir = app.add_subcommand("girsanov", "reweighting experiment");
    add_common(gir, gir_o, true);
    CLI::App* rig = app.add_subcommand("rigidity", "pure-jump rigidity experiment");
    add_common(rig, rig_o, true);
    CLI::App* rep = app.add_subcommand("reproduce", "rerun a counterexample configuration");
    rep->add_option("example", example_id,
                    "one of: no-l2 | one-sided | novikov-fails | no-factorisation")
        ->required();
    add_common(rep, rep_o, false);

    CLI11_PARSE(app, argc, argv);

    try {
        oulevy::CommandOutcome outcome;
        std::string out_dir;
        std::string command;
        if (check->parsed()) {
            const auto cfg = load_with_overrides(check_o);
            out_dir = cfg.output.directory;
            command = "check";
            outcome = oulevy::run_check(cfg);
        } else if (sim->parsed()) {
            const auto cfg = load_with_overrides(sim_o);
            out_dir = cfg.output.directory;
            command = "simulate";
            outcome = oulevy::run_simulate(cfg, out_dir);
        } else if (gir->parsed()) {
            const auto cfg = load_with_overrides(gir_o);
            out_dir = cfg.output.directory;
            command = "girsanov";
            outcome = oulevy::run_girsanov(cfg);
        } else if (rig->parsed()) {
            const auto cfg = load_with_overrides(rig_o);
            out_dir = cfg.output.directory;
            command = "rigidity";
            outcome = oulevy::run_rigidity(cfg);
        } else {
            out_dir = rep_o.out_dir.empty() ? "out" : rep_o.out_dir;
            command = "reproduce";
            outcome = oulevy::run_reproduce(example_id);
        }
        oulevy::write_report(outcome.report, out_dir, command);
        std::cout << outcome.summary << "\n";
        return outcome.exit_code;
    } catch (const oulevy::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const oulevy::PreconditionError& e) {
        // structured refusal with the divergence certificate
        nlohmann::json refusal{{"schema", oulevy::kReportSchema},
                               {"error", e.what()},
                               {"witness", oulevy::to_json(e.witness)}};
        std::cerr << "precondition failed: " << e.what() << "\n";
        try {
            oulevy::write_report(refusal, "out", "refusal");
        } catch (...) {
        }
        return 3;
    } catch (const oulevy::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
