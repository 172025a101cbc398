// qnet: simulate and benchmark question assignment over growing question
// networks. Three workflows: `null-sim` (uncontrolled growth model),
// `theory-check` (simulation vs closed-form predictions), `exp1`
// (five-arm policy comparison over a hidden graph replayed from an
// aggregate answer dataset).
//
// Exit codes: 0 success, 1 theory-check failure, 2 config/parse error.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qnet/commands.hpp"

namespace {

void add_run_options(CLI::App* cmd, qnet::RunOptions& run) {
    cmd->configurable(true);
    cmd->add_option("--seed", run.seed, "Base seed; replicate i uses a derived sub-seed");
    cmd->add_option("-r,--replicates", run.replicates, "Independent replicates")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", run.out_dir, "Output directory");
    cmd->add_option("--snapshot-every", run.snapshot_every, "Steps between metric rows")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", run.jobs, "Worker threads over replicates (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"growing question network simulator and policy benchmark"};
    app.require_subcommand(1);
    // key=value lines, scoped per command: either `null-sim.rho=0.2` or a
    // `[null-sim]` section header; command-line flags win over the file
    app.set_config("--config", "", "Read options from a key=value file (give before the command)");
    app.get_config_formatter_base()->valueSeparator('=');

    qnet::NullSimOptions null_opts;
    null_opts.run.replicates = 1;
    std::string null_policy = "random";
    CLI::App* null_cmd = app.add_subcommand("null-sim", "Simulate the uncontrolled growth model");
    add_run_options(null_cmd, null_opts.run);
    null_cmd->add_option("--rho", null_opts.params.rho, "Innovation rate")->capture_default_str();
    null_cmd->add_option("--gamma", null_opts.params.gamma, "Single-link branching probability")
        ->capture_default_str();
    null_cmd->add_option("--answer-p", null_opts.params.answer_p, "Latent 'yes' rate")
        ->capture_default_str();
    null_cmd->add_option("-T,--steps", null_opts.steps, "Answers to simulate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    null_cmd->add_option("--policy", null_policy,
                         "random | looping | binomial:p_min=..,max_answers=.. | "
                         "thompson-phi | thompson-phi-n")
        ->capture_default_str();

    qnet::TheoryCheckOptions theory_opts;
    theory_opts.run.replicates = 0;  // 0 = per-check defaults
    double theory_rho = -1.0, theory_gamma = -1.0;
    CLI::App* theory_cmd =
        app.add_subcommand("theory-check", "Compare simulations against the growth theory");
    add_run_options(theory_cmd, theory_opts.run);
    theory_cmd->get_option("--replicates")
        ->check(CLI::NonNegativeNumber)
        ->description("Replicates per check (0 = built-in defaults)");
    theory_cmd->add_option("--rho", theory_rho, "Check a single rho (needs --gamma)");
    theory_cmd->add_option("--gamma", theory_gamma, "Check a single gamma (needs --rho)");
    theory_cmd->add_option("--growth-steps", theory_opts.growth_steps, "T for the growth check")
        ->capture_default_str();
    theory_cmd->add_option("--long-steps", theory_opts.long_steps,
                           "T for density/collapse/slope checks")
        ->capture_default_str();
    theory_cmd->add_option("--tol-growth", theory_opts.growth_tol, "Relative tolerance on M(T)")
        ->capture_default_str();
    theory_cmd->add_option("--tol-density", theory_opts.density_tol, "Relative tolerance on <A>")
        ->capture_default_str();
    theory_cmd->add_option("--collapse-lo", theory_opts.collapse_lo, "Cohort ratio lower bound")
        ->capture_default_str();
    theory_cmd->add_option("--collapse-hi", theory_opts.collapse_hi, "Cohort ratio upper bound")
        ->capture_default_str();
    theory_cmd->add_option("--tol-slope", theory_opts.slope_tol, "Tolerance on the CCDF slope")
        ->capture_default_str();

    qnet::Exp1Options exp1_opts;
    exp1_opts.run.replicates = 100;
    exp1_opts.run.snapshot_every = 50;
    CLI::App* exp1_cmd =
        app.add_subcommand("exp1", "Five-arm policy comparison over a hidden graph");
    add_run_options(exp1_cmd, exp1_opts.run);
    exp1_cmd->add_option("--graph", exp1_opts.graph_family, "Graph family: er | ba")
        ->check(CLI::IsMember({"er", "ba"}))
        ->capture_default_str();
    exp1_cmd->add_option("-n,--nodes", exp1_opts.nodes, "Hidden graph nodes")
        ->capture_default_str();
    exp1_cmd->add_option("-m,--edges", exp1_opts.edges, "Hidden graph edges")
        ->capture_default_str();
    exp1_cmd->add_option("--rho", exp1_opts.rho, "Reveal probability per answer")
        ->capture_default_str();
    exp1_cmd->add_option("-T,--steps", exp1_opts.steps, "Answers per run")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    exp1_cmd->add_option("--data", exp1_opts.dataset_path,
                         "Aggregate answers TSV: question_id  n_yes  n_total")
        ->required();
    exp1_cmd->add_option("--p-min", exp1_opts.binom_p_min, "Binomial arm p-value floor")
        ->capture_default_str();
    exp1_cmd->add_option("--max-answers", exp1_opts.binom_max_answers,
                         "Binomial arm answer cap")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (*null_cmd) {
            null_opts.policy = qnet::PolicySpec::parse(null_policy);
            return qnet::cmd_null_sim(null_opts);
        }
        if (*theory_cmd) {
            if (theory_rho >= 0.0) theory_opts.rho = theory_rho;
            if (theory_gamma >= 0.0) theory_opts.gamma = theory_gamma;
            return qnet::cmd_theory_check(theory_opts);
        }
        if (*exp1_cmd) {
            return qnet::cmd_exp1(exp1_opts);
        }
    } catch (const qnet::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qnet::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const qnet::SizeMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qnet::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
