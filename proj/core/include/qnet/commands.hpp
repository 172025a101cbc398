#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qnet/null_model.hpp"
#include "qnet/replay.hpp"

namespace qnet {

/// Options shared by every command. Replicate i seeds its generator with
/// derive_seed(seed, i) (see seeding.hpp), so outputs are byte-identical
/// for any job count.
struct RunOptions {
    std::uint64_t seed = 0;
    std::uint32_t replicates = 1;
    std::string out_dir = "out";
    std::uint64_t snapshot_every = 100;
    unsigned jobs = 0;  // 0 = all hardware threads

    void validate() const;
};

// ---------------------------------------------------------------- null-sim

struct NullSimOptions {
    RunOptions run;
    NullParams params;
    std::uint64_t steps = 5000;
    PolicySpec policy;  // random by default
};

struct MeanTrajectoryRow {
    std::uint64_t t = 0;
    double num_questions = 0;
    double num_items = 0;
    double answer_density = 0;
    double mean_entropy = 0;
    double mean_link_bias = 0;
};

struct NullSimResult {
    std::vector<std::vector<TrajectoryRow>> replicate_rows;
    std::vector<MeanTrajectoryRow> mean_rows;
    std::map<std::uint32_t, std::uint64_t> pooled_degree_counts;  // final t, all replicates
};

NullSimResult run_null_sim(const NullSimOptions& options);

/// Writes replicates/rep_*.csv, mean.csv, theory.csv and degree.csv under
/// the output directory. Returns a process exit code.
int cmd_null_sim(const NullSimOptions& options);

// ------------------------------------------------------------ theory-check

struct TheoryCheckOptions {
    RunOptions run;  // seed, jobs, out_dir; replicates 0 = per-check defaults
    std::optional<double> rho;    // set both to check a single parameter point
    std::optional<double> gamma;  // instead of the built-in sweep
    std::uint64_t growth_steps = 5000;
    std::uint64_t long_steps = 10000;  // density, collapse and slope checks
    double growth_tol = 0.03;
    double density_tol = 0.05;
    double collapse_lo = 0.8;
    double collapse_hi = 1.2;
    double slope_target = -2.0;
    double slope_tol = 0.3;
    double fit_k_min = 4.0;
    double fit_k_max = 40.0;
};

struct TheoryCheck {
    std::string name;
    double rho = 0;
    double gamma = 0;
    double observed = 0;
    double expected = 0;
    double tolerance = 0;
    std::string verdict;  // "pass", "fail" or "skipped"
    std::string note;
};

struct TheoryReport {
    std::vector<TheoryCheck> checks;
    bool passed() const;
};

TheoryReport run_theory_check(const TheoryCheckOptions& options);

/// Prints one line per check, writes report.json under the output
/// directory. Exit code 1 when any check fails.
int cmd_theory_check(const TheoryCheckOptions& options);

// ------------------------------------------------------------------- exp1

struct Exp1Options {
    RunOptions run;
    std::string graph_family = "er";  // "er" or "ba"
    std::uint32_t nodes = 400;
    std::uint64_t edges = 800;
    double rho = 0.2;
    std::uint64_t steps = 6000;
    std::string dataset_path;
    double binom_p_min = 0.2;
    std::uint32_t binom_max_answers = 30;
    std::uint64_t er_max_attempts = 1000000;
};

struct Exp1ArmSummary {
    PolicySpec policy;
    std::vector<MetricsSnapshot> mean_series;  // averaged at fixed t across replicates
    std::map<std::uint64_t, std::uint64_t> pooled_histogram;
    std::uint64_t degraded_steps = 0;
};

struct Exp1Summary {
    std::vector<Exp1ArmSummary> arms;  // random, looping, binomial, phi, phi-n
};

/// The five standard arms in order.
std::vector<PolicySpec> exp1_arms(double binom_p_min, std::uint32_t binom_max_answers);

Exp1Summary run_exp1(const Exp1Options& options);

/// Writes arm_<name>.csv and hist_<name>.csv per arm. Returns exit code.
int cmd_exp1(const Exp1Options& options);

}  // namespace qnet
