#include "qnet/commands.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "qnet/parallel.hpp"
#include "qnet/seeding.hpp"

namespace qnet {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

fs::path prepare_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
    return dir;
}

void write_degree_csv(const fs::path& path,
                      const std::map<std::uint32_t, std::uint64_t>& counts) {
    auto out = open_out(path);
    out << "k,count,ccdf\n";
    for (const DegreeRow& row : degree_rows_from_counts(counts))
        out << row.k << ',' << row.count << ',' << fmt(row.ccdf) << '\n';
}

}  // namespace

void RunOptions::validate() const {
    if (replicates < 1) throw ConfigError("replicates must be >= 1");
    if (snapshot_every < 1) throw ConfigError("snapshot-every must be >= 1");
}

// ---------------------------------------------------------------- null-sim

NullSimResult run_null_sim(const NullSimOptions& options) {
    options.run.validate();
    options.params.validate();
    options.policy.validate();
    if (options.steps < 1) throw ConfigError("steps must be >= 1");

    struct RepOut {
        std::vector<TrajectoryRow> rows;
        std::map<std::uint32_t, std::uint64_t> degree_counts;
    };
    auto per_rep = parallel_map(options.run.replicates, options.run.jobs, [&](std::uint32_t i) {
        GrowthTrajectory traj = run_null(options.params, options.steps, options.policy,
                                         derive_seed(options.run.seed, i),
                                         options.run.snapshot_every);
        RepOut out;
        out.rows = std::move(traj.rows);
        for (ItemId id : traj.net.items()) ++out.degree_counts[traj.net.degree(id)];
        return out;
    });

    NullSimResult result;
    result.replicate_rows.reserve(per_rep.size());
    const std::size_t n_rows = per_rep.front().rows.size();
    result.mean_rows.assign(n_rows, MeanTrajectoryRow{});
    for (auto& rep : per_rep) {
        for (std::size_t r = 0; r < n_rows; ++r) {
            const TrajectoryRow& row = rep.rows[r];
            MeanTrajectoryRow& mean = result.mean_rows[r];
            mean.t = row.t;
            mean.num_questions += static_cast<double>(row.num_questions);
            mean.num_items += static_cast<double>(row.num_items);
            mean.answer_density += row.answer_density;
            mean.mean_entropy += row.mean_entropy;
            mean.mean_link_bias += row.mean_link_bias;
        }
        for (const auto& [k, c] : rep.degree_counts) result.pooled_degree_counts[k] += c;
        result.replicate_rows.push_back(std::move(rep.rows));
    }
    const double n = static_cast<double>(per_rep.size());
    for (MeanTrajectoryRow& mean : result.mean_rows) {
        mean.num_questions /= n;
        mean.num_items /= n;
        mean.answer_density /= n;
        mean.mean_entropy /= n;
        mean.mean_link_bias /= n;
    }
    return result;
}

int cmd_null_sim(const NullSimOptions& options) {
    const NullSimResult result = run_null_sim(options);
    const fs::path out_dir = prepare_out_dir(options.run.out_dir);

    const char* header = "t,M,V,A_mean,S_mean,d_mean\n";
    fs::create_directories(out_dir / "replicates");
    for (std::size_t i = 0; i < result.replicate_rows.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "rep_%05zu.csv", i);
        auto out = open_out(out_dir / "replicates" / name);
        out << header;
        for (const TrajectoryRow& r : result.replicate_rows[i])
            out << r.t << ',' << r.num_questions << ',' << r.num_items << ','
                << fmt(r.answer_density) << ',' << fmt(r.mean_entropy) << ','
                << fmt(r.mean_link_bias) << '\n';
    }

    {
        auto out = open_out(out_dir / "mean.csv");
        out << header;
        for (const MeanTrajectoryRow& r : result.mean_rows)
            out << r.t << ',' << fmt(r.num_questions) << ',' << fmt(r.num_items) << ','
                << fmt(r.answer_density) << ',' << fmt(r.mean_entropy) << ','
                << fmt(r.mean_link_bias) << '\n';
    }

    {
        const TheoryCurves theory(options.params);
        auto out = open_out(out_dir / "theory.csv");
        out << "t,M_pred,A_pred\n";
        for (const MeanTrajectoryRow& r : result.mean_rows) {
            const double t = static_cast<double>(r.t);
            out << r.t << ',' << fmt(theory.predicted_m(t)) << ','
                << fmt(theory.predicted_answer_density(t)) << '\n';
        }
    }

    write_degree_csv(out_dir / "degree.csv", result.pooled_degree_counts);

    const MeanTrajectoryRow& last = result.mean_rows.back();
    const TheoryCurves theory(options.params);
    std::cout << "null-sim: " << options.run.replicates << " replicates, T=" << options.steps
              << ", policy=" << options.policy.to_string() << "\n"
              << "  mean M(T) = " << fmt(last.num_questions)
              << "  (predicted " << fmt(theory.predicted_m(static_cast<double>(last.t))) << ")\n"
              << "  mean <A>  = " << fmt(last.answer_density) << "  (predicted "
              << fmt(theory.predicted_answer_density(static_cast<double>(last.t))) << ")\n"
              << "  wrote " << options.run.out_dir << "\n";
    return 0;
}

// ------------------------------------------------------------ theory-check

bool TheoryReport::passed() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const TheoryCheck& c) { return c.verdict == "fail"; });
}

namespace {

struct LongRunStats {
    double final_m = 0;
    double final_density = 0;
    // cohort ratio sums: per cohort, sum of k_i(T) / predicted and count
    std::array<double, 3> ratio_sum{0, 0, 0};
    std::array<std::uint64_t, 3> ratio_count{0, 0, 0};
    std::map<std::uint32_t, std::uint64_t> degree_counts;
};

constexpr std::array<std::uint64_t, 3> kCohorts{10, 100, 1000};

LongRunStats long_run(const NullParams& params, std::uint64_t steps, std::uint64_t seed) {
    GrowthTrajectory traj = run_null(params, steps, PolicySpec{}, seed, steps);
    LongRunStats stats;
    stats.final_m = static_cast<double>(traj.net.num_questions());
    stats.final_density =
        static_cast<double>(traj.net.clock()) / static_cast<double>(traj.net.num_questions());
    const TheoryCurves theory(params);
    const double t_final = static_cast<double>(steps);
    for (ItemId id : traj.net.items()) {
        const std::uint64_t entry = traj.net.item_entry_time(id);
        ++stats.degree_counts[traj.net.degree(id)];
        for (std::size_t c = 0; c < kCohorts.size(); ++c) {
            // window [c, 1.5c): wide enough for samples, each item still
            // normalized by the prediction at its own entry time
            if (entry >= kCohorts[c] && 2 * entry < 3 * kCohorts[c]) {
                const double predicted =
                    theory.predicted_degree(t_final, static_cast<double>(entry));
                stats.ratio_sum[c] += static_cast<double>(traj.net.degree(id)) / predicted;
                ++stats.ratio_count[c];
            }
        }
    }
    return stats;
}

}  // namespace

TheoryReport run_theory_check(const TheoryCheckOptions& options) {
    if (options.rho.has_value() != options.gamma.has_value())
        throw ConfigError("theory-check: give both --rho and --gamma or neither");

    std::vector<NullParams> growth_sets;
    std::vector<NullParams> slope_sets;
    NullParams long_set;  // density + collapse + one slope point
    if (options.rho) {
        NullParams p;
        p.rho = *options.rho;
        p.gamma = *options.gamma;
        p.validate();
        growth_sets = {p};
        slope_sets = {p};
        long_set = p;
    } else {
        growth_sets = {NullParams{0.2, 0.5, 0.5}, NullParams{0.5, 1.0, 0.5},
                       NullParams{0.8, 0.0, 0.5}};
        slope_sets = {NullParams{0.5, 1.0, 0.5}, NullParams{0.2, 0.5, 0.5}};
        long_set = NullParams{0.2, 0.5, 0.5};
    }
    const std::uint32_t growth_reps =
        options.run.replicates > 0 ? options.run.replicates : 500;
    const std::uint32_t density_reps =
        options.run.replicates > 0 ? options.run.replicates : 500;
    const std::uint32_t collapse_reps =
        options.run.replicates > 0 ? options.run.replicates : 200;
    const std::uint32_t slope_reps = options.run.replicates > 0 ? options.run.replicates : 100;

    TheoryReport report;

    // growth law: replicate-mean M(T) vs eta T + 1
    for (const NullParams& params : growth_sets) {
        auto finals = parallel_map(growth_reps, options.run.jobs, [&](std::uint32_t i) {
            GrowthTrajectory traj = run_null(params, options.growth_steps, PolicySpec{},
                                             derive_seed(options.run.seed, i),
                                             options.growth_steps);
            return static_cast<double>(traj.net.num_questions());
        });
        double mean_m = 0;
        for (double m : finals) mean_m += m;
        mean_m /= static_cast<double>(finals.size());
        const double expected =
            TheoryCurves(params).predicted_m(static_cast<double>(options.growth_steps));
        TheoryCheck check{"growth_law", params.rho, params.gamma, mean_m, expected,
                          options.growth_tol, "", ""};
        const double rel = std::abs(mean_m - expected) / expected;
        check.verdict = rel <= options.growth_tol ? "pass" : "fail";
        check.note = "relative error " + fmt(rel);
        report.checks.push_back(std::move(check));
    }

    // the three long-horizon checks share one batch of runs per parameter set
    for (const NullParams& params : slope_sets) {
        const bool is_primary = params.rho == long_set.rho && params.gamma == long_set.gamma;
        const std::uint32_t long_reps =
            is_primary ? std::max({density_reps, collapse_reps, slope_reps}) : slope_reps;
        auto stats = parallel_map(long_reps, options.run.jobs, [&](std::uint32_t i) {
            return long_run(params, options.long_steps, derive_seed(options.run.seed, i));
        });

        if (is_primary) {
            // answer density at T
            double mean_density = 0;
            for (std::uint32_t i = 0; i < density_reps; ++i) mean_density += stats[i].final_density;
            mean_density /= static_cast<double>(density_reps);
            const double expected = TheoryCurves(params).predicted_answer_density(
                static_cast<double>(options.long_steps));
            TheoryCheck check{"answer_density", params.rho, params.gamma, mean_density, expected,
                              options.density_tol, "", ""};
            const double rel = std::abs(mean_density - expected) / expected;
            check.verdict = rel <= options.density_tol ? "pass" : "fail";
            check.note = "relative error " + fmt(rel);
            report.checks.push_back(std::move(check));

            // cohort degree collapse
            for (std::size_t c = 0; c < kCohorts.size(); ++c) {
                TheoryCheck check2{"degree_collapse_t" + std::to_string(kCohorts[c]), params.rho,
                                   params.gamma, 0.0, 1.0, 0.0, "", ""};
                check2.tolerance = options.collapse_hi - 1.0;
                double sum = 0;
                std::uint64_t count = 0;
                for (std::uint32_t i = 0; i < collapse_reps; ++i) {
                    sum += stats[i].ratio_sum[c];
                    count += stats[i].ratio_count[c];
                }
                if (params.rho == 0.0 || count == 0) {
                    check2.verdict = "skipped";
                    check2.note = params.rho == 0.0 ? "rho = 0: no items enter the net"
                                                    : "no items in cohort window";
                } else {
                    check2.observed = sum / static_cast<double>(count);
                    check2.verdict = (check2.observed >= options.collapse_lo &&
                                      check2.observed <= options.collapse_hi)
                                         ? "pass"
                                         : "fail";
                    check2.note = "mean k/k_pred over " + std::to_string(count) + " items";
                }
                report.checks.push_back(std::move(check2));
            }
        }

        // degree-distribution tail slope on the pooled CCDF
        TheoryCheck check{"ccdf_slope", params.rho, params.gamma, 0.0, options.slope_target,
                          options.slope_tol, "", ""};
        if (params.eta() <= 0.0) {
            check.verdict = "skipped";
            check.note = "eta = 0: degree distribution undefined";
        } else {
            std::map<std::uint32_t, std::uint64_t> pooled;
            for (std::uint32_t i = 0; i < slope_reps; ++i)
                for (const auto& [k, cnt] : stats[i].degree_counts) pooled[k] += cnt;
            const auto rows = degree_rows_from_counts(pooled);
            try {
                check.observed = fit_tail_slope(rows, options.fit_k_min, options.fit_k_max);
                check.verdict =
                    std::abs(check.observed - options.slope_target) <= options.slope_tol
                        ? "pass"
                        : "fail";
                check.note = "fit window k in [" + fmt(options.fit_k_min) + ", " +
                             fmt(options.fit_k_max) + "]";
            } catch (const InsufficientSupportError& e) {
                check.verdict = "skipped";
                check.note = e.what();
            }
        }
        report.checks.push_back(std::move(check));
    }
    return report;
}

int cmd_theory_check(const TheoryCheckOptions& options) {
    const TheoryReport report = run_theory_check(options);

    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const TheoryCheck& c : report.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"rho", c.rho},
                               {"gamma", c.gamma},
                               {"observed", c.observed},
                               {"expected", c.expected},
                               {"tolerance", c.tolerance},
                               {"verdict", c.verdict},
                               {"note", c.note}});
        std::printf("[%s] %s (rho=%g, gamma=%g): observed=%s expected=%s tol=%s  %s\n",
                    c.verdict == "pass"      ? "PASS"
                    : c.verdict == "skipped" ? "SKIP"
                                             : "FAIL",
                    c.name.c_str(), c.rho, c.gamma, fmt(c.observed).c_str(),
                    fmt(c.expected).c_str(), fmt(c.tolerance).c_str(), c.note.c_str());
    }
    j["passed"] = report.passed();

    const fs::path out_dir = prepare_out_dir(options.run.out_dir);
    auto out = open_out(out_dir / "report.json");
    out << j.dump(2) << '\n';

    return report.passed() ? 0 : 1;
}

// ------------------------------------------------------------------- exp1

std::vector<PolicySpec> exp1_arms(double binom_p_min, std::uint32_t binom_max_answers) {
    PolicySpec binomial;
    binomial.kind = PolicyKind::binomial;
    binomial.p_min = binom_p_min;
    binomial.max_answers = binom_max_answers;
    return {PolicySpec{PolicyKind::random}, PolicySpec{PolicyKind::looping}, binomial,
            PolicySpec{PolicyKind::thompson_phi}, PolicySpec{PolicyKind::thompson_phi_n}};
}

Exp1Summary run_exp1(const Exp1Options& options) {
    options.run.validate();
    if (options.graph_family != "er" && options.graph_family != "ba")
        throw ConfigError("graph family must be 'er' or 'ba'");
    if (!(options.rho >= 0.0 && options.rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
    if (options.steps < 1) throw ConfigError("steps must be >= 1");

    const std::vector<DatasetEntry> dataset = read_dataset_file(options.dataset_path);
    const std::vector<PolicySpec> arms =
        exp1_arms(options.binom_p_min, options.binom_max_answers);

    auto per_rep = parallel_map(options.run.replicates, options.run.jobs, [&](std::uint32_t i) {
        const std::uint64_t rep_seed = derive_seed(options.run.seed, i);
        std::mt19937_64 graph_rng(derive_seed(rep_seed, 1));
        const UnderlyingGraph graph =
            options.graph_family == "er"
                ? er_gnm_connected(options.nodes, options.edges, graph_rng,
                                   options.er_max_attempts)
                : ba_graph(options.nodes, options.edges, graph_rng);
        std::mt19937_64 oracle_rng(derive_seed(rep_seed, 2));
        const AnswerOracle oracle = assign_oracle(dataset, graph, oracle_rng);

        ReplayConfig config;
        config.rho = options.rho;
        config.steps = options.steps;
        config.snapshot_every = options.run.snapshot_every;
        return run_arms(graph, oracle, arms, config, derive_seed(rep_seed, 3));
    });

    Exp1Summary summary;
    summary.arms.resize(arms.size());
    const std::size_t n_rows = per_rep.front().front().series.size();
    for (std::size_t a = 0; a < arms.size(); ++a) {
        Exp1ArmSummary& acc = summary.arms[a];
        acc.policy = arms[a];
        acc.mean_series.assign(n_rows, MetricsSnapshot{});
        for (const auto& rep : per_rep) {
            const ArmResult& arm = rep[a];
            for (std::size_t r = 0; r < n_rows; ++r) {
                acc.mean_series[r].t = arm.series[r].t;
                acc.mean_series[r].f_nodes += arm.series[r].f_nodes;
                acc.mean_series[r].f_edges += arm.series[r].f_edges;
                acc.mean_series[r].mean_entropy += arm.series[r].mean_entropy;
                acc.mean_series[r].mean_link_bias += arm.series[r].mean_link_bias;
                acc.mean_series[r].answer_density += arm.series[r].answer_density;
            }
            for (const auto& [n, c] : arm.final_histogram) acc.pooled_histogram[n] += c;
            acc.degraded_steps += arm.degraded_steps;
        }
        const double n = static_cast<double>(per_rep.size());
        for (MetricsSnapshot& row : acc.mean_series) {
            row.f_nodes /= n;
            row.f_edges /= n;
            row.mean_entropy /= n;
            row.mean_link_bias /= n;
            row.answer_density /= n;
        }
    }
    return summary;
}

int cmd_exp1(const Exp1Options& options) {
    const Exp1Summary summary = run_exp1(options);
    const fs::path out_dir = prepare_out_dir(options.run.out_dir);

    std::cout << "exp1: graph=" << options.graph_family << " n=" << options.nodes
              << " m=" << options.edges << " rho=" << options.rho << " T=" << options.steps
              << " replicates=" << options.run.replicates << "\n";
    for (const Exp1ArmSummary& arm : summary.arms) {
        std::string name = arm.policy.name();
        std::replace(name.begin(), name.end(), '-', '_');
        {
            auto out = open_out(out_dir / ("arm_" + name + ".csv"));
            out << "t,f_nodes,f_edges,S_mean,d_mean,A_mean\n";
            for (const MetricsSnapshot& row : arm.mean_series)
                out << row.t << ',' << fmt(row.f_nodes) << ',' << fmt(row.f_edges) << ','
                    << fmt(row.mean_entropy) << ',' << fmt(row.mean_link_bias) << ','
                    << fmt(row.answer_density) << '\n';
        }
        {
            auto out = open_out(out_dir / ("hist_" + name + ".csv"));
            out << "n_answers,count\n";
            for (const auto& [n, c] : arm.pooled_histogram) out << n << ',' << c << '\n';
        }
        const MetricsSnapshot& last = arm.mean_series.back();
        std::cout << "  " << arm.policy.to_string() << ": f_edges=" << fmt(last.f_edges)
                  << " f_nodes=" << fmt(last.f_nodes) << " <A>=" << fmt(last.answer_density)
                  << " <d>=" << fmt(last.mean_link_bias) << " <S>=" << fmt(last.mean_entropy);
        if (arm.degraded_steps > 0)
            std::cout << "  (degraded answer-only steps: " << arm.degraded_steps << ")";
        std::cout << "\n";
    }
    std::cout << "  wrote " << options.run.out_dir << "\n";
    return 0;
}

}  // namespace qnet
