#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qnet/graph_gen.hpp"
#include "qnet/metrics.hpp"
#include "qnet/policy.hpp"
#include "qnet/question_net.hpp"

namespace qnet {

/// Per-edge probability that a simulated worker answers 'yes'.
struct AnswerOracle {
    std::unordered_map<QuestionKey, double, QuestionKeyHash> p_yes;

    double at(QuestionKey key) const;  // throws UnknownQuestionError
};

/// One aggregate dataset row: a question and its observed answer counts.
struct DatasetEntry {
    std::string id;
    std::uint32_t n_yes = 0;
    std::uint32_t n_total = 0;
};

/// Tab-separated `question_id  n_yes  n_total` lines, `#` comments allowed.
std::vector<DatasetEntry> read_dataset(std::istream& in);
std::vector<DatasetEntry> read_dataset_file(const std::string& path);  // + IoError

/// Maps dataset questions onto graph edges by a seeded uniform bijection;
/// each edge answers 'yes' with its question's observed proportion.
/// Throws SizeMismatchError when question and edge counts differ.
AnswerOracle assign_oracle(std::span<const DatasetEntry> questions, const UnderlyingGraph& graph,
                           std::mt19937_64& rng);

/// read_dataset_file + assign_oracle.
AnswerOracle load_oracle(const std::string& path, const UnderlyingGraph& graph,
                         std::mt19937_64& rng);

struct ReplayConfig {
    double rho = 0.2;                   // probability of revealing after an answer
    std::uint64_t steps = 6000;         // answers per run
    PolicySpec policy;
    std::uint64_t seed = 0;
    std::uint64_t snapshot_every = 50;
    std::uint32_t max_undo_retries = 100;

    void validate() const;
};

struct ReplayStepEvent {
    QuestionKey answered;
    bool answer = false;
    bool revealed = false;
    ItemId new_item = 0;               // valid when revealed
    std::uint32_t new_questions = 0;   // 1 or 2 when revealed
    std::uint32_t undone_iterations = 0;
    bool degraded = false;             // retries exhausted; answer-only step
};

/// Reveals the hidden graph question-by-question under a policy. A step
/// answers one visible question (i,j); with probability rho a neighbor w
/// holding a still-hidden edge to i or j is drawn (pooled over both
/// endpoints) and its hidden edge(s) to the pair become visible questions,
/// bringing w in as a new item when it was not visible yet. An innovation
/// with no such neighbor undoes the whole iteration (answer included,
/// clock untouched) and retries with a fresh selection; after
/// max_undo_retries the step completes answer-only and is counted as
/// degraded rather than failing.
class ReplayEngine {
public:
    ReplayEngine(const UnderlyingGraph& graph, const AnswerOracle& oracle, ReplayConfig config,
                 QuestionKey seed_question);

    ReplayStepEvent step(SamplerState& state);

    const QuestionNet& net() const { return net_; }
    const UnderlyingGraph& graph() const { return *graph_; }
    std::uint64_t degraded_steps() const { return degraded_steps_; }
    std::uint64_t undone_iterations() const { return undone_iterations_; }

private:
    std::uint32_t reveal(ItemId w, QuestionKey cause);
    std::vector<ItemId> hidden_edge_neighbors(QuestionKey key) const;

    const UnderlyingGraph* graph_;
    const AnswerOracle* oracle_;
    ReplayConfig config_;
    QuestionNet net_;
    std::uint64_t degraded_steps_ = 0;
    std::uint64_t undone_iterations_ = 0;
};

/// One arm's output: metric rows at t = 0, s, 2s, ..., T plus the final
/// answers-per-question histogram.
struct ArmResult {
    PolicySpec policy;
    std::vector<MetricsSnapshot> series;
    std::map<std::uint64_t, std::uint64_t> final_histogram;
    std::uint64_t degraded_steps = 0;
};

/// Runs every arm over the same graph, oracle and seed question. The seed
/// question is a uniformly random hidden edge; arm RNG streams are derived
/// from base_seed.
std::vector<ArmResult> run_arms(const UnderlyingGraph& graph, const AnswerOracle& oracle,
                                std::span<const PolicySpec> arms, const ReplayConfig& base_config,
                                std::uint64_t base_seed);

}  // namespace qnet
