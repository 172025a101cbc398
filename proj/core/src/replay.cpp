#include "qnet/replay.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qnet/seeding.hpp"

namespace qnet {

double AnswerOracle::at(QuestionKey key) const {
    auto it = p_yes.find(key);
    if (it == p_yes.end())
        throw UnknownQuestionError("oracle: no probability for (" + std::to_string(key.a) + "," +
                                   std::to_string(key.b) + ")");
    return it->second;
}

std::vector<DatasetEntry> read_dataset(std::istream& in) {
    std::vector<DatasetEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream iss(line);
        DatasetEntry e;
        long long n_yes = -1, n_total = -1;
        if (!(iss >> e.id >> n_yes >> n_total) || n_yes < 0 || n_total < 0 || n_yes > n_total)
            throw ParseError("dataset line " + std::to_string(line_no) + ": " + line);
        e.n_yes = static_cast<std::uint32_t>(n_yes);
        e.n_total = static_cast<std::uint32_t>(n_total);
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<DatasetEntry> read_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset: " + path);
    return read_dataset(in);
}

AnswerOracle assign_oracle(std::span<const DatasetEntry> questions, const UnderlyingGraph& graph,
                           std::mt19937_64& rng) {
    if (questions.size() != graph.num_edges())
        throw SizeMismatchError("dataset has " + std::to_string(questions.size()) +
                                " questions but graph has " +
                                std::to_string(graph.num_edges()) + " edges");
    std::vector<std::uint32_t> order(questions.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    AnswerOracle oracle;
    oracle.p_yes.reserve(questions.size() * 2);
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const DatasetEntry& q = questions[order[e]];
        const double p = q.n_total == 0
                             ? 0.5
                             : static_cast<double>(q.n_yes) / static_cast<double>(q.n_total);
        oracle.p_yes.emplace(QuestionKey(graph.edges[e].first, graph.edges[e].second), p);
    }
    return oracle;
}

AnswerOracle load_oracle(const std::string& path, const UnderlyingGraph& graph,
                         std::mt19937_64& rng) {
    return assign_oracle(read_dataset_file(path), graph, rng);
}

void ReplayConfig::validate() const {
    if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
    if (steps < 1) throw ConfigError("steps must be >= 1");
    if (snapshot_every < 1) throw ConfigError("snapshot_every must be >= 1");
    policy.validate();
}

ReplayEngine::ReplayEngine(const UnderlyingGraph& graph, const AnswerOracle& oracle,
                           ReplayConfig config, QuestionKey seed_question)
    : graph_(&graph), oracle_(&oracle), config_(std::move(config)) {
    config_.validate();
    if (!graph.has_edge(seed_question.a, seed_question.b))
        throw UnknownQuestionError("seed question is not an edge of the underlying graph");
    net_.ensure_item(seed_question.a);
    net_.ensure_item(seed_question.b);
    net_.add_question(seed_question.a, seed_question.b);
}

std::vector<ItemId> ReplayEngine::hidden_edge_neighbors(QuestionKey key) const {
    // candidates pooled over both endpoints; a node holding hidden edges to
    // both appears once
    std::vector<ItemId> out;
    for (std::uint32_t w : graph_->adjacency[key.a])
        if (!net_.has_question(QuestionKey(w, key.a))) out.push_back(w);
    for (std::uint32_t w : graph_->adjacency[key.b])
        if (!net_.has_question(QuestionKey(w, key.b)) &&
            std::find(out.begin(), out.end(), w) == out.end())
            out.push_back(w);
    return out;
}

std::uint32_t ReplayEngine::reveal(ItemId w, QuestionKey cause) {
    net_.ensure_item(w);
    std::uint32_t added = 0;
    if (graph_->has_edge(w, cause.a) && !net_.has_question(QuestionKey(w, cause.a))) {
        net_.add_question(w, cause.a);
        ++added;
    }
    if (graph_->has_edge(w, cause.b) && !net_.has_question(QuestionKey(w, cause.b))) {
        net_.add_question(w, cause.b);
        ++added;
    }
    return added;
}

ReplayStepEvent ReplayEngine::step(SamplerState& state) {
    ReplayStepEvent ev;
    for (std::uint32_t attempt = 0; attempt <= config_.max_undo_retries; ++attempt) {
        const QuestionKey key = select(net_, config_.policy, state);
        const bool yes = std::bernoulli_distribution(oracle_->at(key))(state.rng);
        const bool innovate =
            config_.rho > 0.0 && std::bernoulli_distribution(config_.rho)(state.rng);
        if (!innovate) {
            net_.record_answer(key, yes);
            ev.answered = key;
            ev.answer = yes;
            return ev;
        }
        const std::vector<ItemId> pool = hidden_edge_neighbors(key);
        if (!pool.empty()) {
            net_.record_answer(key, yes);
            const ItemId w =
                pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(state.rng)];
            ev.answered = key;
            ev.answer = yes;
            ev.revealed = true;
            ev.new_item = w;
            ev.new_questions = reveal(w, key);
            return ev;
        }
        // nothing left to reveal around this pair: the iteration is undone
        // (answer discarded, clock unchanged), then retried afresh
        ++ev.undone_iterations;
        ++undone_iterations_;
    }
    const QuestionKey key = select(net_, config_.policy, state);
    const bool yes = std::bernoulli_distribution(oracle_->at(key))(state.rng);
    net_.record_answer(key, yes);
    ev.answered = key;
    ev.answer = yes;
    ev.degraded = true;
    ++degraded_steps_;
    return ev;
}

std::vector<ArmResult> run_arms(const UnderlyingGraph& graph, const AnswerOracle& oracle,
                                std::span<const PolicySpec> arms, const ReplayConfig& base_config,
                                std::uint64_t base_seed) {
    base_config.validate();
    if (graph.num_edges() == 0) throw EmptyNetError("run_arms: graph has no edges");

    // all arms start from the same randomly drawn hidden edge
    std::mt19937_64 seed_rng(derive_seed(base_seed, 0));
    const auto& seed_edge =
        graph.edges[std::uniform_int_distribution<std::size_t>(0, graph.num_edges() - 1)(seed_rng)];
    const QuestionKey seed_question(seed_edge.first, seed_edge.second);

    const Denominators denoms{graph.n, graph.num_edges()};
    std::vector<ArmResult> results;
    results.reserve(arms.size());
    for (std::size_t arm = 0; arm < arms.size(); ++arm) {
        ReplayConfig config = base_config;
        config.policy = arms[arm];
        ReplayEngine engine(graph, oracle, config, seed_question);
        SamplerState state(derive_seed(base_seed, arm + 1));

        ArmResult result;
        result.policy = arms[arm];
        result.series.push_back(snapshot(engine.net(), denoms));
        for (std::uint64_t t = 1; t <= config.steps; ++t) {
            engine.step(state);
            if (t % config.snapshot_every == 0 || t == config.steps)
                result.series.push_back(snapshot(engine.net(), denoms));
        }
        result.final_histogram = answers_histogram(engine.net());
        result.degraded_steps = engine.degraded_steps();
        results.push_back(std::move(result));
    }
    return results;
}

}  // namespace qnet
