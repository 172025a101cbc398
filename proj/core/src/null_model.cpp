#include "qnet/null_model.hpp"

#include <cmath>

#include "qnet/metrics.hpp"

namespace qnet {

void NullParams::validate() const {
    if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
    if (!(answer_p >= 0.0 && answer_p <= 1.0)) throw ConfigError("answer_p must lie in [0, 1]");
}

QuestionNet make_seed_net() {
    QuestionNet net;
    ItemId a = net.add_item();
    ItemId b = net.add_item();
    net.add_question(a, b);
    return net;
}

StepEvent step_null(QuestionNet& net, const NullParams& params, const PolicySpec& policy,
                    SamplerState& state) {
    return step_null(
        net, [&params](QuestionKey) { return params; }, policy, state);
}

StepEvent step_null(QuestionNet& net, const RateSupplier& rates, const PolicySpec& policy,
                    SamplerState& state) {
    StepEvent ev;
    ev.answered = select(net, policy, state);
    const NullParams params = rates(ev.answered);
    ev.answer = std::bernoulli_distribution(params.answer_p)(state.rng);
    net.record_answer(ev.answered, ev.answer);

    if (params.rho > 0.0 && std::bernoulli_distribution(params.rho)(state.rng)) {
        ev.innovated = true;
        ev.new_item = net.add_item();
        if (std::bernoulli_distribution(params.gamma)(state.rng)) {
            const ItemId anchor =
                std::bernoulli_distribution(0.5)(state.rng) ? ev.answered.a : ev.answered.b;
            net.add_question(anchor, ev.new_item);
            ev.new_questions = 1;
        } else {
            net.add_question(ev.answered.a, ev.new_item);
            net.add_question(ev.answered.b, ev.new_item);
            ev.new_questions = 2;
        }
    }
    return ev;
}

namespace {

TrajectoryRow make_row(const QuestionNet& net) {
    TrajectoryRow row;
    row.t = net.clock();
    row.num_questions = net.num_questions();
    row.num_items = net.num_items();
    const double m = static_cast<double>(net.num_questions());
    row.answer_density = static_cast<double>(net.clock()) / m;
    double sum_entropy = 0.0;
    double sum_bias = 0.0;
    for (const Question& q : net.questions()) {
        sum_entropy += tally_entropy(q.tally);
        sum_bias += link_bias(q.tally);
    }
    row.mean_entropy = sum_entropy / m;
    row.mean_link_bias = sum_bias / m;
    return row;
}

}  // namespace

GrowthTrajectory run_null(const NullParams& params, std::uint64_t steps,
                          const PolicySpec& policy, std::uint64_t seed,
                          std::uint64_t sample_every) {
    params.validate();
    if (steps < 1) throw ConfigError("run_null: steps must be >= 1");
    if (sample_every < 1) throw ConfigError("run_null: sample_every must be >= 1");

    GrowthTrajectory out;
    out.net = make_seed_net();
    SamplerState state(seed);
    out.rows.push_back(make_row(out.net));
    for (std::uint64_t t = 1; t <= steps; ++t) {
        step_null(out.net, params, policy, state);
        if (t % sample_every == 0 || t == steps) out.rows.push_back(make_row(out.net));
    }
    out.entry_times.reserve(out.net.num_items());
    for (ItemId id : out.net.items()) out.entry_times.push_back(out.net.item_entry_time(id));
    return out;
}

double TheoryCurves::predicted_degree(double t, double t_entry) const {
    if (t < t_entry) return 0.0;
    // eta / rho = 2 - gamma, kept in that form so rho = 0 stays finite.
    return (2.0 - gamma_) * std::sqrt((1.0 + eta_ * t) / (1.0 + eta_ * t_entry));
}

double TheoryCurves::predicted_degree_pdf(double k) const {
    if (eta_ <= 0.0)
        throw DomainError("predicted_degree_pdf: undefined for eta = 0 (no growth)");
    const double ratio = 2.0 - gamma_;  // eta / rho
    return 2.0 * ratio * ratio / (k * k * k);
}

}  // namespace qnet
