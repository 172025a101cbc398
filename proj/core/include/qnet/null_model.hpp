#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qnet/policy.hpp"
#include "qnet/question_net.hpp"

namespace qnet {

/// Parameters of the uncontrolled growth model. Per-question innovation and
/// branching rates are collapsed to their global averages; a custom rate
/// supplier can be layered on step_null if that ever changes.
struct NullParams {
    double rho = 0.2;      // probability a worker proposes a new item
    double gamma = 0.5;    // probability the new item links to one endpoint (else both)
    double answer_p = 0.5; // latent 'yes' rate of synthetic answers

    /// Exploration rate rho * (2 - gamma): slope of expected question growth.
    double eta() const { return rho * (2.0 - gamma); }

    void validate() const;  // throws ConfigError when out of range
};

/// What one model step did.
struct StepEvent {
    QuestionKey answered;
    bool answer = false;
    bool innovated = false;
    ItemId new_item = 0;              // valid when innovated
    std::uint32_t new_questions = 0;  // 0, 1 or 2
};

/// Two items joined by one unanswered question; clock 0.
QuestionNet make_seed_net();

/// One step: a question is selected by the policy (random reproduces the
/// uncontrolled model), one Bernoulli(answer_p) answer is recorded, then
/// with probability rho a fresh item is linked to one endpoint (probability
/// gamma, fair coin between them) or to both.
StepEvent step_null(QuestionNet& net, const NullParams& params, const PolicySpec& policy,
                    SamplerState& state);

/// Extension hook: per-question innovation/branching rates. The supplier
/// is consulted for the question the step just answered.
using RateSupplier = std::function<NullParams(QuestionKey)>;
StepEvent step_null(QuestionNet& net, const RateSupplier& rates, const PolicySpec& policy,
                    SamplerState& state);

struct TrajectoryRow {
    std::uint64_t t = 0;
    std::uint64_t num_questions = 0;  // M(t)
    std::uint64_t num_items = 0;      // |V(t)|
    double answer_density = 0.0;      // <A>
    double mean_entropy = 0.0;        // <S>
    double mean_link_bias = 0.0;      // <d>
};

struct GrowthTrajectory {
    std::vector<TrajectoryRow> rows;          // t = 0, stride, ..., T
    QuestionNet net;                          // final state
    std::vector<std::uint64_t> entry_times;   // entry_times[i] = clock when item i entered
};

/// Runs `steps` model steps from the seed net. Deterministic given seed.
/// Rows are recorded at t = 0, at multiples of sample_every, and at the end.
GrowthTrajectory run_null(const NullParams& params, std::uint64_t steps,
                          const PolicySpec& policy, std::uint64_t seed,
                          std::uint64_t sample_every = 1);

/// Closed-form predictions for the uncontrolled model.
class TheoryCurves {
public:
    explicit TheoryCurves(const NullParams& params)
        : rho_(params.rho), gamma_(params.gamma), eta_(params.eta()) {}

    double eta() const { return eta_; }

    /// Expected question count: eta * t + 1.
    double predicted_m(double t) const { return eta_ * t + 1.0; }

    /// Expected answers per question t / (eta t + 1); tends to 1/eta.
    double predicted_answer_density(double t) const { return t / (eta_ * t + 1.0); }

    /// Expected degree at time t of an item that entered at t_entry:
    /// (2 - gamma) * sqrt((1 + eta t) / (1 + eta t_entry)); 0 before entry.
    double predicted_degree(double t, double t_entry) const;

    /// Long-time degree distribution 2 (eta/rho)^2 / k^3.
    /// Throws DomainError when eta = 0 (the net does not grow).
    double predicted_degree_pdf(double k) const;

private:
    double rho_;
    double gamma_;
    double eta_;
};

inline TheoryCurves theory_curves(const NullParams& params) { return TheoryCurves(params); }

}  // namespace qnet
