#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "qnet/question_net.hpp"

namespace qnet {

enum class PolicyKind {
    random,          // uniform over current questions
    looping,         // round-robin in creation order
    binomial,        // uniform over questions not yet resolved by an exact test
    thompson_phi,    // Thompson sampling on link bias
    thompson_phi_n,  // Thompson sampling on answer-count-weighted link bias
};

/// Which selection policy drives assignment, plus the binomial arm's
/// thresholds (ignored by the other kinds).
struct PolicySpec {
    PolicyKind kind = PolicyKind::random;
    double p_min = 0.2;             // binomial: keep questions with p-value > p_min
    std::uint32_t max_answers = 10; // binomial: and fewer than this many answers

    /// Accepts `random`, `looping`, `binomial:p_min=0.2,max_answers=10`,
    /// `thompson-phi`, `thompson-phi-n`. Throws ConfigError.
    static PolicySpec parse(std::string_view text);

    std::string to_string() const;
    std::string name() const;  // kind only, e.g. "thompson-phi-n"

    void validate() const;  // p_min in (0,1), max_answers >= 1
};

/// Mutable policy state: the RNG behind every stochastic choice of a run
/// and the looping policy's cursor into the creation order.
struct SamplerState {
    std::mt19937_64 rng;
    std::size_t loop_cursor = 0;

    explicit SamplerState(std::uint64_t seed = 0) : rng(seed) {}
};

/// Link bias d = |1/2 - p_yes| of the smoothed proportion.
/// 0 = evenly split crowd, 1/2 = unanimous.
double link_bias(const AnswerTally& tally);

/// Density over [0, 1/2] of d = |1/2 - p| when p ~ Beta(alpha, beta):
///
///   [(1-2d)^(a-1) (1+2d)^(b-1) + (1+2d)^(a-1) (1-2d)^(b-1)]
///   -------------------------------------------------------
///                  B(a, b) 2^(a+b-2)
///
/// Integrates to 1. Throws DomainError for d outside [0, 1/2] or
/// non-positive shape parameters.
double phi_density(double d, double alpha, double beta);

/// Draws d distributed as phi_density(. | alpha, beta), realized as
/// |1/2 - p| with p ~ Beta(alpha, beta).
double sample_link_bias(double alpha, double beta, std::mt19937_64& rng);

/// Exact two-sided binomial test of k successes in n trials against
/// p = 1/2: the total probability of outcomes no more likely than k.
/// n = 0 returns 1 (no evidence).
double binom_test_two_sided(std::uint64_t k, std::uint64_t n);

/// Picks the next question to assign. Mutates only `state`.
/// Throws EmptyNetError when the net has no questions.
QuestionKey select(const QuestionNet& net, const PolicySpec& spec, SamplerState& state);

}  // namespace qnet
