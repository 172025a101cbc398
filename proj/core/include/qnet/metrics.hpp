#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qnet/question_net.hpp"

namespace qnet {

/// One time-series row of the five evaluation metrics.
struct MetricsSnapshot {
    std::uint64_t t = 0;
    double f_nodes = 0.0;         // |V(t)| / V_total
    double f_edges = 0.0;         // |E(t)| / E_total
    double mean_entropy = 0.0;    // <S>, bits; in [0,1] for binary questions
    double mean_link_bias = 0.0;  // <d>, in [0, 1/2]
    double answer_density = 0.0;  // <A> = answers per visible question
};

/// V(inf), E(inf) for the fraction metrics. In replay mode these are the
/// underlying graph totals; in null-model mode the end-of-run totals.
struct Denominators {
    std::uint64_t total_items = 0;
    std::uint64_t total_questions = 0;
};

/// Shannon entropy (bits) of the smoothed answer proportions of one tally.
/// An empty tally gives 1 (maximal uncertainty).
double tally_entropy(const AnswerTally& tally);

/// Computes all five metrics over the currently visible net.
/// Throws EmptyNetError when the net has no questions.
MetricsSnapshot snapshot(const QuestionNet& net, Denominators denoms);

/// Exact histogram of per-question answer totals (N -> question count).
std::map<std::uint64_t, std::uint64_t> answers_histogram(const QuestionNet& net);

struct DegreeRow {
    std::uint32_t k = 0;
    std::uint64_t count = 0;
    double ccdf = 0.0;  // fraction of items with degree >= k
};

/// Empirical degree distribution, one row per observed degree, ascending.
/// Throws EmptyNetError when the net has no items.
std::vector<DegreeRow> degree_distribution(const QuestionNet& net);

/// Builds distribution rows from pooled degree counts (e.g. across replicates).
std::vector<DegreeRow> degree_rows_from_counts(
    const std::map<std::uint32_t, std::uint64_t>& counts);

/// Least-squares slope of log(ccdf) vs log(k) over rows with k in
/// [k_min, k_max]. Throws InsufficientSupportError with fewer than three
/// distinct degrees in the window.
double fit_tail_slope(std::span<const DegreeRow> rows, double k_min, double k_max);

}  // namespace qnet
