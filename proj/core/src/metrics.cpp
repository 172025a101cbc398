#include "qnet/metrics.hpp"

#include <cmath>

#include "qnet/policy.hpp"

namespace qnet {

double tally_entropy(const AnswerTally& tally) {
    const double p1 = tally.p_yes();  // in (0,1), so both logs are finite
    const double p0 = 1.0 - p1;
    return -(p1 * std::log2(p1) + p0 * std::log2(p0));
}

MetricsSnapshot snapshot(const QuestionNet& net, Denominators denoms) {
    const auto& qs = net.questions();
    if (qs.empty()) throw EmptyNetError("snapshot: net has no questions");
    double sum_entropy = 0.0;
    double sum_bias = 0.0;
    for (const Question& q : qs) {
        sum_entropy += tally_entropy(q.tally);
        sum_bias += link_bias(q.tally);
    }
    const double m = static_cast<double>(qs.size());
    MetricsSnapshot s;
    s.t = net.clock();
    s.f_nodes = static_cast<double>(net.num_items()) / static_cast<double>(denoms.total_items);
    s.f_edges = m / static_cast<double>(denoms.total_questions);
    s.mean_entropy = sum_entropy / m;
    s.mean_link_bias = sum_bias / m;
    s.answer_density = static_cast<double>(net.clock()) / m;
    return s;
}

std::map<std::uint64_t, std::uint64_t> answers_histogram(const QuestionNet& net) {
    std::map<std::uint64_t, std::uint64_t> hist;
    for (const Question& q : net.questions()) ++hist[q.tally.total()];
    return hist;
}

std::vector<DegreeRow> degree_distribution(const QuestionNet& net) {
    if (net.num_items() == 0) throw EmptyNetError("degree_distribution: empty net");
    std::map<std::uint32_t, std::uint64_t> counts;
    for (ItemId id : net.items()) ++counts[net.degree(id)];
    return degree_rows_from_counts(counts);
}

std::vector<DegreeRow> degree_rows_from_counts(
    const std::map<std::uint32_t, std::uint64_t>& counts) {
    std::uint64_t total = 0;
    for (const auto& [k, c] : counts) total += c;
    std::vector<DegreeRow> rows;
    rows.reserve(counts.size());
    std::uint64_t at_least = total;  // counts is ascending in k
    for (const auto& [k, c] : counts) {
        rows.push_back(DegreeRow{k, c, static_cast<double>(at_least) / static_cast<double>(total)});
        at_least -= c;
    }
    return rows;
}

double fit_tail_slope(std::span<const DegreeRow> rows, double k_min, double k_max) {
    if (!(k_min < k_max)) throw DomainError("fit_tail_slope: need k_min < k_max");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (const DegreeRow& r : rows) {
        if (r.k < k_min || r.k > k_max || r.ccdf <= 0.0 || r.k == 0) continue;
        const double x = std::log(static_cast<double>(r.k));
        const double y = std::log(r.ccdf);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 3)
        throw InsufficientSupportError("fit_tail_slope: fewer than 3 distinct degrees in window");
    const double n = static_cast<double>(count);
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qnet
