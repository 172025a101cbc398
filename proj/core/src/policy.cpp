#include "qnet/policy.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <vector>

namespace qnet {

namespace {

double xlogy(double x, double y) {
    // 0 * log(0) = 0 by convention; keeps unit shape parameters finite at
    // the endpoints of the support.
    return x == 0.0 ? 0.0 : x * std::log(y);
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

std::size_t uniform_index(std::size_t size, std::mt19937_64& rng) {
    return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

}  // namespace

double link_bias(const AnswerTally& tally) {
    return std::abs(0.5 - tally.p_yes());
}

double phi_density(double d, double alpha, double beta) {
    if (!(d >= 0.0 && d <= 0.5))
        throw DomainError("phi_density: d must lie in [0, 1/2]");
    if (!(alpha > 0.0 && beta > 0.0))
        throw DomainError("phi_density: shape parameters must be positive");
    // Only (1 - 2d) can reach 0; xlogy keeps alpha = 1 or beta = 1 finite there.
    const double log_hi = std::log1p(2.0 * d);  // log(1 + 2d)
    const double log_norm = log_beta(alpha, beta) + (alpha + beta - 2.0) * std::numbers::ln2;
    const double t1 = xlogy(alpha - 1.0, 1.0 - 2.0 * d) + (beta - 1.0) * log_hi;
    const double t2 = (alpha - 1.0) * log_hi + xlogy(beta - 1.0, 1.0 - 2.0 * d);
    return std::exp(t1 - log_norm) + std::exp(t2 - log_norm);
}

double sample_link_bias(double alpha, double beta, std::mt19937_64& rng) {
    std::gamma_distribution<double> ga(alpha, 1.0);
    std::gamma_distribution<double> gb(beta, 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    return std::abs(0.5 - x / (x + y));
}

double binom_test_two_sided(std::uint64_t k, std::uint64_t n) {
    if (k > n) throw DomainError("binom_test_two_sided: k > n");
    if (n == 0) return 1.0;

    if (n <= 62) {
        // Exact integer path: under p = 1/2 the pmf is C(n,i) / 2^n, so
        // outcome comparisons reduce to comparing binomial coefficients.
        std::vector<std::uint64_t> coeff(n + 1);
        coeff[0] = 1;
        for (std::uint64_t i = 1; i <= n; ++i)
            coeff[i] = coeff[i - 1] * (n - i + 1) / i;
        const std::uint64_t pivot = coeff[k];
        std::uint64_t acc = 0;
        for (std::uint64_t i = 0; i <= n; ++i)
            if (coeff[i] <= pivot) acc += coeff[i];
        return std::ldexp(static_cast<double>(acc), -static_cast<int>(n));
    }

    // Log-space fallback with a relative slack on the pmf comparison to
    // absorb lgamma rounding.
    const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
    auto log_pmf = [&](std::uint64_t i) {
        return lg_n1 - std::lgamma(static_cast<double>(i) + 1.0) -
               std::lgamma(static_cast<double>(n - i) + 1.0) -
               static_cast<double>(n) * std::numbers::ln2;
    };
    const double pivot = log_pmf(k) + 1e-12;
    double p = 0.0;
    for (std::uint64_t i = 0; i <= n; ++i) {
        const double lp = log_pmf(i);
        if (lp <= pivot) p += std::exp(lp);
    }
    return std::min(p, 1.0);
}

PolicySpec PolicySpec::parse(std::string_view text) {
    PolicySpec spec;
    if (text == "random") {
        spec.kind = PolicyKind::random;
    } else if (text == "looping") {
        spec.kind = PolicyKind::looping;
    } else if (text == "thompson-phi") {
        spec.kind = PolicyKind::thompson_phi;
    } else if (text == "thompson-phi-n") {
        spec.kind = PolicyKind::thompson_phi_n;
    } else if (text.rfind("binomial", 0) == 0) {
        spec.kind = PolicyKind::binomial;
        std::string_view rest = text.substr(8);
        if (!rest.empty()) {
            if (rest.front() != ':')
                throw ConfigError("bad policy spec: " + std::string(text));
            rest.remove_prefix(1);
            while (!rest.empty()) {
                auto comma = rest.find(',');
                std::string_view field = rest.substr(0, comma);
                auto eq = field.find('=');
                if (eq == std::string_view::npos)
                    throw ConfigError("bad policy field: " + std::string(field));
                std::string key(field.substr(0, eq));
                std::string value(field.substr(eq + 1));
                try {
                    if (key == "p_min")
                        spec.p_min = std::stod(value);
                    else if (key == "max_answers")
                        spec.max_answers = static_cast<std::uint32_t>(std::stoul(value));
                    else
                        throw ConfigError("unknown policy field: " + key);
                } catch (const std::logic_error&) {
                    throw ConfigError("bad policy value: " + std::string(field));
                }
                if (comma == std::string_view::npos) break;
                rest.remove_prefix(comma + 1);
            }
        }
    } else {
        throw ConfigError("unknown policy: " + std::string(text));
    }
    spec.validate();
    return spec;
}

void PolicySpec::validate() const {
    if (kind == PolicyKind::binomial) {
        if (!(p_min > 0.0 && p_min < 1.0))
            throw ConfigError("binomial p_min must lie in (0, 1)");
        if (max_answers < 1)
            throw ConfigError("binomial max_answers must be >= 1");
    }
}

std::string PolicySpec::name() const {
    switch (kind) {
        case PolicyKind::random: return "random";
        case PolicyKind::looping: return "looping";
        case PolicyKind::binomial: return "binomial";
        case PolicyKind::thompson_phi: return "thompson-phi";
        case PolicyKind::thompson_phi_n: return "thompson-phi-n";
    }
    return "?";
}

std::string PolicySpec::to_string() const {
    if (kind != PolicyKind::binomial) return name();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "binomial:p_min=%g,max_answers=%u", p_min, max_answers);
    return buf;
}

namespace {

QuestionKey select_random(const std::vector<Question>& qs, std::mt19937_64& rng) {
    return qs[uniform_index(qs.size(), rng)].key;
}

QuestionKey select_looping(const std::vector<Question>& qs, SamplerState& state) {
    if (state.loop_cursor >= qs.size()) state.loop_cursor = 0;
    const QuestionKey key = qs[state.loop_cursor].key;
    state.loop_cursor = (state.loop_cursor + 1) % qs.size();
    return key;
}

QuestionKey select_binomial(const std::vector<Question>& qs, const PolicySpec& spec,
                            std::mt19937_64& rng) {
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t i = 0; i < qs.size(); ++i) {
        const AnswerTally& t = qs[i].tally;
        if (t.total() >= spec.max_answers) continue;
        if (binom_test_two_sided(t.n_yes, t.total()) > spec.p_min)
            candidates.push_back(i);
    }
    if (candidates.empty())  // nothing meets the criteria: fall back to random
        return select_random(qs, rng);
    return qs[candidates[uniform_index(candidates.size(), rng)]].key;
}

/// argmin with uniform tie-breaking via reservoir replacement. Exact ties
/// have probability ~0 for continuous scores but are handled anyway.
class ArgminPicker {
public:
    explicit ArgminPicker(std::mt19937_64& rng) : rng_(rng) {}

    void offer(std::size_t index, double score) {
        if (score < best_) {
            best_ = score;
            index_ = index;
            ties_ = 1;
        } else if (score == best_) {
            ++ties_;
            if (std::uniform_real_distribution<double>(0.0, 1.0)(rng_) * ties_ < 1.0)
                index_ = index;
        }
    }

    std::size_t index() const { return index_; }

private:
    std::mt19937_64& rng_;
    double best_ = std::numeric_limits<double>::infinity();
    std::size_t index_ = 0;
    std::size_t ties_ = 0;
};

QuestionKey select_thompson_phi(const std::vector<Question>& qs, std::mt19937_64& rng) {
    ArgminPicker pick(rng);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const AnswerTally& t = qs[i].tally;
        pick.offer(i, sample_link_bias(t.alpha(), t.beta(), rng));
    }
    return qs[pick.index()].key;
}

QuestionKey select_thompson_phi_n(const std::vector<Question>& qs, std::mt19937_64& rng) {
    // Unanswered questions score N*d = 0 and beat any answered question
    // almost surely, so they are served first, ties uniform.
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < qs.size(); ++i)
        if (qs[i].tally.total() == 0) fresh.push_back(i);
    if (!fresh.empty())
        return qs[fresh[uniform_index(fresh.size(), rng)]].key;

    ArgminPicker pick(rng);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const AnswerTally& t = qs[i].tally;
        const double d = sample_link_bias(t.alpha(), t.beta(), rng);
        pick.offer(i, static_cast<double>(t.total()) * d);
    }
    return qs[pick.index()].key;
}

}  // namespace

QuestionKey select(const QuestionNet& net, const PolicySpec& spec, SamplerState& state) {
    const std::vector<Question>& qs = net.questions();
    if (qs.empty()) throw EmptyNetError("select: net has no questions");
    switch (spec.kind) {
        case PolicyKind::random: return select_random(qs, state.rng);
        case PolicyKind::looping: return select_looping(qs, state);
        case PolicyKind::binomial: return select_binomial(qs, spec, state.rng);
        case PolicyKind::thompson_phi: return select_thompson_phi(qs, state.rng);
        case PolicyKind::thompson_phi_n: return select_thompson_phi_n(qs, state.rng);
    }
    throw ConfigError("select: bad policy kind");
}

}  // namespace qnet
