#include <doctest.h>

#include <random>

#include "qnet/metrics.hpp"
#include "qnet/policy.hpp"

using namespace qnet;

namespace {

QuestionNet chain_net(const std::vector<AnswerTally>& tallies) {
    QuestionNet net;
    net.add_item();
    for (std::size_t i = 0; i < tallies.size(); ++i) {
        net.add_item();
        const QuestionKey key = net.add_question(static_cast<ItemId>(i),
                                                 static_cast<ItemId>(i + 1));
        for (std::uint32_t k = 0; k < tallies[i].n_yes; ++k) net.record_answer(key, true);
        for (std::uint32_t k = 0; k < tallies[i].n_no; ++k) net.record_answer(key, false);
    }
    return net;
}

}  // namespace

TEST_CASE("snapshot of a single fresh question") {
    const QuestionNet net = chain_net({AnswerTally{}});
    const MetricsSnapshot s = snapshot(net, Denominators{4, 8});
    CHECK(s.t == 0);
    CHECK(s.f_nodes == doctest::Approx(2.0 / 4.0));
    CHECK(s.f_edges == doctest::Approx(1.0 / 8.0));
    CHECK(s.mean_entropy == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.mean_link_bias == 0.0);
    CHECK(s.answer_density == 0.0);
}

TEST_CASE("snapshot after one yes answer") {
    const QuestionNet net = chain_net({AnswerTally{1, 0}});
    const MetricsSnapshot s = snapshot(net, Denominators{2, 1});
    // smoothed split 2/3 vs 1/3: entropy log2(3) - 2/3 bits
    CHECK(s.mean_entropy == doctest::Approx(0.9182958340544896).epsilon(1e-12));
    CHECK(s.mean_link_bias == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(s.answer_density == 1.0);
}

TEST_CASE("snapshot averages over questions") {
    const QuestionNet net = chain_net({AnswerTally{2, 0}, AnswerTally{0, 2}});
    const MetricsSnapshot s = snapshot(net, Denominators{3, 2});
    CHECK(s.mean_link_bias == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(s.answer_density == doctest::Approx(2.0).epsilon(1e-15));

    QuestionNet empty;
    CHECK_THROWS_AS(snapshot(empty, Denominators{1, 1}), EmptyNetError);
}

TEST_CASE("entropy and bias hit their extremes together") {
    // <S> = 1 and <d> = 0 exactly when every smoothed proportion is 1/2
    const QuestionNet balanced = chain_net({AnswerTally{3, 3}, AnswerTally{0, 0}});
    const MetricsSnapshot s = snapshot(balanced, Denominators{3, 2});
    CHECK(s.mean_entropy == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.mean_link_bias == 0.0);

    const QuestionNet skewed = chain_net({AnswerTally{3, 3}, AnswerTally{1, 0}});
    const MetricsSnapshot s2 = snapshot(skewed, Denominators{3, 2});
    CHECK(s2.mean_entropy < 1.0);
    CHECK(s2.mean_link_bias > 0.0);
}

TEST_CASE("answer histogram and its moments") {
    QuestionNet net = chain_net({AnswerTally{}});
    CHECK(answers_histogram(net) == std::map<std::uint64_t, std::uint64_t>{{0, 1}});
    const QuestionKey key = net.questions()[0].key;
    net.record_answer(key, true);
    net.record_answer(key, false);
    net.record_answer(key, true);
    CHECK(answers_histogram(net) == std::map<std::uint64_t, std::uint64_t>{{3, 1}});

    SUBCASE("moments reconcile with net totals on random nets") {
        std::mt19937_64 rng(11);
        QuestionNet random_net = chain_net({{}, {}, {}, {}, {}});
        for (int i = 0; i < 500; ++i) {
            const auto& qs = random_net.questions();
            random_net.record_answer(
                qs[std::uniform_int_distribution<std::size_t>(0, qs.size() - 1)(rng)].key,
                std::bernoulli_distribution(0.3)(rng));
        }
        const auto hist = answers_histogram(random_net);
        std::uint64_t questions = 0, answers = 0;
        for (const auto& [n, c] : hist) {
            questions += c;
            answers += n * c;
        }
        CHECK(questions == random_net.num_questions());
        CHECK(answers == random_net.clock());

        const MetricsSnapshot s = snapshot(random_net, Denominators{6, 5});
        CHECK(s.answer_density ==
              static_cast<double>(random_net.clock()) / random_net.num_questions());
    }
}

TEST_CASE("adding a majority answer never lowers the bias") {
    for (std::uint32_t n_no = 0; n_no <= 10; ++n_no) {
        for (std::uint32_t n_yes = n_no; n_yes <= 12; ++n_yes) {
            const double before = link_bias(AnswerTally{n_yes, n_no});
            const double after = link_bias(AnswerTally{n_yes + 1, n_no});
            CHECK(after >= before - 1e-15);
        }
    }
}

TEST_CASE("degree distribution of a star") {
    QuestionNet net;
    const ItemId hub = net.add_item();
    for (int i = 0; i < 5; ++i) {
        const ItemId leaf = net.add_item();
        net.add_question(hub, leaf);
    }
    const auto rows = degree_distribution(net);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].k == 1);
    CHECK(rows[0].count == 5);
    CHECK(rows[0].ccdf == doctest::Approx(1.0));
    CHECK(rows[1].k == 5);
    CHECK(rows[1].count == 1);
    CHECK(rows[1].ccdf == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("tail slope fit") {
    SUBCASE("recovers an exact power law") {
        std::vector<DegreeRow> rows;
        for (std::uint32_t k = 2; k <= 40; ++k)
            rows.push_back(DegreeRow{k, 1, std::pow(static_cast<double>(k), -2.0)});
        CHECK(fit_tail_slope(rows, 2, 40) == doctest::Approx(-2.0).epsilon(1e-12));
    }
    SUBCASE("needs at least three distinct degrees") {
        std::vector<DegreeRow> rows{{1, 3, 1.0}, {2, 1, 0.25}, {9, 1, 0.1}};
        CHECK_THROWS_AS(fit_tail_slope(rows, 1, 2), InsufficientSupportError);
        CHECK_THROWS_AS(fit_tail_slope(rows, 5, 3), DomainError);
    }
}
