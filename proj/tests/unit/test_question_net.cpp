#include <doctest.h>

#include <random>
#include <sstream>

#include "qnet/question_net.hpp"

using namespace qnet;

TEST_CASE("item ids are sequential and unique") {
    QuestionNet net;
    CHECK(net.add_item() == 0);
    CHECK(net.num_items() == 1);
    CHECK(net.add_item() == 1);
    CHECK(net.add_item() == 2);
    CHECK(net.num_items() == 3);
}

TEST_CASE("ensure_item reuses ids and keeps add_item fresh") {
    QuestionNet net;
    net.ensure_item(5);
    net.ensure_item(5);
    CHECK(net.num_items() == 1);
    CHECK(net.add_item() == 6);
}

TEST_CASE("add_question on the seed pair") {
    QuestionNet net;
    net.add_item();
    net.add_item();
    const QuestionKey key = net.add_question(0, 1);
    CHECK(net.num_questions() == 1);
    CHECK(net.degree(0) == 1);
    CHECK(net.degree(1) == 1);
    CHECK(key == QuestionKey(1, 0));  // canonical unordered pair

    CHECK_THROWS_AS(net.add_question(0, 1), DuplicateQuestionError);
    CHECK_THROWS_AS(net.add_question(1, 0), DuplicateQuestionError);
    CHECK_THROWS_AS(net.add_question(0, 0), SelfLoopError);
    CHECK_THROWS_AS(net.add_question(0, 7), UnknownItemError);
}

TEST_CASE("record_answer updates tally, posterior and clock") {
    QuestionNet net;
    net.add_item();
    net.add_item();
    const QuestionKey key = net.add_question(0, 1);

    const AnswerTally& t1 = net.record_answer(key, true);
    CHECK(t1.n_yes == 1);
    CHECK(t1.n_no == 0);
    CHECK(t1.alpha() == 2.0);
    CHECK(t1.beta() == 1.0);
    CHECK(net.clock() == 1);

    // drive the tally to (3,2), then one 'no' makes the smoothed p exactly 1/2
    net.record_answer(key, true);
    net.record_answer(key, true);
    net.record_answer(key, false);
    net.record_answer(key, false);
    const AnswerTally& t2 = net.record_answer(key, false);
    CHECK(t2.n_yes == 3);
    CHECK(t2.n_no == 3);
    CHECK(t2.p_yes() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(net.clock() == 6);

    CHECK_THROWS_AS(net.record_answer(QuestionKey(0, 9), true), UnknownQuestionError);
}

TEST_CASE("degree counts incident questions") {
    QuestionNet net;
    for (int i = 0; i < 4; ++i) net.add_item();
    net.add_question(0, 1);
    net.add_question(0, 2);
    net.add_question(0, 3);
    CHECK(net.degree(0) == 3);
    CHECK(net.degree(1) == 1);
    const ItemId fresh = net.add_item();
    CHECK(net.degree(fresh) == 0);
    CHECK_THROWS_AS(net.degree(99), UnknownItemError);
}

TEST_CASE("random mutation sequences keep the net invariants") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        QuestionNet net;
        net.add_item();
        net.add_item();
        net.add_question(0, 1);
        for (int op = 0; op < 300; ++op) {
            const int what = std::uniform_int_distribution<int>(0, 9)(rng);
            if (what == 0) {
                net.add_item();
            } else if (what <= 3 && net.num_items() >= 2) {
                const auto ids = net.items();
                const ItemId u = ids[std::uniform_int_distribution<std::size_t>(
                    0, ids.size() - 1)(rng)];
                const ItemId v = ids[std::uniform_int_distribution<std::size_t>(
                    0, ids.size() - 1)(rng)];
                if (u != v && !net.has_question(QuestionKey(u, v))) net.add_question(u, v);
            } else {
                const auto& qs = net.questions();
                const auto& q = qs[std::uniform_int_distribution<std::size_t>(
                    0, qs.size() - 1)(rng)];
                net.record_answer(q.key, std::bernoulli_distribution(0.5)(rng));
            }
        }

        std::uint64_t answers = 0;
        std::uint64_t last_created = 0;
        for (const Question& q : net.questions()) {
            answers += q.tally.total();
            CHECK(q.created_at >= last_created);  // creation order is by created_at
            last_created = q.created_at;
            CHECK(q.tally.alpha() + q.tally.beta() == q.tally.total() + 2.0);
            CHECK(q.tally.p_yes() * (q.tally.total() + 2.0) ==
                  doctest::Approx(q.tally.n_yes + 1.0).epsilon(1e-12));
        }
        CHECK(answers == net.clock());

        std::size_t degree_sum = 0;
        for (ItemId id : net.items()) degree_sum += net.degree(id);
        CHECK(degree_sum == 2 * net.num_questions());
    }
}

TEST_CASE("edge-list round trip") {
    QuestionNet net;
    net.add_item();
    net.add_item();
    net.add_item();
    net.ensure_item(9);  // isolated
    const QuestionKey q01 = net.add_question(0, 1);
    net.record_answer(q01, true);
    net.record_answer(q01, false);
    const QuestionKey q12 = net.add_question(1, 2);
    net.record_answer(q12, true);

    std::stringstream buf;
    net.save(buf);
    const std::string text = buf.str();
    CHECK(text.rfind("# qnet v1\n", 0) == 0);
    CHECK(text.find("# isolated: 9") != std::string::npos);

    const QuestionNet loaded = QuestionNet::load(buf);
    CHECK(loaded.num_items() == net.num_items());
    CHECK(loaded.num_questions() == net.num_questions());
    CHECK(loaded.clock() == net.clock());
    CHECK(loaded.has_item(9));
    for (std::size_t i = 0; i < net.questions().size(); ++i) {
        CHECK(loaded.questions()[i].key == net.questions()[i].key);
        CHECK(loaded.questions()[i].tally.n_yes == net.questions()[i].tally.n_yes);
        CHECK(loaded.questions()[i].tally.n_no == net.questions()[i].tally.n_no);
        CHECK(loaded.questions()[i].created_at == net.questions()[i].created_at);
    }
}

TEST_CASE("load rejects malformed input") {
    std::stringstream missing_header("0 1 0 0 0\n");
    CHECK_THROWS_AS(QuestionNet::load(missing_header), ParseError);
    std::stringstream bad_line("# qnet v1\n0 x 0 0 0\n");
    CHECK_THROWS_AS(QuestionNet::load(bad_line), ParseError);
}
