#include <benchmark/benchmark.h>

#include <random>

#include "qnet/graph_gen.hpp"
#include "qnet/null_model.hpp"
#include "qnet/policy.hpp"

using namespace qnet;

namespace {

QuestionNet net_of_size(std::size_t questions, std::uint64_t seed) {
    QuestionNet net;
    std::mt19937_64 rng(seed);
    net.add_item();
    for (std::size_t i = 0; i < questions; ++i) {
        const ItemId leaf = net.add_item();
        const QuestionKey key =
            net.add_question(static_cast<ItemId>(rng() % leaf), leaf);
        const int answers = static_cast<int>(rng() % 12);
        for (int a = 0; a < answers; ++a)
            net.record_answer(key, std::bernoulli_distribution(0.7)(rng));
    }
    return net;
}

void bm_select(benchmark::State& state, const char* policy) {
    const QuestionNet net = net_of_size(static_cast<std::size_t>(state.range(0)), 7);
    const PolicySpec spec = PolicySpec::parse(policy);
    SamplerState sampler(11);
    for (auto _ : state) benchmark::DoNotOptimize(select(net, spec, sampler));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(bm_select, random, "random")->Arg(100)->Arg(800);
BENCHMARK_CAPTURE(bm_select, binomial, "binomial:p_min=0.2,max_answers=30")->Arg(100)->Arg(800);
BENCHMARK_CAPTURE(bm_select, thompson_phi, "thompson-phi")->Arg(100)->Arg(800);
BENCHMARK_CAPTURE(bm_select, thompson_phi_n, "thompson-phi-n")->Arg(100)->Arg(800);

static void bm_sample_link_bias(benchmark::State& state) {
    std::mt19937_64 rng(3);
    for (auto _ : state) benchmark::DoNotOptimize(sample_link_bias(7, 4, rng));
}
BENCHMARK(bm_sample_link_bias);

static void bm_binom_test(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(binom_test_two_sided(static_cast<std::uint64_t>(state.range(0)),
                                                      2 * state.range(0)));
}
BENCHMARK(bm_binom_test)->Arg(5)->Arg(15)->Arg(40);

static void bm_null_step(benchmark::State& state) {
    NullParams params;
    QuestionNet net = make_seed_net();
    SamplerState sampler(5);
    for (auto _ : state) benchmark::DoNotOptimize(step_null(net, params, PolicySpec{}, sampler));
}
BENCHMARK(bm_null_step);

static void bm_er_gnm_connected(benchmark::State& state) {
    std::mt19937_64 rng(9);
    for (auto _ : state)
        benchmark::DoNotOptimize(er_gnm_connected(400, 800, rng, 1000000).edges.size());
}
BENCHMARK(bm_er_gnm_connected)->Unit(benchmark::kMillisecond);

static void bm_ba_graph(benchmark::State& state) {
    std::mt19937_64 rng(9);
    for (auto _ : state) benchmark::DoNotOptimize(ba_graph(400, 800, rng).edges.size());
}
BENCHMARK(bm_ba_graph)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
