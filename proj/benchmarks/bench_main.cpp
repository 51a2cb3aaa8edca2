#include <random>

#include <benchmark/benchmark.h>

#include "bergm/estimate.hpp"
#include "bergm/sampler.hpp"
#include "bergm/terms.hpp"

namespace {

using namespace bergm;

struct Setup {
  BipartiteNetwork net;
  NodeAttributes attrs;
};

Setup make_setup(int n1, int n2, double density) {
  std::mt19937_64 gen(1);
  std::bernoulli_distribution coin(density);
  Setup s{BipartiteNetwork(n1, n2), {}};
  for (int i = 1; i <= n1; ++i) {
    for (int k = n1 + 1; k <= n1 + n2; ++k) {
      if (coin(gen)) s.net.set_edge(i, k, true);
    }
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n1; ++i) labels.push_back(i % 3 == 0 ? "a" : i % 3 == 1 ? "b" : "c");
  s.attrs.mode1 = AttributeTable::for_mode(s.net, Mode::first);
  s.attrs.mode1->add_categorical("g", labels);
  return s;
}

ModelSpec homophily_spec(bool alpha) {
  ModelTerm edges;
  ModelTerm match;
  match.kind = TermKind::b1nodematch;
  match.attribute = "g";
  if (alpha) {
    match.alpha = 0.5;
  } else {
    match.beta = 0.5;
  }
  return {{edges, match}};
}

void BM_ChangeStatistic(benchmark::State& state) {
  const int n1 = static_cast<int>(state.range(0));
  const auto s = make_setup(n1, n1 / 2, 0.1);
  const CompiledModel model(homophily_spec(state.range(1) == 0), s.attrs, s.net.n1(), s.net.n2());
  std::vector<double> out(model.dimension());
  std::size_t index = 0;
  for (auto _ : state) {
    const Dyad d = s.net.dyad_at(index);
    model.change(s.net, d, out);
    benchmark::DoNotOptimize(out.data());
    index = (index + 7919) % s.net.dyad_count();
  }
}
BENCHMARK(BM_ChangeStatistic)->ArgsProduct({{30, 100, 300}, {0, 1}})->ArgNames({"n1", "beta"});

void BM_SamplerStep(benchmark::State& state) {
  const int n1 = static_cast<int>(state.range(0));
  const auto s = make_setup(n1, n1 / 2, 0.1);
  const CompiledModel model(homophily_spec(true), s.attrs, s.net.n1(), s.net.n2());
  MetropolisSampler sampler(model, s.net, {-2.0, 0.2}, Proposal::tie_no_tie, 7);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.step());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_SamplerStep)->Arg(30)->Arg(100)->Arg(300)->ArgName("n1");

void BM_FullEvaluation(benchmark::State& state) {
  const int n1 = static_cast<int>(state.range(0));
  const auto s = make_setup(n1, n1 / 2, 0.1);
  const CompiledModel model(homophily_spec(true), s.attrs, s.net.n1(), s.net.n2());
  for (auto _ : state) benchmark::DoNotOptimize(model.eval(s.net));
}
BENCHMARK(BM_FullEvaluation)->Arg(30)->Arg(100)->Arg(300)->ArgName("n1");

void BM_Mple(benchmark::State& state) {
  const auto s = make_setup(60, 30, 0.1);
  const CompiledModel model(homophily_spec(false), s.attrs, s.net.n1(), s.net.n2());
  for (auto _ : state) benchmark::DoNotOptimize(mple(model, s.net).theta);
}
BENCHMARK(BM_Mple)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
