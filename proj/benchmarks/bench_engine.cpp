#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "odg/engine.hpp"
#include "odg/oracle.hpp"
#include "odg/serialize.hpp"

namespace {

const odg::Lexicon& lexicon() {
  static const odg::Lexicon lex = odg::load_lexicon_file(ODG_DATA_DIR "/de.lex");
  return lex;
}

odg::DependencyTree tree(const std::string& name) {
  std::ifstream in(ODG_DATA_DIR "/corpus/trees/" + name + ".txt");
  std::ostringstream ss;
  ss << in.rdbuf();
  return odg::parse_tree_text(ss.str());
}

const char* kSentences[] = {
    "der Junge schläft",
    "den Mann hat der Junge gesehen",
    "gestern hat der Junge den Mann gesehen",
};

void BM_Parse(benchmark::State& state) {
  const auto tokens = odg::tokenize(kSentences[state.range(0)]);
  const odg::SearchOptions opts{.prune = state.range(1) != 0};
  for (auto _ : state) benchmark::DoNotOptimize(odg::parse(tokens, lexicon(), opts));
  state.SetLabel(std::to_string(tokens.size()) + " tokens" + (opts.prune ? "" : ", naive"));
}
BENCHMARK(BM_Parse)->ArgsProduct({{0, 1, 2}, {1, 0}})->Unit(benchmark::kMillisecond);

void BM_Generate(benchmark::State& state, const std::string& name, bool prune) {
  const auto t = tree(name);
  for (auto _ : state) benchmark::DoNotOptimize(odg::generate(t, lexicon(), {.prune = prune}));
}
BENCHMARK_CAPTURE(BM_Generate, topicalized, std::string("topicalized"), true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Generate, topicalized_naive, std::string("topicalized"), false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Generate, hat_gestern, std::string("hat_gestern"), true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Generate, hat_gestern_naive, std::string("hat_gestern"), false)->Unit(benchmark::kMillisecond);

void BM_OracleParse(benchmark::State& state) {
  const auto tokens = odg::tokenize(kSentences[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(odg::oracle_parse(tokens, lexicon()));
}
BENCHMARK(BM_OracleParse)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_OracleOrders(benchmark::State& state, const std::string& name) {
  const auto t = tree(name);
  for (auto _ : state) benchmark::DoNotOptimize(odg::oracle_linearizations(t, lexicon()));
}
BENCHMARK_CAPTURE(BM_OracleOrders, topicalized, std::string("topicalized"))->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_OracleOrders, hat_gestern, std::string("hat_gestern"))->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
