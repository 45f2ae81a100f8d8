#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "treeforge/java.hpp"
#include "treeforge/normalize.hpp"
#include "treeforge/path_contexts.hpp"
#include "treeforge/subtokens.hpp"

namespace {


std::vector<std::string> corpus_files() {
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(TREEFORGE_BENCH_CORPUS)) {
    if (entry.path().extension() != ".java" || entry.path().filename() == "Broken.java") continue;
    std::ifstream in(entry.path());
    std::ostringstream buf;
    buf << in.rdbuf();
    files.push_back(buf.str());
  }
  return files;
}

void BM_JavaParse(benchmark::State& state) {
  const auto files = corpus_files();
  std::size_t bytes = 0;
  for (const auto& f : files) bytes += f.size();
  for (auto _ : state) {
    for (const auto& f : files) benchmark::DoNotOptimize(treeforge::java::parse(f));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
}
BENCHMARK(BM_JavaParse);

void BM_Normalize(benchmark::State& state) {
  std::vector<treeforge::AstNode> trees;
  for (const auto& f : corpus_files()) trees.push_back(treeforge::java::parse(f));
  for (auto _ : state) {
    for (const auto& t : trees) benchmark::DoNotOptimize(treeforge::normalize(t));
  }
}
BENCHMARK(BM_Normalize);

void BM_SplitSubtokens(benchmark::State& state) {
  std::vector<std::string> idents;
  for (const auto& tree : {treeforge::java::parse(corpus_files().front())}) {
    idents = treeforge::leaf_tokens(tree);
  }
  for (auto _ : state) {
    for (const auto& id : idents) benchmark::DoNotOptimize(treeforge::split_subtokens(id));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * idents.size()));
}
BENCHMARK(BM_SplitSubtokens);

void BM_PathContexts(benchmark::State& state) {
  const auto tree = treeforge::normalize(treeforge::java::parse(corpus_files().front()));
  treeforge::PathParams params;
  params.max_contexts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(treeforge::extract_path_contexts(tree, params));
}
BENCHMARK(BM_PathContexts)->Arg(200)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
