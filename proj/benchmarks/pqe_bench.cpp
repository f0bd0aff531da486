#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "pqe/index.hpp"
#include "pqe/partition.hpp"
#include "pqe/retrieval.hpp"
#include "pqe/term_scoring.hpp"
#include "pqe/text.hpp"

namespace {

pqe::lang_profile const profile("bench", {"the", "of", "and", "में", "के"}, pqe::script_hint::mixed);

std::vector<std::string> vocabulary(std::size_t n)
{
    static char const* const syl[] = {"ka", "ri", "mo", "su", "ne", "ता", "कि", "नु", "रो", "मे"};
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) {
        std::string w;
        for (std::size_t x = i + 1; x > 0; x /= 10) {
            w += syl[x % 10];
        }
        v.push_back(w);
    }
    return v;
}

std::string raw_text(std::mt19937& rng, std::vector<std::string> const& vocab, std::size_t words)
{
    std::string s;
    for (std::size_t i = 0; i < words; ++i) {
        s += vocab[rng() % vocab.size()];
        s += (i % 9 == 8) ? ". " : (i % 5 == 4 ? " the " : " ");
    }
    return s;
}

pqe::collection make_collection(std::size_t docs, std::size_t words)
{
    std::mt19937 rng(7);
    auto const vocab = vocabulary(5000);
    pqe::collection_builder b;
    for (std::size_t d = 0; d < docs; ++d) {
        b.add("D" + std::to_string(d), pqe::tokenize(raw_text(rng, vocab, words), profile));
    }
    return std::move(b).build();
}

void BM_Tokenize(benchmark::State& state)
{
    std::mt19937 rng(1);
    auto const text = raw_text(rng, vocabulary(2000), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pqe::tokenize(text, profile));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Tokenize)->Arg(200)->Arg(2000);

void BM_IndexBuild(benchmark::State& state)
{
    std::mt19937 rng(2);
    auto const vocab = vocabulary(5000);
    std::vector<std::pair<std::string, pqe::token_stream>> docs;
    for (std::int64_t d = 0; d < state.range(0); ++d) {
        docs.emplace_back("D" + std::to_string(d), pqe::tokenize(raw_text(rng, vocab, 300), profile));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(pqe::build_collection(docs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IndexBuild)->Arg(1000)->Arg(10000);

void BM_Retrieve(benchmark::State& state)
{
    auto const coll = make_collection(static_cast<std::size_t>(state.range(0)), 300);
    auto const vocab = vocabulary(5000);
    auto const query = pqe::make_query(std::vector<std::string>{vocab[3], vocab[17], vocab[250], vocab[4000]});
    for (auto _ : state) {
        benchmark::DoNotOptimize(pqe::retrieve(coll.index(), query, 1000, {}));
    }
}
BENCHMARK(BM_Retrieve)->Arg(1000)->Arg(20000);

void BM_DocumentCandidates(benchmark::State& state)
{
    std::mt19937 rng(3);
    auto const vocab = vocabulary(800);
    auto const stream = pqe::tokenize(raw_text(rng, vocab, static_cast<std::size_t>(state.range(0))), profile);
    pqe::keyword_set const kw{vocab[1], vocab[2], vocab[3]};
    for (auto _ : state) {
        benchmark::DoNotOptimize(pqe::document_candidates(stream, kw, "D", {}));
    }
}
BENCHMARK(BM_DocumentCandidates)->Arg(500)->Arg(5000);

}  // namespace

BENCHMARK_MAIN();
