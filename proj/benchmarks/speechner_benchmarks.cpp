// Copyright 2026 The speechner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "speechner/asr_sim.hpp"
#include "speechner/capu.hpp"
#include "speechner/chunk.hpp"
#include "speechner/corpus_io.hpp"
#include "speechner/crf.hpp"
#include "speechner/eval.hpp"
#include "speechner/pipeline.hpp"
#include "speechner/rng.hpp"
#include "speechner/synth.hpp"

namespace {

using namespace speechner;

crf::Potentials random_potentials(int t, int k) {
  Rng rng(1);
  crf::Potentials p;
  p.length = t;
  p.num_labels = k;
  p.emit.resize(static_cast<std::size_t>(t) * k);
  p.trans.resize(static_cast<std::size_t>(k) * k);
  for (auto& v : p.emit) v = 4 * rng.uniform01() - 2;
  for (auto& v : p.trans) v = 4 * rng.uniform01() - 2;
  return p;
}

void BM_Viterbi(benchmark::State& state) {
  const auto p = random_potentials(static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(crf::viterbi_decode(p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Viterbi)->Args({40, 9})->Args({40, 7})->Args({200, 9});

void BM_ForwardBackward(benchmark::State& state) {
  const auto p = random_potentials(static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(crf::forward_backward(p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForwardBackward)->Args({40, 9})->Args({200, 9});

std::vector<std::string> words(std::size_t n, std::uint64_t seed) {
  static const std::vector<std::string> vocab{"một", "hai", "ba", "bốn",
                                              "năm", "sáu", "bảy", "tám"};
  Rng rng(seed);
  std::vector<std::string> out(n);
  for (auto& w : out) w = vocab[static_cast<std::size_t>(rng.uniform_int(0, 7))];
  return out;
}

void BM_Align(benchmark::State& state) {
  const auto ref = words(static_cast<std::size_t>(state.range(0)), 1);
  auto profile = asr::ErrorProfile::from_wer(0.065, 2, words(50, 3));
  profile.vocabulary = {"một", "hai", "ba", "chín", "mười"};
  const auto hyp = asr::corrupt(ref, profile).hyp;
  for (auto _ : state) benchmark::DoNotOptimize(eval::align(ref, hyp));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Align)->Arg(100)->Arg(1000);

const capu::CapuModel& capu_model() {
  static const capu::CapuModel model = [] {
    synth::SynthConfig sc;
    sc.documents = 40;
    std::vector<Token> flat;
    for (const auto& d : synth::generate_corpus(sc)) {
      for (const auto& s : d.sentences) {
        flat.insert(flat.end(), s.begin(), s.end());
      }
    }
    crf::TrainConfig tc;
    tc.mode = crf::TrainMode::kMiniBatch;
    tc.epochs = 2;
    tc.seed = 1;
    return capu::train_capu(segment_corpus(flat, 1), tc).model;
  }();
  return model;
}

void BM_StreamFormat(benchmark::State& state) {
  const auto& model = capu_model();
  const auto w = words(static_cast<std::size_t>(state.range(0)), 4);
  const chunk::ChunkConfig cfg{40, 10};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipeline::stream_format(model, w, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StreamFormat)->Arg(1000);

void BM_NormalizeText(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < 200; ++i) text += "Ông Nguyễn Văn An đến Hà Nội, hôm nay. ";
  for (auto _ : state) benchmark::DoNotOptimize(normalize_text(text));
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_NormalizeText);

}  // namespace

BENCHMARK_MAIN();
