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

// speechner: command-line front end.
//
//   speechner convert   --in corpus.xml --out corpus.conll
//   speechner segment   --in corpus.conll --out samples.jsonl --seed 7
//   speechner train-capu --in samples.jsonl --out capu.json
//   speechner train-ner  --in train.conll --out ner.json
//   speechner format    --model capu.json [--in words.txt]
//   speechner tag       --model ner.json --in text.txt --out tagged.conll
//   speechner simulate  --in gold.conll --out hyp.conll --wer 0.065 --seed 3
//   speechner score     --gold gold.conll --hyp hyp.conll
//   speechner pipeline  --config experiment.json --out report.json
//   speechner synth     --out corpus.conll --seed 1
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 internal error.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "speechner/asr_sim.hpp"
#include "speechner/capu.hpp"
#include "speechner/chunk.hpp"
#include "speechner/corpus_io.hpp"
#include "speechner/crf.hpp"
#include "speechner/errors.hpp"
#include "speechner/eval.hpp"
#include "speechner/ner.hpp"
#include "speechner/pipeline.hpp"
#include "speechner/synth.hpp"
#include "speechner/unicode.hpp"

namespace {

using namespace speechner;
using nlohmann::json;
namespace fs = std::filesystem;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

/// Bad flag values discovered after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return read_file(path);
}

// Writes to a sibling temp file and renames it over path.
void write_atomic(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw DataError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw DataError("cannot rename onto " + path + ": " + ec.message());
  }
}

std::vector<Token> flatten(const Document& doc) {
  std::vector<Token> out;
  for (const auto& s : doc.sentences) out.insert(out.end(), s.begin(), s.end());
  return out;
}

// --- shared training flags -------------------------------------------------

struct TrainFlags {
  crf::TrainConfig config;
  std::string mode = "mini_batch";
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd, const crf::TrainConfig& defaults) {
    config = defaults;
    cmd->add_option("--epochs", config.epochs, "Training epochs")
        ->capture_default_str();
    cmd->add_option("--lr", config.learning_rate, "Initial learning rate")
        ->capture_default_str();
    cmd->add_option("--decay", config.decay, "Learning-rate decay per epoch")
        ->capture_default_str();
    cmd->add_option("--l2", config.l2, "L2 regularization strength")
        ->capture_default_str();
    cmd->add_option("--batch-size", config.batch_size, "Mini-batch size")
        ->capture_default_str();
    cmd->add_option("--mode", mode, "full_batch or mini_batch")
        ->check(CLI::IsMember({"full_batch", "mini_batch"}))
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Shuffling seed (required for mini_batch)");
  }

  crf::TrainConfig resolve() const {
    auto c = config;
    c.mode = mode == "full_batch" ? crf::TrainMode::kFullBatch
                                  : crf::TrainMode::kMiniBatch;
    if (c.mode == crf::TrainMode::kMiniBatch && !seed) {
      throw UsageError("--seed is required for mini_batch training");
    }
    if (c.epochs < 1 || c.batch_size < 1 || !(c.learning_rate > 0) ||
        c.l2 < 0 || c.decay < 0) {
      throw UsageError("training parameters out of range");
    }
    c.seed = seed.value_or(0);
    return c;
  }
};

std::string trace_json(const std::vector<double>& trace) {
  return json{{"objective", trace}}.dump(2) + "\n";
}

chunk::ChunkConfig chunk_config(std::size_t len, std::size_t overlap) {
  chunk::ChunkConfig c{len, overlap};
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

// --- CaPu samples as JSON lines -------------------------------------------

std::string samples_to_jsonl(const std::vector<capu::CapuSample>& samples) {
  const auto& names = capu::label_set();
  std::string out;
  for (const auto& s : samples) {
    json labels = json::array();
    for (const auto& l : s.labels) labels.push_back(names.name(l.index()));
    out += json{{"tokens", s.lower_tokens}, {"labels", labels}}.dump();
    out += '\n';
  }
  return out;
}

std::vector<capu::CapuSample> samples_from_jsonl(const std::string& text) {
  const auto& names = capu::label_set();
  std::vector<capu::CapuSample> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = json::parse(line);
      capu::CapuSample s;
      s.lower_tokens = j.at("tokens").get<std::vector<std::string>>();
      for (const auto& name : j.at("labels")) {
        const auto idx = names.index_of(name.get<std::string>());
        if (!idx) throw ParseError(lineno, "unknown CaPu label");
        s.labels.push_back(capu::CapuLabel::from_index(*idx));
      }
      if (s.labels.size() != s.lower_tokens.size() || s.labels.empty()) {
        throw ParseError(lineno, "token and label counts differ");
      }
      out.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (out.empty()) throw DataError("no CaPu samples");
  return out;
}

// --- subcommands ------------------------------------------------------------

void run_convert(const std::string& in, const std::string& out) {
  const auto docs = convert_nested_xml(read_input(in));
  write_atomic(out, write_conll_string(docs));
}

void run_segment(const std::string& in, const std::string& out,
                 std::uint64_t seed, bool plain) {
  const auto text = read_input(in);
  std::vector<Token> stream;
  if (plain) {
    stream = normalize_text(text);
  } else {
    for (const auto& d : read_conll_string(text)) {
      const auto flat = flatten(d);
      stream.insert(stream.end(), flat.begin(), flat.end());
    }
  }
  const auto samples = segment_corpus(stream, seed);
  if (samples.empty()) throw DataError("input too short for one segment");
  write_atomic(out, samples_to_jsonl(samples));
}

void run_train_capu(const std::string& in, const std::string& out,
                    const std::string& trace, const crf::TrainConfig& tc) {
  const auto samples = samples_from_jsonl(read_input(in));
  auto r = capu::train_capu(samples, tc);
  write_atomic(out, capu::to_json(r.model));
  if (!trace.empty()) write_atomic(trace, trace_json(r.objective_trace));
}

void run_train_ner(const std::string& in, const std::string& out,
                   const std::string& trace, const crf::TrainConfig& tc) {
  const auto docs = read_conll_string(read_input(in));
  for (const auto& d : docs) {
    if (!d.tagged()) throw DataError("training corpus must be tagged");
  }
  auto r = ner::train_ner(docs, tc);
  write_atomic(out, ner::to_json(r.model));
  if (!trace.empty()) write_atomic(trace, trace_json(r.objective_trace));
}

void run_format(const std::string& model_path, const std::string& in,
                const chunk::ChunkConfig& cc) {
  const auto model = capu::capu_from_json(read_file(model_path));
  bool line_open = false;
  chunk::StreamFormatter fmt(
      cc, pipeline::capu_formatter(model), [&](const Token& t) {
        if (line_open) std::cout << ' ';
        std::cout << t.text();
        line_open = true;
        if (t.punct_after == Punct::kPeriod) {
          std::cout << '\n' << std::flush;
          line_open = false;
        }
      });
  auto feed = [&](std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
      for (const auto& w : strip_formatting(normalize_text(line))) {
        fmt.push(w);
      }
    }
  };
  if (in.empty() || in == "-") {
    feed(std::cin);
  } else {
    std::ifstream f(in);
    if (!f) throw DataError("cannot open " + in);
    feed(f);
  }
  fmt.finish();
  if (line_open) std::cout << '\n';
  std::cout << std::flush;
}

// Plain text has several words on a line; CoNLL has one token per line.
bool looks_plain(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find('\t') != std::string::npos) return false;
    auto b = line.find_first_not_of(" \r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \r");
    if (line.find(' ', b) < e) return true;
  }
  return false;
}

void run_tag(const std::string& model_path, const std::string& in,
             const std::string& out, const std::string& input_format) {
  const auto model = ner::ner_from_json(read_file(model_path));
  const auto text = read_input(in);
  const bool plain = input_format == "text" ||
                     (input_format == "auto" && looks_plain(text));
  std::vector<Document> docs;
  if (plain) {
    Document d;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      auto toks = normalize_text(line);
      // Sentences end at periods or line ends.
      Sentence cur;
      for (auto& t : toks) {
        const bool end = t.punct_after == Punct::kPeriod;
        cur.push_back(std::move(t));
        if (end) d.sentences.push_back(std::move(cur)), cur.clear();
      }
      if (!cur.empty()) d.sentences.push_back(std::move(cur));
    }
    docs.push_back(std::move(d));
  } else {
    docs = read_conll_string(text);
  }
  for (auto& d : docs) {
    d.tags.clear();
    for (const auto& s : d.sentences) d.tags.push_back(ner::tag(model, s));
  }
  write_atomic(out, write_conll_string(docs));
}

asr::ErrorProfile profile_from_flags(std::optional<double> wer,
                                     std::optional<double> p_sub,
                                     std::optional<double> p_del,
                                     std::optional<double> p_ins,
                                     std::uint64_t seed,
                                     std::vector<std::string> vocab) {
  asr::ErrorProfile p;
  if (p_sub || p_del || p_ins) {
    if (wer) throw UsageError("--wer cannot be combined with explicit rates");
    p.p_sub = p_sub.value_or(0);
    p.p_del = p_del.value_or(0);
    p.p_ins = p_ins.value_or(0);
    p.seed = seed;
    p.vocabulary = std::move(vocab);
  } else {
    p = asr::ErrorProfile::from_wer(wer.value_or(0.065), seed,
                                    std::move(vocab));
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

void run_simulate(const std::string& in, const std::string& out,
                  const std::string& trace_path,
                  const asr::ErrorProfile& base,
                  const std::vector<Document>& docs) {
  (void)in;
  std::vector<Document> hyp_docs;
  json traces = json::array();
  for (std::size_t d = 0; d < docs.size(); ++d) {
    auto p = base;
    p.seed = mix_seed(base.seed, d);
    const auto ref = strip_formatting(flatten(docs[d]));
    auto c = asr::corrupt(ref, p);
    Document hd;
    Sentence s;
    for (auto& w : c.hyp) s.emplace_back(std::move(w), CaseClass::kLower,
                                         Punct::kNone);
    if (!s.empty()) hd.sentences.push_back(std::move(s));
    hyp_docs.push_back(std::move(hd));
    traces.push_back(json::parse(asr::trace_to_json(c.trace)));
  }
  const auto text = write_conll_string(hyp_docs);
  write_atomic(out, text);
  if (!trace_path.empty()) write_atomic(trace_path, traces.dump(2) + "\n");
}

void run_score(const std::string& gold_path, const std::string& hyp_path,
               const std::string& out) {
  const auto gold = read_conll_string(read_file(gold_path));
  const auto hyp = read_conll_string(read_file(hyp_path));
  if (gold.size() != hyp.size()) {
    throw DataError("gold has " + std::to_string(gold.size()) +
                    " documents, hypothesis has " + std::to_string(hyp.size()));
  }
  std::vector<std::vector<std::string>> words;
  std::vector<TagSequence> tags;
  for (std::size_t d = 0; d < hyp.size(); ++d) {
    if (!gold[d].tagged()) throw DataError("gold documents must be tagged");
    if (!hyp[d].tagged()) throw DataError("hypothesis documents must be tagged");
    std::vector<std::string> w;
    TagSequence t;
    for (std::size_t s = 0; s < hyp[d].sentences.size(); ++s) {
      for (const auto& tok : hyp[d].sentences[s]) w.push_back(tok.surface);
      t.insert(t.end(), hyp[d].tags[s].begin(), hyp[d].tags[s].end());
    }
    words.push_back(std::move(w));
    tags.push_back(std::move(t));
  }
  auto report = eval::evaluate_pipeline(gold, words, tags);
  std::cout << eval::to_table(report);
  if (!out.empty()) write_atomic(out, eval::to_json(report));
}

void run_synth(const std::string& out, const synth::SynthConfig& sc) {
  write_atomic(out, write_conll_string(synth::generate_corpus(sc)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Speech-to-named-entity toolkit: CaPu, NER, ASR simulation, "
               "scoring"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "speechner 0.1.0");

  std::string in, out, trace, model, input_format = "auto";
  std::optional<std::uint64_t> seed;
  std::size_t chunk_len = 40, overlap = 10;
  std::optional<double> wer, p_sub, p_del, p_ins;
  bool plain = false, quiet = false, no_capu = false;

  auto* convert = app.add_subcommand("convert", "Nested ENAMEX XML to CoNLL");
  convert->add_option("--in", in, "XML input (default stdin)");
  convert->add_option("--out", out, "CoNLL output (default stdout)");

  auto* segment = app.add_subcommand(
      "segment", "Cut a corpus into random-length CaPu training segments");
  segment->add_option("--in", in, "CoNLL (or --plain text) input");
  segment->add_option("--out", out, "JSON-lines samples output");
  segment->add_option("--seed", seed, "Segment-length seed")->required();
  segment->add_flag("--plain", plain, "Input is plain text");

  const auto defaults = pipeline::default_config();
  TrainFlags capu_flags, ner_flags;
  auto* train_capu =
      app.add_subcommand("train-capu", "Train the CaPu tagger on samples");
  train_capu->add_option("--in", in, "JSON-lines samples")->required();
  train_capu->add_option("--out", out, "Model JSON")->required();
  train_capu->add_option("--trace", trace, "Objective trace JSON");
  capu_flags.attach(train_capu, defaults.capu_train);

  auto* train_ner =
      app.add_subcommand("train-ner", "Train the NER tagger on tagged CoNLL");
  train_ner->add_option("--in", in, "Tagged CoNLL corpus")->required();
  train_ner->add_option("--out", out, "Model JSON")->required();
  train_ner->add_option("--trace", trace, "Objective trace JSON");
  ner_flags.attach(train_ner, defaults.ner_train);

  auto* format = app.add_subcommand(
      "format", "Chunked CaPu over a word stream (stdin to stdout)");
  format->add_option("--model", model, "CaPu model JSON")->required();
  format->add_option("--in", in, "Word stream (default stdin)");
  format->add_option("--chunk-len", chunk_len, "Chunk length L")
      ->capture_default_str();
  format->add_option("--overlap", overlap, "Chunk overlap K")
      ->capture_default_str();

  auto* tag = app.add_subcommand("tag", "NER tagging to CoNLL");
  tag->add_option("--model", model, "NER model JSON")->required();
  tag->add_option("--in", in, "Untagged CoNLL or plain text (default stdin)");
  tag->add_option("--out", out, "CoNLL output (default stdout)");
  tag->add_option("--input-format", input_format, "auto, conll or text")
      ->check(CLI::IsMember({"auto", "conll", "text"}))
      ->capture_default_str();

  auto* simulate = app.add_subcommand(
      "simulate", "Inject recognition errors into reference documents");
  simulate->add_option("--in", in, "Reference CoNLL")->required();
  simulate->add_option("--out", out, "Hypothesis words as untagged CoNLL");
  simulate->add_option("--trace", trace, "Injected edits as JSON");
  simulate->add_option("--seed", seed, "Corruption seed")->required();
  simulate->add_option("--wer", wer, "Target WER, split 60/25/15 (0.065)");
  simulate->add_option("--p-sub", p_sub, "Substitution rate");
  simulate->add_option("--p-del", p_del, "Deletion rate");
  simulate->add_option("--p-ins", p_ins, "Insertion rate");

  std::string gold, hyp;
  auto* score = app.add_subcommand(
      "score", "Align hypothesis to gold, project tags, score entities");
  score->add_option("--gold", gold, "Gold tagged CoNLL")->required();
  score->add_option("--hyp", hyp, "Hypothesis tagged CoNLL")->required();
  score->add_option("--out", out, "Canonical JSON report");

  std::string config_path, corpus, table;
  auto* pipe = app.add_subcommand(
      "pipeline", "End-to-end comparison over all input conditions");
  pipe->add_option("--config", config_path, "Experiment config JSON")
      ->required();
  pipe->add_option("--out", out, "Canonical JSON report");
  pipe->add_option("--table", table, "Comparison table output");
  pipe->add_option("--seed", seed, "Overrides config seed");
  pipe->add_option("--wer", wer, "Overrides config WER");
  auto* len_opt = pipe->add_option("--chunk-len", chunk_len, "Chunk length L");
  auto* ovl_opt = pipe->add_option("--overlap", overlap, "Chunk overlap K");
  pipe->add_option("--corpus", corpus, "Overrides config corpus");
  pipe->add_flag("--no-capu", no_capu, "Skip the CaPu rows");
  pipe->add_flag("-q,--quiet", quiet, "No progress on stderr");

  synth::SynthConfig sc;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate the bundled synthetic corpus");
  synth_cmd->add_option("--out", out, "CoNLL output (default stdout)");
  synth_cmd->add_option("--seed", sc.seed, "Generator seed")->required();
  synth_cmd->add_option("--documents", sc.documents, "Document count")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  std::string stage = app.get_subcommands().front()->get_name();
  try {
    if (*convert) {
      run_convert(in, out);
    } else if (*segment) {
      run_segment(in, out, *seed, plain);
    } else if (*train_capu) {
      run_train_capu(in, out, trace, capu_flags.resolve());
    } else if (*train_ner) {
      run_train_ner(in, out, trace, ner_flags.resolve());
    } else if (*format) {
      run_format(model, in, chunk_config(chunk_len, overlap));
    } else if (*tag) {
      run_tag(model, in, out, input_format);
    } else if (*simulate) {
      const auto docs = read_conll_string(read_file(in));
      const auto p = profile_from_flags(wer, p_sub, p_del, p_ins, *seed,
                                        synth::vocabulary(docs));
      run_simulate(in, out, trace, p, docs);
    } else if (*score) {
      run_score(gold, hyp, out);
    } else if (*pipe) {
      auto config = pipeline::parse_config(read_file(config_path));
      if (seed) config.seed = *seed;
      if (wer) {
        config.wer = *wer;
        config.rates.reset();
      }
      if (*len_opt) config.chunk.chunk_len = chunk_len;
      if (*ovl_opt) config.chunk.overlap = overlap;
      config.chunk = chunk_config(config.chunk.chunk_len, config.chunk.overlap);
      if (!corpus.empty()) config.corpus_path = corpus;
      if (no_capu) config.capu = false;
      if (config.corpus_path && !fs::exists(*config.corpus_path)) {
        throw DataError("corpus not found: " + *config.corpus_path);
      }
      pipeline::Logger log;
      if (!quiet) {
        log = [](std::string_view msg) { std::cerr << msg << '\n'; };
      }
      const auto result = pipeline::run_pipeline(config, log);
      const auto tbl = pipeline::comparison_table(result);
      std::cout << tbl;
      if (!table.empty()) write_atomic(table, tbl);
      if (!out.empty()) write_atomic(out, pipeline::to_json(result));
    } else if (*synth_cmd) {
      if (sc.documents == 0) throw UsageError("--documents must be positive");
      run_synth(out, sc);
    }
  } catch (const UsageError& e) {
    std::cerr << "speechner " << stage << ": usage: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "speechner " << stage << ": data error: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "speechner " << stage << ": data error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "speechner " << stage << ": internal error: " << e.what()
              << '\n';
    return kInternal;
  }
  return kOk;
}
