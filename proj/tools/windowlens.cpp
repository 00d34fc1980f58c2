// Command-line front end: training, evaluation, enrichment, and the
// window-size sweep, each emitting deterministic TSV reports.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "windowlens/analysis.hpp"
#include "windowlens/benchmarks.hpp"
#include "windowlens/corpusgen.hpp"
#include "windowlens/lexicon.hpp"
#include "windowlens/model.hpp"
#include "windowlens/stats.hpp"
#include "windowlens/text.hpp"
#include "windowlens/trainer.hpp"
#include "windowlens/vecstore.hpp"
#include "windowlens/version.hpp"

namespace wl = windowlens;
namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

/// Bad flag combinations or out-of-domain flag values; exits with code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return in;
}

std::ofstream open_output(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

std::string file_stem(const std::string &path) { return fs::path(path).stem().string(); }

std::string fmt(const char *format, double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

/// Provenance comment block carried by every report; no timestamps, so
/// repeated runs are byte-identical.
void write_report_header(std::ostream &out, const std::string &command_line,
                         std::optional<std::uint64_t> seed) {
  out << "# " << wl::kToolName << ' ' << wl::kToolVersion << '\n';
  out << "# command: " << command_line << '\n';
  if (seed) out << "# seed: " << *seed << '\n';
}

int default_jobs() {
  if (const char *env = std::getenv("WINDOWLENS_JOBS")) {
    const int j = std::atoi(env);
    if (j >= 1) return j;
  }
  return 1;
}

wl::PosLexicon load_pos_lexicon(const std::string &wordnet_dir, const std::string &mft_path) {
  wl::PosLexicon lex;
  if (!wordnet_dir.empty()) {
    const std::pair<const char *, wl::PosTag> indices[] = {
        {"index.noun", wl::PosTag::Noun},
        {"index.verb", wl::PosTag::Verb},
        {"index.adj", wl::PosTag::Adj},
        {"index.adv", wl::PosTag::Adv},
    };
    for (const auto &[file, tag] : indices) {
      const std::string path = (fs::path(wordnet_dir) / file).string();
      std::ifstream in = open_input(path);
      lex.add_wordnet(wl::parse_index(in, tag), tag);
    }
  }
  if (!mft_path.empty()) {
    std::ifstream in = open_input(mft_path);
    lex.set_mft(wl::load_mft_lexicon(in));
  }
  return lex;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string corpus, algo = "sgns", out;
  int dim = 100, window = 5, epochs = 5, negatives = 5, jobs = 1;
  long long min_count = 5;
  double lr = 0.05, subsample = 1e-4;
  std::uint64_t seed = 1;
  bool respect_lines = false;
};

wl::TrainConfig to_config(const TrainArgs &a) {
  const auto algo = wl::parse_algorithm(a.algo);
  if (!algo) throw UsageError("unknown algorithm '" + a.algo + "' (expected cbow or sgns)");
  if (a.window < 1) throw UsageError("window must be >= 1");
  if (a.dim < 1) throw UsageError("dim must be >= 1");
  if (a.epochs < 1) throw UsageError("epochs must be >= 1");
  if (!(a.lr > 0.0)) throw UsageError("learning rate must be > 0");
  if (a.negatives < 0) throw UsageError("negatives must be >= 0");
  if (*algo == wl::Algorithm::Sgns && a.negatives < 1)
    throw UsageError("sgns requires negatives >= 1");
  if (a.min_count < 0) throw UsageError("min-count must be >= 0");
  if (a.subsample < 0.0) throw UsageError("subsample must be >= 0");
  if (a.jobs < 1) throw UsageError("jobs must be >= 1");
  wl::TrainConfig cfg;
  cfg.algorithm = *algo;
  cfg.dim = a.dim;
  cfg.window = a.window;
  cfg.negatives = a.negatives;
  cfg.epochs = a.epochs;
  cfg.learning_rate = a.lr;
  cfg.min_count = a.min_count;
  cfg.subsample_threshold = a.subsample;
  cfg.seed = a.seed;
  cfg.workers = a.jobs;
  cfg.respect_lines = a.respect_lines;
  cfg.corpus_id = file_stem(a.corpus);
  return cfg;
}

void run_train(const TrainArgs &a) {
  const wl::TrainConfig cfg = to_config(a);
  std::ifstream corpus = open_input(a.corpus);
  wl::TrainReport report;
  const wl::EmbeddingModel model = wl::train(corpus, cfg, nullptr, &report);
  std::ofstream out = open_output(a.out);
  model.save_text(out);
  std::cerr << "vocabulary: " << report.vocab_size << " words, tokens: " << report.token_count
            << '\n';
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::vector<std::string> models;  // "window=path"
  std::vector<std::string> benchmarks;
  std::string out, algo = "model";
};

std::map<int, wl::EmbeddingModel> load_window_models(const std::vector<std::string> &specs) {
  std::map<int, wl::EmbeddingModel> models;
  for (const std::string &spec : specs) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("--model expects 'window=path', got '" + spec + "'");
    const int window = std::atoi(spec.substr(0, eq).c_str());
    if (window < 1) throw UsageError("--model window must be >= 1 in '" + spec + "'");
    if (models.count(window))
      throw UsageError("duplicate --model window " + std::to_string(window));
    const std::string path = spec.substr(eq + 1);
    std::ifstream in = open_input(path);
    models.emplace(window, wl::load_text_model(in));
  }
  return models;
}

void write_eval_rows(std::ostream &out, const std::string &algo,
                     const std::map<int, wl::EmbeddingModel> &models,
                     const std::vector<wl::Benchmark> &benchmarks) {
  std::map<std::string, std::map<int, double>> rho;  // benchmark -> window -> rho
  for (const wl::Benchmark &b : benchmarks) {
    for (const auto &[window, model] : models) {
      const wl::EvalResult r = wl::evaluate(model, b);
      rho[b.name][window] = r.rho;
      out << b.name << '\t' << algo << '\t' << window << '\t' << fmt("%.6f", r.rho) << '\t'
          << r.n_used << '\t' << r.n_oov_pairs << '\n';
    }
  }
  if (models.count(2) && models.count(15)) {
    for (const wl::Benchmark &b : benchmarks) {
      const double d = wl::delta_win(rho[b.name][2], rho[b.name][15]);
      out << b.name << '\t' << algo << "\tdelta_2_15_pct\t" << fmt("%.2f", d) << "\t-\t-\n";
    }
  }
}

void run_eval(const EvalArgs &a, const std::string &command_line) {
  const std::map<int, wl::EmbeddingModel> models = load_window_models(a.models);
  std::vector<wl::Benchmark> benchmarks;
  for (const std::string &path : a.benchmarks) {
    std::ifstream in = open_input(path);
    benchmarks.push_back(wl::load_benchmark(in, file_stem(path)));
  }
  std::ofstream out = open_output(a.out);
  write_report_header(out, command_line, std::nullopt);
  out << "benchmark\talgorithm\twindow\trho\tn_used\tn_oov\n";
  write_eval_rows(out, a.algo, models, benchmarks);
}

// ---------------------------------------------------------------------------
// enrich

struct EnrichArgs {
  std::vector<std::string> benchmarks;
  std::vector<std::string> counts;  // "name:rel,rel_same,unrel,unrel_same"
  std::string wordnet_dir, mft_lexicon, out;
};

wl::EnrichmentResult counts_fixture(const std::string &spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw UsageError("--counts expects 'name:rel,rel_same,unrel,unrel_same', got '" + spec + "'");
  const std::vector<std::string> nums = wl::split_char(spec.substr(colon + 1), ',');
  if (nums.size() != 4)
    throw UsageError("--counts expects 4 comma-separated counts in '" + spec + "'");
  wl::EnrichmentResult r;
  r.benchmark_name = spec.substr(0, colon);
  r.n_related = std::atoll(nums[0].c_str());
  r.n_related_same_pos = std::atoll(nums[1].c_str());
  r.n_unrelated = std::atoll(nums[2].c_str());
  r.n_unrelated_same_pos = std::atoll(nums[3].c_str());
  const wl::ContingencyCounts c{r.n_related + r.n_unrelated,
                                r.n_related_same_pos + r.n_unrelated_same_pos, r.n_related,
                                r.n_related_same_pos};
  r.p_value = wl::hypergeom_sf(c);
  return r;
}

void run_enrich(const EnrichArgs &a, const std::string &command_line) {
  if (a.benchmarks.empty() && a.counts.empty()) throw UsageError("need --benchmark or --counts");
  if (!a.benchmarks.empty() && a.mft_lexicon.empty())
    throw UsageError("--mft-lexicon is required with --benchmark");

  std::vector<wl::EnrichmentResult> rows;
  if (!a.benchmarks.empty()) {
    const wl::PosLexicon lex = load_pos_lexicon(a.wordnet_dir, a.mft_lexicon);
    for (const std::string &path : a.benchmarks) {
      std::ifstream in = open_input(path);
      const wl::Benchmark b = wl::load_benchmark(in, file_stem(path));
      rows.push_back(wl::enrichment(b, wl::band_partition(b), lex));
    }
  }
  for (const std::string &spec : a.counts) rows.push_back(counts_fixture(spec));

  std::ofstream out = open_output(a.out);
  write_report_header(out, command_line, std::nullopt);
  out << "benchmark\tn_related\trelated_same_pos\tn_unrelated\tunrelated_same_pos\tp_value\t"
         "n_skipped\n";
  for (const wl::EnrichmentResult &r : rows) {
    out << r.benchmark_name << '\t' << r.n_related << '\t' << r.n_related_same_pos << '\t'
        << r.n_unrelated << '\t' << r.n_unrelated_same_pos << '\t' << fmt("%.6g", r.p_value)
        << '\t' << r.n_skipped << '\n';
  }
}

// ---------------------------------------------------------------------------
// sweep

struct SweepSpec {
  std::string corpus;
  std::vector<std::string> algorithms = {"cbow", "sgns"};
  std::vector<int> windows;
  int dim = 100, epochs = 5, negatives = 5, k_search = 100, k_keep = 10, jobs = 1, workers = 1;
  long long min_count = 5;
  double learning_rate = 0.05, subsample = 1e-4;
  std::uint64_t seed = 1;
  bool respect_lines = false;
  std::string mft_lexicon, wordnet_dir, output_dir, models_dir;
  std::vector<std::string> benchmarks;
  bool save_models = false;
};

std::vector<int> parse_int_list(const std::string &value) {
  std::vector<int> out;
  for (const std::string &f : wl::split_char(value, ','))
    if (!f.empty()) out.push_back(std::atoi(f.c_str()));
  return out;
}

SweepSpec parse_sweep_spec(std::istream &in) {
  SweepSpec s;
  s.algorithms.clear();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = wl::strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "sweep spec: expected key=value at line " << line_no;
      throw std::runtime_error(os.str());
    }
    const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "corpus") s.corpus = value;
    else if (key == "algorithms") s.algorithms = wl::split_char(value, ',');
    else if (key == "windows") s.windows = parse_int_list(value);
    else if (key == "dim") s.dim = std::atoi(value.c_str());
    else if (key == "epochs") s.epochs = std::atoi(value.c_str());
    else if (key == "negatives") s.negatives = std::atoi(value.c_str());
    else if (key == "min_count") s.min_count = std::atoll(value.c_str());
    else if (key == "learning_rate") s.learning_rate = std::atof(value.c_str());
    else if (key == "subsample") s.subsample = std::atof(value.c_str());
    else if (key == "seed") s.seed = std::strtoull(value.c_str(), nullptr, 10);
    else if (key == "respect_lines") s.respect_lines = value == "1" || value == "true";
    else if (key == "mft_lexicon") s.mft_lexicon = value;
    else if (key == "wordnet_dir") s.wordnet_dir = value;
    else if (key == "output_dir") s.output_dir = value;
    else if (key == "models_dir") s.models_dir = value;
    else if (key == "benchmarks") s.benchmarks = wl::split_char(value, ',');
    else if (key == "k_search") s.k_search = std::atoi(value.c_str());
    else if (key == "k_keep") s.k_keep = std::atoi(value.c_str());
    else if (key == "jobs") s.jobs = std::atoi(value.c_str());
    else if (key == "workers") s.workers = std::atoi(value.c_str());
    else if (key == "save_models") s.save_models = value == "1" || value == "true";
    else {
      std::ostringstream os;
      os << "sweep spec: unknown key '" << key << "' at line " << line_no;
      throw std::runtime_error(os.str());
    }
  }
  if (s.algorithms.empty()) s.algorithms = {"cbow", "sgns"};
  return s;
}

struct SweepTask {
  wl::Algorithm algorithm;
  int window = 0;
};

void run_sweep(const SweepSpec &s, const std::string &command_line) {
  if (s.windows.size() < 3) throw std::runtime_error("sweep needs >= 3 windows");
  for (std::size_t i = 1; i < s.windows.size(); ++i)
    if (s.windows[i] <= s.windows[i - 1])
      throw std::runtime_error("sweep windows must be strictly increasing");
  if (s.output_dir.empty()) throw UsageError("--output-dir (or output_dir=) is required");
  if (s.mft_lexicon.empty()) throw UsageError("--mft-lexicon (or mft_lexicon=) is required");
  if (s.corpus.empty() && s.models_dir.empty())
    throw UsageError("need a corpus to train on or a models dir to load from");

  std::vector<wl::Algorithm> algos;
  for (const std::string &name : s.algorithms) {
    const auto a = wl::parse_algorithm(name);
    if (!a) throw UsageError("unknown algorithm '" + name + "'");
    algos.push_back(*a);
  }

  const wl::PosLexicon lex = [&] {
    if (!s.wordnet_dir.empty()) return load_pos_lexicon(s.wordnet_dir, s.mft_lexicon);
    std::ifstream in = open_input(s.mft_lexicon);
    return wl::make_gold_lexicon(wl::load_mft_lexicon(in));
  }();
  const wl::PivotLists pivots = wl::build_pivots(lex);

  fs::create_directories(s.output_dir);

  // Independent (algorithm, window) jobs bounded by --jobs; report assembly
  // below is serialized and ordered.
  std::vector<SweepTask> tasks;
  for (const wl::Algorithm a : algos)
    for (const int w : s.windows) tasks.push_back({a, w});
  std::vector<std::optional<wl::EmbeddingModel>> models(tasks.size());
  std::vector<std::string> task_errors(tasks.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
      const SweepTask &t = tasks[i];
      try {
        if (!s.models_dir.empty()) {
          const std::string path =
              (fs::path(s.models_dir) /
               (wl::to_string(t.algorithm) + "_w" + std::to_string(t.window) + ".vec"))
                  .string();
          std::ifstream in = open_input(path);
          models[i] = wl::load_text_model(in);
        } else {
          wl::TrainConfig cfg;
          cfg.algorithm = t.algorithm;
          cfg.dim = s.dim;
          cfg.window = t.window;
          cfg.negatives = s.negatives;
          cfg.epochs = s.epochs;
          cfg.learning_rate = s.learning_rate;
          cfg.min_count = s.min_count;
          cfg.subsample_threshold = s.subsample;
          cfg.seed = s.seed;
          cfg.workers = s.workers;
          cfg.respect_lines = s.respect_lines;
          cfg.corpus_id = file_stem(s.corpus);
          std::ifstream corpus = open_input(s.corpus);
          models[i] = wl::train(corpus, cfg);
        }
      } catch (const std::exception &e) {
        task_errors[i] = e.what();
      }
    }
  };
  const int jobs = std::max(1, s.jobs);
  if (jobs == 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < std::min<int>(jobs, static_cast<int>(tasks.size())); ++j)
      pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }

  std::vector<std::string> failures;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!task_errors[i].empty()) {
      std::ostringstream os;
      os << wl::to_string(tasks[i].algorithm) << " window " << tasks[i].window << ": "
         << task_errors[i];
      failures.push_back(os.str());
    }
  }

  if (s.save_models) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (!models[i]) continue;
      const std::string path =
          (fs::path(s.output_dir) /
           (wl::to_string(tasks[i].algorithm) + "_w" + std::to_string(tasks[i].window) + ".vec"))
              .string();
      std::ofstream out = open_output(path);
      models[i]->save_text(out);
    }
  }

  std::ofstream sweep_out = open_output((fs::path(s.output_dir) / "sweep.tsv").string());
  write_report_header(sweep_out, command_line, s.seed);
  sweep_out << "kind\talgorithm\tpivot_pos\twindow\tneighbor_pos\tcount\tsame_pos_ratio\n";
  sweep_out << "# summary rows: kind algorithm pivot_pos first_ratio last_ratio pearson_r "
               "p_value\n";

  for (const wl::Algorithm algo : algos) {
    std::map<int, wl::EmbeddingModel> by_window;
    for (std::size_t i = 0; i < tasks.size(); ++i)
      if (tasks[i].algorithm == algo && models[i]) by_window.emplace(tasks[i].window, *models[i]);
    if (by_window.size() < 3) {
      std::ostringstream os;
      os << wl::to_string(algo) << ": only " << by_window.size()
         << " models available, sweep needs >= 3 windows";
      failures.push_back(os.str());
      continue;
    }
    wl::SweepResult result;
    try {
      result = wl::window_sweep(by_window, pivots, lex, s.k_search, s.k_keep, s.jobs);
    } catch (const std::exception &e) {
      failures.push_back(std::string(wl::to_string(algo)) + ": " + e.what());
      continue;
    }
    for (const auto &[window, hists] : result.histograms) {
      for (const auto &[tag, h] : hists) {
        const double ratio = wl::same_pos_ratio(h);
        for (int nb = 0; nb < wl::kPosTagCount; ++nb) {
          sweep_out << "hist\t" << wl::to_string(algo) << '\t' << wl::to_string(tag) << '\t'
                    << window << '\t' << wl::to_string(static_cast<wl::PosTag>(nb)) << '\t'
                    << h.counts[static_cast<std::size_t>(nb)] << '\t' << fmt("%.6f", ratio)
                    << '\n';
        }
      }
    }
    for (const auto &[tag, series] : result.series) {
      sweep_out << "summary\t" << wl::to_string(algo) << '\t' << wl::to_string(tag) << '\t'
                << fmt("%.6f", series.points.front().second) << '\t'
                << fmt("%.6f", series.points.back().second) << '\t'
                << fmt("%.6f", series.pearson_r) << '\t' << fmt("%.6g", series.p_value) << '\n';
    }

    if (!s.benchmarks.empty()) {
      std::vector<wl::Benchmark> benchmarks;
      for (const std::string &path : s.benchmarks) {
        std::ifstream in = open_input(path);
        benchmarks.push_back(wl::load_benchmark(in, file_stem(path)));
      }
      const std::string eval_path =
          (fs::path(s.output_dir) / (std::string("eval_") + wl::to_string(algo) + ".tsv"))
              .string();
      std::ofstream eval_out = open_output(eval_path);
      write_report_header(eval_out, command_line, s.seed);
      eval_out << "benchmark\talgorithm\twindow\trho\tn_used\tn_oov\n";
      write_eval_rows(eval_out, wl::to_string(algo), by_window, benchmarks);
    }
  }

  if (!failures.empty()) {
    for (const std::string &f : failures) std::cerr << "error: " << f << '\n';
    throw std::runtime_error("sweep finished with " + std::to_string(failures.size()) +
                             " failed job(s)");
  }
}

// ---------------------------------------------------------------------------
// pivots / neighbors / import / generate

void run_pivots(const std::string &wordnet_dir, const std::string &mft_path,
                const std::string &out_path, const std::string &command_line) {
  const wl::PosLexicon lex = load_pos_lexicon(wordnet_dir, mft_path);
  const wl::PivotLists pivots = wl::build_pivots(lex);
  std::ofstream out = open_output(out_path);
  write_report_header(out, command_line, std::nullopt);
  for (const wl::PosTag tag : wl::kPivotTags)
    for (const std::string &w : pivots.list(tag)) out << w << '\t' << wl::to_string(tag) << '\n';
  std::cerr << "pivots: NOUN " << pivots.nouns.size() << ", ADJ " << pivots.adjectives.size()
            << ", VERB " << pivots.verbs.size() << '\n';
}

void run_neighbors(const std::string &model_path, const std::vector<std::string> &words, int k,
                   const std::string &filter_lexicon, const std::string &out_path) {
  if (k < 0) throw UsageError("k must be >= 0");
  std::ifstream in = open_input(model_path);
  const wl::EmbeddingModel model = wl::load_text_model(in);
  std::optional<std::unordered_set<std::string>> filter;
  if (!filter_lexicon.empty()) {
    std::ifstream fin = open_input(filter_lexicon);
    const wl::MftLexicon mft = wl::load_mft_lexicon(fin);
    filter.emplace();
    for (const auto &[w, tag] : mft.tags) filter->insert(w);
  }
  const std::vector<wl::NeighborList> lists =
      wl::nearest_neighbors_batch(model, words, k, filter ? &*filter : nullptr, default_jobs());
  std::ofstream out = open_output(out_path);
  wl::write_neighbor_tsv(out, lists);
}

/// Lowercases and maps non-alphanumeric bytes to spaces.
void run_import_corpus(const std::string &in_path, const std::string &out_path) {
  std::ifstream in = open_input(in_path);
  std::ofstream out = open_output(out_path);
  std::string line;
  while (std::getline(in, line)) {
    for (char &c : line) {
      const unsigned char u = static_cast<unsigned char>(c);
      if (std::isalnum(u))
        c = static_cast<char>(std::tolower(u));
      else
        c = ' ';
    }
    out << line << '\n';
  }
}

void run_import_benchmark(const std::string &in_path, const std::string &out_path,
                          const std::string &format, int score_col) {
  std::ifstream in = open_input(in_path);
  std::ofstream out = open_output(out_path);
  if (format == "csv") {
    wl::convert_benchmark_csv(in, out);
  } else if (format == "tsv") {
    wl::convert_benchmark_tsv_columns(in, out, score_col);
  } else {
    throw UsageError("unknown format '" + format + "' (expected csv or tsv)");
  }
}

void run_generate(const std::string &grammar_path, const std::string &out_corpus,
                  const std::string &out_lexicon, std::optional<std::uint64_t> seed) {
  std::ifstream in = open_input(grammar_path);
  wl::SyntheticGrammar grammar = wl::parse_grammar(in);
  if (seed) grammar.seed = *seed;
  const wl::GeneratedCorpus corpus = wl::generate(grammar);
  {
    std::ofstream out = open_output(out_corpus);
    for (const std::string &s : corpus.sentences) out << s << '\n';
  }
  {
    std::ofstream out = open_output(out_lexicon);
    std::vector<std::pair<std::string, wl::PosTag>> sorted(corpus.gold.tags.begin(),
                                                           corpus.gold.tags.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto &[w, tag] : sorted) out << w << '\t' << wl::to_string(tag) << '\n';
  }
  std::cerr << "generated " << corpus.sentences.size() << " sentences, "
            << corpus.gold.tags.size() << " lexicon words\n";
}

std::string join_args(int argc, char **argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char **argv) {
  const std::string command_line = join_args(argc, argv);
  CLI::App app{std::string(wl::kToolName) +
               " - context-window experiments for word embedding models"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string(wl::kToolName) + " " + std::string(wl::kToolVersion));

  TrainArgs train_args;
  train_args.jobs = default_jobs();
  CLI::App *train = app.add_subcommand("train", "train a CBOW or SGNS model");
  train->add_option("--corpus", train_args.corpus, "plain-text corpus")->required();
  train->add_option("--algo", train_args.algo, "cbow or sgns");
  train->add_option("--dim", train_args.dim, "vector dimension");
  train->add_option("--window", train_args.window, "max context window");
  train->add_option("--negatives", train_args.negatives, "negative samples per target");
  train->add_option("--epochs", train_args.epochs, "training epochs");
  train->add_option("--lr", train_args.lr, "initial learning rate");
  train->add_option("--min-count", train_args.min_count, "vocabulary frequency floor");
  train->add_option("--subsample", train_args.subsample, "frequent-word subsample threshold");
  train->add_option("--seed", train_args.seed, "RNG seed");
  train->add_option("--jobs", train_args.jobs, "training workers (>1 is non-deterministic)");
  train->add_flag("--respect-lines", train_args.respect_lines,
                  "windows never cross newline boundaries");
  train->add_option("--out", train_args.out, "output model path")->required();

  EvalArgs eval_args;
  CLI::App *eval = app.add_subcommand("eval", "evaluate models on similarity benchmarks");
  eval->add_option("--model", eval_args.models, "window=path (repeatable)")->required();
  eval->add_option("--benchmark", eval_args.benchmarks, "benchmark TSV (repeatable)")->required();
  eval->add_option("--algo", eval_args.algo, "algorithm label for the report");
  eval->add_option("--out", eval_args.out, "output report TSV")->required();

  EnrichArgs enrich_args;
  CLI::App *enrich = app.add_subcommand("enrich", "same-POS enrichment in benchmark bands");
  enrich->add_option("--benchmark", enrich_args.benchmarks, "benchmark TSV (repeatable)");
  enrich->add_option("--counts", enrich_args.counts,
                     "name:rel,rel_same,unrel,unrel_same fixture (repeatable)");
  enrich->add_option("--wordnet-dir", enrich_args.wordnet_dir,
                     "directory with index.noun/.verb/.adj/.adv");
  enrich->add_option("--mft-lexicon", enrich_args.mft_lexicon, "word<TAB>TAG lexicon");
  enrich->add_option("--out", enrich_args.out, "output report TSV")->required();

  SweepSpec sweep_spec;
  sweep_spec.jobs = default_jobs();
  std::string sweep_spec_path;
  CLI::App *sweep = app.add_subcommand("sweep", "same-POS neighbor ratio across window sizes");
  sweep->add_option("--spec", sweep_spec_path, "key=value sweep spec file");
  sweep->add_option("--corpus", sweep_spec.corpus, "plain-text corpus");
  sweep->add_option("--algos", sweep_spec.algorithms, "algorithms (repeatable)");
  sweep->add_option("--window", sweep_spec.windows, "window size (repeatable)");
  sweep->add_option("--dim", sweep_spec.dim, "vector dimension");
  sweep->add_option("--epochs", sweep_spec.epochs, "training epochs");
  sweep->add_option("--negatives", sweep_spec.negatives, "negative samples");
  sweep->add_option("--min-count", sweep_spec.min_count, "vocabulary floor");
  sweep->add_option("--lr", sweep_spec.learning_rate, "initial learning rate");
  sweep->add_option("--subsample", sweep_spec.subsample, "subsample threshold");
  sweep->add_option("--seed", sweep_spec.seed, "RNG seed");
  sweep->add_option("--mft-lexicon", sweep_spec.mft_lexicon, "word<TAB>TAG lexicon");
  sweep->add_option("--wordnet-dir", sweep_spec.wordnet_dir, "lexical database index dir");
  sweep->add_option("--benchmark", sweep_spec.benchmarks, "benchmark TSV (repeatable)");
  sweep->add_option("--models-dir", sweep_spec.models_dir,
                    "load <algo>_w<window>.vec instead of training");
  sweep->add_option("--k-search", sweep_spec.k_search, "neighbors retrieved");
  sweep->add_option("--k-keep", sweep_spec.k_keep, "lexicon-known neighbors kept");
  sweep->add_option("--jobs", sweep_spec.jobs, "concurrent (algorithm, window) jobs");
  sweep->add_flag("--save-models", sweep_spec.save_models, "write trained models");
  sweep->add_option("--output-dir", sweep_spec.output_dir, "report directory");

  std::string pivots_wordnet, pivots_mft, pivots_out;
  CLI::App *pivots = app.add_subcommand("pivots", "build purified per-POS pivot lists");
  pivots->add_option("--wordnet-dir", pivots_wordnet, "lexical database index dir")->required();
  pivots->add_option("--mft-lexicon", pivots_mft, "word<TAB>TAG lexicon")->required();
  pivots->add_option("--out", pivots_out, "output TSV")->required();

  std::string nb_model, nb_filter, nb_out;
  std::vector<std::string> nb_words;
  int nb_k = 10;
  CLI::App *neighbors = app.add_subcommand("neighbors", "dump nearest neighbors");
  neighbors->add_option("--model", nb_model, "model file")->required();
  neighbors->add_option("--word", nb_words, "pivot word (repeatable)")->required();
  neighbors->add_option("--k", nb_k, "neighbors per pivot");
  neighbors->add_option("--filter-lexicon", nb_filter, "restrict neighbors to lexicon words");
  neighbors->add_option("--out", nb_out, "output TSV")->required();

  std::string ic_in, ic_out;
  CLI::App *import_corpus = app.add_subcommand("import-corpus", "lowercase and strip punctuation");
  import_corpus->add_option("--in", ic_in, "raw text")->required();
  import_corpus->add_option("--out", ic_out, "normalized corpus")->required();

  std::string ib_in, ib_out, ib_format = "csv";
  int ib_score_col = 3;
  CLI::App *import_benchmark =
      app.add_subcommand("import-benchmark", "convert a benchmark file to canonical TSV");
  import_benchmark->add_option("--in", ib_in, "source file")->required();
  import_benchmark->add_option("--out", ib_out, "canonical TSV")->required();
  import_benchmark->add_option("--format", ib_format, "csv or tsv");
  import_benchmark->add_option("--score-col", ib_score_col, "1-based score column (tsv format)");

  std::string gc_grammar, gc_corpus, gc_lexicon;
  std::optional<std::uint64_t> gc_seed;
  CLI::App *generate = app.add_subcommand("generate-corpus", "synthetic corpus with POS classes");
  generate->add_option("--grammar", gc_grammar, "grammar spec file")->required();
  generate->add_option("--out-corpus", gc_corpus, "corpus output")->required();
  generate->add_option("--out-lexicon", gc_lexicon, "gold lexicon TSV output")->required();
  generate->add_option("--seed", gc_seed, "override grammar seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (train->parsed()) {
      run_train(train_args);
    } else if (eval->parsed()) {
      run_eval(eval_args, command_line);
    } else if (enrich->parsed()) {
      run_enrich(enrich_args, command_line);
    } else if (sweep->parsed()) {
      SweepSpec spec = sweep_spec;
      if (!sweep_spec_path.empty()) {
        std::ifstream in = open_input(sweep_spec_path);
        spec = parse_sweep_spec(in);
      }
      run_sweep(spec, command_line);
    } else if (pivots->parsed()) {
      run_pivots(pivots_wordnet, pivots_mft, pivots_out, command_line);
    } else if (neighbors->parsed()) {
      run_neighbors(nb_model, nb_words, nb_k, nb_filter, nb_out);
    } else if (import_corpus->parsed()) {
      run_import_corpus(ic_in, ic_out);
    } else if (import_benchmark->parsed()) {
      run_import_benchmark(ib_in, ib_out, ib_format, ib_score_col);
    } else if (generate->parsed()) {
      run_generate(gc_grammar, gc_corpus, gc_lexicon, gc_seed);
    }
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
