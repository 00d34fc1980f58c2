#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "windowlens/model.hpp"

namespace windowlens {

struct ScoredPair {
  std::string word1;
  std::string word2;
  double score = 0.0;
};

/// Word-similarity/relatedness benchmark: scored word pairs plus the
/// observed score extrema. Words are stored lowercased.
struct Benchmark {
  std::string name;
  std::vector<ScoredPair> pairs;
  double score_min = 0.0;
  double score_max = 0.0;
};

/// Canonical TSV "word1<TAB>word2<TAB>score"; '#' lines are comments.
/// Errors name the offending line.
Benchmark load_benchmark(std::istream &source, const std::string &name);

struct EvalResult {
  double rho = 0.0;       // Spearman between benchmark scores and cosines
  long long n_used = 0;
  long long n_oov_pairs = 0;
};

/// Pairs with either word out of vocabulary are skipped and counted. Throws
/// std::runtime_error("insufficient coverage") when fewer than 2 pairs
/// survive.
EvalResult evaluate(const EmbeddingModel &model, const Benchmark &benchmark);

/// Partition of pair indices by score band. The thresholds cut the observed
/// score range at 30% and 70%; boundaries are inclusive toward the extreme
/// bands.
struct RelatednessBands {
  std::vector<std::size_t> related;    // score >= high
  std::vector<std::size_t> unrelated;  // score <= low
  std::vector<std::size_t> ignored;    // middle 40%
  double low = 0.0;
  double high = 0.0;
};

/// Throws std::runtime_error("degenerate score range") on constant scores.
RelatednessBands band_partition(const Benchmark &benchmark);

/// Signed relative change, in percent, from rho_w2 to rho_w15.
double delta_win(double rho_w2, double rho_w15);

/// Converts "word1,word2,score" comma-separated lines to canonical TSV.
void convert_benchmark_csv(std::istream &in, std::ostream &out);

/// Converts tab-separated files with extra trailing columns, keeping columns
/// 1 and 2 plus the 1-based score column.
void convert_benchmark_tsv_columns(std::istream &in, std::ostream &out, int score_column);

}  // namespace windowlens
