#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "windowlens/benchmarks.hpp"
#include "windowlens/lexicon.hpp"
#include "windowlens/model.hpp"

namespace windowlens {

/// True iff both words carry the same most-frequent tag; empty when either
/// word is absent from the lexicon.
std::optional<bool> same_pos(const PosLexicon &lex, const std::string &w1, const std::string &w2);

/// Same-POS counts among related and unrelated band pairs plus the
/// hypergeometric enrichment p-value. Pairs with a lexicon-unknown word are
/// excluded from the population and counted in n_skipped.
struct EnrichmentResult {
  std::string benchmark_name;
  long long n_related = 0;
  long long n_related_same_pos = 0;
  long long n_unrelated = 0;
  long long n_unrelated_same_pos = 0;
  double p_value = 1.0;
  long long n_skipped = 0;
};

/// Throws std::runtime_error("empty band ...") when either band has no
/// POS-known pairs.
EnrichmentResult enrichment(const Benchmark &benchmark, const RelatednessBands &bands,
                            const PosLexicon &lex);

/// POS tallies over the retained nearest neighbors of one pivot list.
struct NeighborPosHistogram {
  PosTag pivot_pos = PosTag::Noun;
  std::array<long long, kPosTagCount> counts{};
  long long n_pivots_used = 0;     // pivots found in the model vocabulary
  long long n_pivots_skipped = 0;  // pivots absent from the model
  int k_keep = 0;
};

/// For each pivot present in the model: retrieve k_search exact neighbors,
/// drop those unknown to the lexicon, keep the first k_keep survivors, and
/// tally their tags. Throws when a POS has no usable pivots, naming it.
std::map<PosTag, NeighborPosHistogram> neighbor_pos_histogram(const EmbeddingModel &model,
                                                              const PivotLists &pivots,
                                                              const PosLexicon &lex,
                                                              int k_search = 100, int k_keep = 10,
                                                              int jobs = 1);

/// counts[pivot_pos] / sum(counts). Throws on an all-zero histogram.
double same_pos_ratio(const NeighborPosHistogram &h);

/// Same-POS ratio per window for one pivot POS, with the Pearson correlation
/// of ratio against window size and its two-tailed p-value.
struct SweepSeries {
  std::vector<std::pair<int, double>> points;  // (window, ratio), windows ascending
  double pearson_r = 0.0;
  double p_value = 1.0;
};

/// Fills pearson_r / p_value from the points. Constant ratios surface as
/// std::runtime_error("degenerate sweep").
SweepSeries sweep_series(std::vector<std::pair<int, double>> points);

struct SweepResult {
  std::map<PosTag, SweepSeries> series;
  std::map<int, std::map<PosTag, NeighborPosHistogram>> histograms;  // per window
};

/// Runs the histogram per window and correlates ratios with window size.
/// Requires >= 3 windows; models must share dimension (and algorithm, when
/// provenance is present).
SweepResult window_sweep(const std::map<int, EmbeddingModel> &models, const PivotLists &pivots,
                         const PosLexicon &lex, int k_search = 100, int k_keep = 10, int jobs = 1);

}  // namespace windowlens
