#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "windowlens/model.hpp"

namespace windowlens {

struct LoadWarnings {
  std::size_t duplicate_words = 0;  // later occurrences dropped, first wins
  std::size_t zero_vectors = 0;     // words skipped
};

/// Parses word2vec text format. The first line is treated as a header when it
/// has exactly two integer fields. With a header and no max_words cap, a
/// mismatch between declared and present word count is an error naming both.
EmbeddingModel load_text_model(std::istream &source,
                               std::optional<std::size_t> max_words = std::nullopt,
                               LoadWarnings *warnings = nullptr);

/// Dot product of the stored unit rows, clamped to [-1, 1]. Symmetric.
/// Throws OovError for a word outside the vocabulary.
double cosine(const EmbeddingModel &model, const std::string &w1, const std::string &w2);

struct Neighbor {
  std::string word;
  double cosine = 0.0;
};

struct NeighborList {
  std::string pivot;
  std::vector<Neighbor> neighbors;  // descending cosine, ties by vocabulary index
  int k_requested = 0;
};

/// Exact top-k by cosine over the full vocabulary, pivot excluded. When a
/// filter set is given it is applied after retrieval, so the result may be
/// shorter than k.
NeighborList nearest_neighbors(const EmbeddingModel &model, const std::string &pivot, int k,
                               const std::unordered_set<std::string> *filter = nullptr);

/// Batch queries parallelized over pivots; results in input order.
std::vector<NeighborList> nearest_neighbors_batch(const EmbeddingModel &model,
                                                  std::span<const std::string> pivots, int k,
                                                  const std::unordered_set<std::string> *filter,
                                                  int jobs);

/// TSV dump: pivot <TAB> rank <TAB> neighbor <TAB> cosine.
void write_neighbor_tsv(std::ostream &out, std::span<const NeighborList> lists);

}  // namespace windowlens
