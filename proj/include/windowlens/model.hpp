#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace windowlens {

struct Provenance {
  std::string algorithm;
  int window = 0;
  std::string corpus_id;
};

/// Immutable vocabulary + unit-normalized vector matrix. Rows are stored
/// normalized; the pre-normalization norms are kept per word. Safe for
/// concurrent read-only access.
class EmbeddingModel {
 public:
  /// Takes raw (unnormalized) row-major vectors. Throws on a zero row,
  /// a duplicate word, or a size mismatch.
  EmbeddingModel(std::vector<std::string> words, std::vector<float> row_major, int dim,
                 std::optional<Provenance> provenance = std::nullopt);

  std::size_t size() const { return words_.size(); }
  int dim() const { return dim_; }

  const std::string &word(std::size_t i) const { return words_[i]; }
  std::span<const float> row(std::size_t i) const {
    return {vectors_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  float raw_norm(std::size_t i) const { return raw_norms_[i]; }

  std::optional<std::size_t> find(const std::string &word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::optional<Provenance> &provenance() const { return provenance_; }

  /// word2vec text format: "<vocab> <dim>" header, then one word per line.
  void save_text(std::ostream &out) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> vectors_;  // row-major, unit rows
  std::vector<float> raw_norms_;
  int dim_ = 0;
  std::optional<Provenance> provenance_;
};

}  // namespace windowlens
