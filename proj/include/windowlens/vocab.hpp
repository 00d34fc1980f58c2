#pragma once

#include <istream>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace windowlens {

struct VocabEntry {
  std::string word;
  long long count = 0;
};

/// Frequency-filtered vocabulary over a whitespace-tokenized corpus.
/// Entries are ordered by descending count, ties broken lexicographically,
/// so the word <-> id mapping is deterministic.
class Vocabulary {
 public:
  Vocabulary() = default;

  const std::vector<VocabEntry> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  long long total_tokens() const { return total_tokens_; }

  std::optional<int> find(const std::string &word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Unigram^0.75 sampling distribution used for negative draws.
  const std::vector<double> &negative_probs() const { return negative_probs_; }

  /// Draw a word id from the negative-sampling distribution.
  int sample_negative(std::mt19937_64 &rng) const;

  friend Vocabulary build_vocabulary_from_counts(
      const std::unordered_map<std::string, long long> &counts, long long tokens_seen,
      long long min_count);

 private:
  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, int> index_;
  long long total_tokens_ = 0;  // occurrences of retained words only
  std::vector<double> negative_probs_;
  std::vector<double> negative_cdf_;
};

/// Counts whitespace-delimited tokens and keeps those with frequency
/// >= min_count. Throws std::runtime_error("empty corpus") when the stream
/// has no tokens and ("empty vocabulary") when nothing survives the floor.
Vocabulary build_vocabulary(std::istream &corpus, long long min_count);

/// Same contract, from precomputed counts (tokens_seen includes dropped ones).
Vocabulary build_vocabulary_from_counts(const std::unordered_map<std::string, long long> &counts,
                                        long long tokens_seen, long long min_count);

}  // namespace windowlens
