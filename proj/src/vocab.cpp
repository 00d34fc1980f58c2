#include "windowlens/vocab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "windowlens/rng.hpp"

namespace windowlens {

int Vocabulary::sample_negative(std::mt19937_64 &rng) const {
  const double u = uniform01(rng);
  auto it = std::upper_bound(negative_cdf_.begin(), negative_cdf_.end(), u);
  if (it == negative_cdf_.end()) return static_cast<int>(negative_cdf_.size()) - 1;
  return static_cast<int>(it - negative_cdf_.begin());
}

Vocabulary build_vocabulary(std::istream &corpus, long long min_count) {
  std::unordered_map<std::string, long long> counts;
  std::string token;
  long long seen = 0;
  while (corpus >> token) {
    ++seen;
    ++counts[token];
  }
  return build_vocabulary_from_counts(counts, seen, min_count);
}

Vocabulary build_vocabulary_from_counts(const std::unordered_map<std::string, long long> &counts,
                                        long long tokens_seen, long long min_count) {
  if (tokens_seen == 0) throw std::runtime_error("empty corpus");

  Vocabulary v;
  for (auto &kv : counts) {
    if (kv.second >= min_count) v.entries_.push_back({kv.first, kv.second});
  }
  if (v.entries_.empty()) throw std::runtime_error("empty vocabulary");
  std::sort(v.entries_.begin(), v.entries_.end(), [](const VocabEntry &a, const VocabEntry &b) {
    if (a.count != b.count) return a.count > b.count;
    return a.word < b.word;
  });

  v.index_.reserve(v.entries_.size());
  for (std::size_t i = 0; i < v.entries_.size(); ++i) {
    v.index_[v.entries_[i].word] = static_cast<int>(i);
    v.total_tokens_ += v.entries_[i].count;
  }

  double z = 0.0;
  v.negative_probs_.resize(v.entries_.size());
  for (std::size_t i = 0; i < v.entries_.size(); ++i) {
    v.negative_probs_[i] = std::pow(static_cast<double>(v.entries_[i].count), 0.75);
    z += v.negative_probs_[i];
  }
  v.negative_cdf_.resize(v.entries_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < v.entries_.size(); ++i) {
    v.negative_probs_[i] /= z;
    acc += v.negative_probs_[i];
    v.negative_cdf_[i] = acc;
  }
  v.negative_cdf_.back() = 1.0;
  return v;
}

}  // namespace windowlens
