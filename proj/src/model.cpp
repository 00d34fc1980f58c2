#include "windowlens/model.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace windowlens {

EmbeddingModel::EmbeddingModel(std::vector<std::string> words, std::vector<float> row_major,
                               int dim, std::optional<Provenance> provenance)
    : words_(std::move(words)),
      vectors_(std::move(row_major)),
      dim_(dim),
      provenance_(std::move(provenance)) {
  if (dim_ < 1) throw std::runtime_error("model dimension must be >= 1");
  if (vectors_.size() != words_.size() * static_cast<std::size_t>(dim_))
    throw std::runtime_error("model matrix size does not match vocabulary");
  if (words_.empty()) throw std::runtime_error("empty model");

  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second)
      throw std::runtime_error("duplicate word in model: " + words_[i]);
  }

  raw_norms_.resize(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    float *r = vectors_.data() + i * static_cast<std::size_t>(dim_);
    double s = 0.0;
    for (int d = 0; d < dim_; ++d) s += static_cast<double>(r[d]) * r[d];
    const double norm = std::sqrt(s);
    if (norm == 0.0) throw std::runtime_error("zero vector for word: " + words_[i]);
    raw_norms_[i] = static_cast<float>(norm);
    const float inv = static_cast<float>(1.0 / norm);
    for (int d = 0; d < dim_; ++d) r[d] *= inv;
  }
}

void EmbeddingModel::save_text(std::ostream &out) const {
  out << words_.size() << ' ' << dim_ << '\n';
  char buf[32];
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out << words_[i];
    const std::span<const float> r = row(i);
    for (int d = 0; d < dim_; ++d) {
      std::snprintf(buf, sizeof(buf), "%.8g", static_cast<double>(r[d]));
      out << ' ' << buf;
    }
    out << '\n';
  }
}

}  // namespace windowlens
