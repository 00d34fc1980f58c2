#include "windowlens/vecstore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "windowlens/errors.hpp"
#include "windowlens/text.hpp"

namespace windowlens {

namespace {

bool is_integer_field(const std::string &s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

double parse_value(const std::string &field, std::size_t line_no) {
  char *end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0' || !std::isfinite(v)) {
    std::ostringstream os;
    os << "bad vector value '" << field << "' at line " << line_no;
    throw std::runtime_error(os.str());
  }
  return v;
}

}  // namespace

EmbeddingModel load_text_model(std::istream &source, std::optional<std::size_t> max_words,
                               LoadWarnings *warnings) {
  LoadWarnings local;
  LoadWarnings &warn = warnings ? *warnings : local;
  warn = LoadWarnings{};

  std::string line;
  std::size_t line_no = 0;
  long long declared_words = -1;
  int dim = -1;
  bool first = true;

  std::vector<std::string> words;
  std::vector<float> matrix;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t data_lines = 0;

  while (std::getline(source, line)) {
    ++line_no;
    std::vector<std::string> fields = split_ws(strip_cr(line));
    if (fields.empty()) continue;

    if (first) {
      first = false;
      if (fields.size() == 2 && is_integer_field(fields[0]) && is_integer_field(fields[1])) {
        declared_words = std::atoll(fields[0].c_str());
        dim = std::atoi(fields[1].c_str());
        if (dim < 1) throw std::runtime_error("model header declares dimension < 1");
        continue;
      }
    }

    if (max_words && words.size() >= *max_words) break;
    ++data_lines;
    if (dim < 0) {
      if (fields.size() < 2) {
        std::ostringstream os;
        os << "no vector values at line " << line_no;
        throw std::runtime_error(os.str());
      }
      dim = static_cast<int>(fields.size()) - 1;
    }
    if (static_cast<int>(fields.size()) - 1 != dim) {
      std::ostringstream os;
      os << "dimension mismatch at line " << line_no << ": expected " << dim << " values, got "
         << fields.size() - 1;
      throw std::runtime_error(os.str());
    }

    const std::string &word = fields[0];
    if (seen.count(word)) {
      ++warn.duplicate_words;
      continue;
    }

    double norm2 = 0.0;
    std::vector<float> row(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) {
      const double v = parse_value(fields[static_cast<std::size_t>(d) + 1], line_no);
      norm2 += v * v;
      row[static_cast<std::size_t>(d)] = static_cast<float>(v);
    }
    if (norm2 == 0.0) {
      ++warn.zero_vectors;
      continue;
    }

    seen.emplace(word, words.size());
    words.push_back(word);
    matrix.insert(matrix.end(), row.begin(), row.end());
  }

  if (declared_words >= 0 && !max_words &&
      static_cast<long long>(data_lines) != declared_words) {
    std::ostringstream os;
    os << "model header expects " << declared_words << " words, got " << data_lines;
    throw std::runtime_error(os.str());
  }
  if (words.empty()) throw std::runtime_error("empty model");
  return EmbeddingModel(std::move(words), std::move(matrix), dim);
}

namespace {

inline double unit_dot(std::span<const float> a, std::span<const float> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a[i]) * b[i];
  return std::clamp(s, -1.0, 1.0);
}

}  // namespace

double cosine(const EmbeddingModel &model, const std::string &w1, const std::string &w2) {
  const auto i = model.find(w1);
  if (!i) throw OovError(w1);
  const auto j = model.find(w2);
  if (!j) throw OovError(w2);
  return unit_dot(model.row(*i), model.row(*j));
}

NeighborList nearest_neighbors(const EmbeddingModel &model, const std::string &pivot, int k,
                               const std::unordered_set<std::string> *filter) {
  const auto pivot_idx = model.find(pivot);
  if (!pivot_idx) throw OovError(pivot);
  if (k < 0) throw std::invalid_argument("k must be >= 0");

  NeighborList out;
  out.pivot = pivot;
  out.k_requested = k;
  if (k == 0 || model.size() < 2) return out;

  const std::span<const float> p = model.row(*pivot_idx);
  std::vector<std::pair<double, std::size_t>> scores;
  scores.reserve(model.size() - 1);
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (i == *pivot_idx) continue;
    scores.emplace_back(unit_dot(p, model.row(i)), i);
  }

  const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k), scores.size());
  auto better = [](const std::pair<double, std::size_t> &a, const std::pair<double, std::size_t> &b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  };
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(keep),
                    scores.end(), better);

  out.neighbors.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    const std::string &w = model.word(scores[i].second);
    if (filter && !filter->count(w)) continue;
    out.neighbors.push_back({w, scores[i].first});
  }
  return out;
}

std::vector<NeighborList> nearest_neighbors_batch(const EmbeddingModel &model,
                                                  std::span<const std::string> pivots, int k,
                                                  const std::unordered_set<std::string> *filter,
                                                  int jobs) {
  std::vector<NeighborList> out(pivots.size());
  if (jobs < 1) jobs = 1;
  const int n = static_cast<int>(pivots.size());
  if (jobs == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] =
        nearest_neighbors(model, pivots[static_cast<std::size_t>(i)], k, filter);
    return out;
  }
  jobs = std::min(jobs, n);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  std::atomic<int> next{0};
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
          out[static_cast<std::size_t>(i)] =
              nearest_neighbors(model, pivots[static_cast<std::size_t>(i)], k, filter);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto &t : pool) t.join();
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

void write_neighbor_tsv(std::ostream &out, std::span<const NeighborList> lists) {
  char buf[32];
  for (const NeighborList &nl : lists) {
    for (std::size_t r = 0; r < nl.neighbors.size(); ++r) {
      std::snprintf(buf, sizeof(buf), "%.6f", nl.neighbors[r].cosine);
      out << nl.pivot << '\t' << r + 1 << '\t' << nl.neighbors[r].word << '\t' << buf << '\n';
    }
  }
}

}  // namespace windowlens
