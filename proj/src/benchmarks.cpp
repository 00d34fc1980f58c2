#include "windowlens/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "windowlens/stats.hpp"
#include "windowlens/text.hpp"

namespace windowlens {

namespace {

double parse_score(const std::string &field, std::size_t line_no) {
  char *end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0' || !std::isfinite(v)) {
    std::ostringstream os;
    os << "unparseable score '" << field << "' at line " << line_no;
    throw std::runtime_error(os.str());
  }
  return v;
}

}  // namespace

Benchmark load_benchmark(std::istream &source, const std::string &name) {
  Benchmark b;
  b.name = name;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = split_char(line, '\t');
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      std::ostringstream os;
      os << "expected 'word1<TAB>word2<TAB>score' at line " << line_no;
      throw std::runtime_error(os.str());
    }
    const double score = parse_score(fields[2], line_no);
    b.pairs.push_back({lowercase(fields[0]), lowercase(fields[1]), score});
    if (b.pairs.size() == 1) {
      b.score_min = b.score_max = score;
    } else {
      b.score_min = std::min(b.score_min, score);
      b.score_max = std::max(b.score_max, score);
    }
  }
  if (b.pairs.empty()) throw std::runtime_error("empty benchmark: " + name);
  return b;
}

EvalResult evaluate(const EmbeddingModel &model, const Benchmark &benchmark) {
  std::vector<double> human, predicted;
  EvalResult r;
  for (const ScoredPair &p : benchmark.pairs) {
    const auto i = model.find(p.word1);
    const auto j = model.find(p.word2);
    if (!i || !j) {
      ++r.n_oov_pairs;
      continue;
    }
    human.push_back(p.score);
    double dot = 0.0;
    const auto a = model.row(*i), b = model.row(*j);
    for (std::size_t d = 0; d < a.size(); ++d) dot += static_cast<double>(a[d]) * b[d];
    predicted.push_back(std::clamp(dot, -1.0, 1.0));
    ++r.n_used;
  }
  if (r.n_used < 2)
    throw std::runtime_error("insufficient coverage: " + benchmark.name);
  r.rho = spearman(human, predicted);
  return r;
}

RelatednessBands band_partition(const Benchmark &benchmark) {
  if (!(benchmark.score_max > benchmark.score_min))
    throw std::runtime_error("degenerate score range: " + benchmark.name);
  RelatednessBands bands;
  const double range = benchmark.score_max - benchmark.score_min;
  bands.low = benchmark.score_min + 0.3 * range;
  bands.high = benchmark.score_min + 0.7 * range;
  for (std::size_t i = 0; i < benchmark.pairs.size(); ++i) {
    const double s = benchmark.pairs[i].score;
    if (s >= bands.high)
      bands.related.push_back(i);
    else if (s <= bands.low)
      bands.unrelated.push_back(i);
    else
      bands.ignored.push_back(i);
  }
  return bands;
}

double delta_win(double rho_w2, double rho_w15) {
  if (rho_w2 == 0.0) throw std::runtime_error("undefined relative change: rho at window 2 is 0");
  return 100.0 * (rho_w15 - rho_w2) / rho_w2;
}

void convert_benchmark_csv(std::istream &in, std::ostream &out) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = split_char(line, ',');
    if (fields.size() < 3) {
      std::ostringstream os;
      os << "expected 'word1,word2,score' at line " << line_no;
      throw std::runtime_error(os.str());
    }
    parse_score(fields[2], line_no);
    out << fields[0] << '\t' << fields[1] << '\t' << fields[2] << '\n';
  }
}

void convert_benchmark_tsv_columns(std::istream &in, std::ostream &out, int score_column) {
  if (score_column < 3) throw std::invalid_argument("score column must be >= 3");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = split_char(line, '\t');
    if (static_cast<int>(fields.size()) < score_column) {
      std::ostringstream os;
      os << "fewer than " << score_column << " columns at line " << line_no;
      throw std::runtime_error(os.str());
    }
    const std::string &score = fields[static_cast<std::size_t>(score_column) - 1];
    parse_score(score, line_no);
    out << fields[0] << '\t' << fields[1] << '\t' << score << '\n';
  }
}

}  // namespace windowlens
