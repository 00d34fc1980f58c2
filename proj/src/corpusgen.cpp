#include "windowlens/corpusgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>

#include "windowlens/rng.hpp"
#include "windowlens/text.hpp"

namespace windowlens {

void SyntheticGrammar::validate() const {
  if (sentence_count < 1) throw std::invalid_argument("sentence count must be >= 1");
  if (zipf_exponent < 0.0) throw std::invalid_argument("zipf exponent must be >= 0");
  if (topics < 1) throw std::invalid_argument("topics must be >= 1");
  if (classes.empty()) throw std::invalid_argument("grammar declares no classes");
  if (templates.empty()) throw std::invalid_argument("grammar declares no templates");
  std::uint8_t seen = 0;
  for (const ClassSpec &c : classes) {
    if (c.vocabulary_size < 1) throw std::invalid_argument("class vocabulary size must be >= 1");
    if (c.vocabulary_size < topics)
      throw std::invalid_argument("class vocabulary smaller than the topic count");
    if (seen & pos_bit(c.tag))
      throw std::invalid_argument(std::string("duplicate class ") + std::string(to_string(c.tag)));
    seen |= pos_bit(c.tag);
  }
  for (const SentenceTemplate &t : templates) {
    if (t.tags.empty()) throw std::invalid_argument("empty template");
    if (!(t.weight > 0.0)) throw std::invalid_argument("template weight must be > 0");
    for (const PosTag tag : t.tags)
      if (!(seen & pos_bit(tag)))
        throw std::invalid_argument(std::string("template uses undeclared class ") +
                                    std::string(to_string(tag)));
  }
}

SyntheticGrammar parse_grammar(std::istream &source) {
  SyntheticGrammar g;
  g.sentence_count = 0;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string &what) {
    std::ostringstream os;
    os << what << " at line " << line_no;
    throw std::runtime_error(os.str());
  };
  while (std::getline(source, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail("expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "sentences") {
      g.sentence_count = std::atoll(value.c_str());
    } else if (key == "zipf") {
      g.zipf_exponent = std::atof(value.c_str());
    } else if (key == "topics") {
      g.topics = std::atoi(value.c_str());
    } else if (key == "seed") {
      g.seed = static_cast<std::uint64_t>(std::strtoull(value.c_str(), nullptr, 10));
    } else if (key == "class") {
      const std::vector<std::string> parts = split_char(value, ',');
      if (parts.size() != 2) fail("expected class=TAG,size");
      const auto tag = parse_pos_tag(parts[0]);
      if (!tag) fail("unknown POS tag '" + parts[0] + "'");
      g.classes.push_back({*tag, std::atoi(parts[1].c_str())});
    } else if (key == "template") {
      const std::size_t comma = value.find(',');
      if (comma == std::string::npos) fail("expected template=weight,TAG TAG ...");
      SentenceTemplate t;
      t.weight = std::atof(value.substr(0, comma).c_str());
      for (const std::string &f : split_ws(value.substr(comma + 1))) {
        const auto tag = parse_pos_tag(f);
        if (!tag) fail("unknown POS tag '" + f + "'");
        t.tags.push_back(*tag);
      }
      g.templates.push_back(std::move(t));
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  g.validate();
  return g;
}

namespace {

// Cumulative distribution over ranks 0..n-1 with P(rank i) proportional to
// 1/(i+1)^s.
std::vector<double> zipf_cdf(int n, double s) {
  std::vector<double> cdf(static_cast<std::size_t>(n));
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    cdf[static_cast<std::size_t>(i)] = 1.0 / std::pow(static_cast<double>(i + 1), s);
    z += cdf[static_cast<std::size_t>(i)];
  }
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += cdf[static_cast<std::size_t>(i)] / z;
    cdf[static_cast<std::size_t>(i)] = acc;
  }
  cdf.back() = 1.0;
  return cdf;
}

std::size_t draw(const std::vector<double> &cdf, std::mt19937_64 &g) {
  const double u = uniform01(g);
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) return cdf.size() - 1;
  return static_cast<std::size_t>(it - cdf.begin());
}

}  // namespace

GeneratedCorpus generate(const SyntheticGrammar &grammar) {
  grammar.validate();
  GeneratedCorpus out;

  // Topic cells partition each class round-robin, so the frequent ranks of
  // every topic line up.
  const std::size_t topics = static_cast<std::size_t>(grammar.topics);
  std::vector<std::vector<std::string>> class_words(kPosTagCount);
  std::vector<std::vector<std::vector<std::size_t>>> class_cells(kPosTagCount);
  std::vector<std::vector<std::vector<double>>> cell_cdf(kPosTagCount);
  for (const ClassSpec &c : grammar.classes) {
    const auto tag_idx = static_cast<std::size_t>(c.tag);
    std::string prefix = lowercase(std::string(to_string(c.tag)));
    auto &words = class_words[tag_idx];
    words.reserve(static_cast<std::size_t>(c.vocabulary_size));
    for (int i = 1; i <= c.vocabulary_size; ++i) words.push_back(prefix + std::to_string(i));
    for (const std::string &w : words) out.gold.tags.emplace(w, c.tag);

    class_cells[tag_idx].resize(topics);
    cell_cdf[tag_idx].resize(topics);
    for (std::size_t i = 0; i < words.size(); ++i)
      class_cells[tag_idx][i % topics].push_back(i);
    for (std::size_t t = 0; t < topics; ++t)
      cell_cdf[tag_idx][t] =
          zipf_cdf(static_cast<int>(class_cells[tag_idx][t].size()), grammar.zipf_exponent);
  }

  std::vector<double> template_cdf(grammar.templates.size());
  double z = 0.0;
  for (const SentenceTemplate &t : grammar.templates) z += t.weight;
  double acc = 0.0;
  for (std::size_t i = 0; i < grammar.templates.size(); ++i) {
    acc += grammar.templates[i].weight / z;
    template_cdf[i] = acc;
  }
  template_cdf.back() = 1.0;

  std::mt19937_64 g(grammar.seed);
  out.sentences.reserve(static_cast<std::size_t>(grammar.sentence_count));
  std::string sentence;
  for (long long s = 0; s < grammar.sentence_count; ++s) {
    const SentenceTemplate &t = grammar.templates[draw(template_cdf, g)];
    const std::size_t topic = topics == 1 ? 0 : uniform_below(g, topics);
    sentence.clear();
    for (const PosTag tag : t.tags) {
      const auto tag_idx = static_cast<std::size_t>(tag);
      const std::size_t rank = draw(cell_cdf[tag_idx][topic], g);
      if (!sentence.empty()) sentence.push_back(' ');
      sentence += class_words[tag_idx][class_cells[tag_idx][topic][rank]];
    }
    out.sentences.push_back(sentence);
  }
  return out;
}

}  // namespace windowlens
