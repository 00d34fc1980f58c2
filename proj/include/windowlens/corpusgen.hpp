#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "windowlens/lexicon.hpp"

namespace windowlens {

/// Synthetic corpus with controllable POS-like class structure: fixed tag
/// templates filled with class words drawn Zipf-distributed within class.
struct ClassSpec {
  PosTag tag = PosTag::Noun;
  int vocabulary_size = 0;
};

struct SentenceTemplate {
  std::vector<PosTag> tags;
  double weight = 1.0;
};

struct SyntheticGrammar {
  std::vector<ClassSpec> classes;
  std::vector<SentenceTemplate> templates;
  long long sentence_count = 0;
  double zipf_exponent = 1.0;  // 0 = uniform within class
  // Each class vocabulary is split into this many topic cells; every sentence
  // draws one topic and fills all slots from that topic's cells. With one
  // topic, word choices are independent across slots. Topical coherence gives
  // large windows a competing signal, so class purity can fall with window
  // size the way it does in natural text.
  int topics = 1;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Key=value grammar file:
///   sentences=40000
///   zipf=1.0
///   topics=12
///   seed=7
///   class=NOUN,120
///   template=2,NOUN NOUN VERB
/// '#' lines are comments. template values are "weight,TAG TAG ...".
SyntheticGrammar parse_grammar(std::istream &source);

struct GeneratedCorpus {
  std::vector<std::string> sentences;
  MftLexicon gold;  // exact word -> class mapping; covers every emitted token
};

/// Deterministic under grammar.seed.
GeneratedCorpus generate(const SyntheticGrammar &grammar);

}  // namespace windowlens
