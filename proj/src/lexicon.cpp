#include "windowlens/lexicon.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "windowlens/text.hpp"

namespace windowlens {

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::Noun: return "NOUN";
    case PosTag::Verb: return "VERB";
    case PosTag::Adj: return "ADJ";
    case PosTag::Adv: return "ADV";
    case PosTag::Other: return "OTHER";
  }
  return "OTHER";
}

std::optional<PosTag> parse_pos_tag(std::string_view s) {
  if (s == "NOUN") return PosTag::Noun;
  if (s == "VERB") return PosTag::Verb;
  if (s == "ADJ") return PosTag::Adj;
  if (s == "ADV") return PosTag::Adv;
  if (s == "OTHER") return PosTag::Other;
  return std::nullopt;
}

std::unordered_set<std::string> parse_index(std::istream &source, PosTag pos) {
  std::unordered_set<std::string> lemmas;
  std::string line;
  bool saw_data = false;
  while (std::getline(source, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    if (line.size() >= 2 && line[0] == ' ' && line[1] == ' ') continue;  // license header
    const std::vector<std::string> fields = split_ws(line);
    if (fields.empty()) continue;
    saw_data = true;
    const std::string &lemma = fields[0];
    if (lemma.find('_') != std::string::npos) continue;  // multiword
    lemmas.insert(lowercase(lemma));
  }
  if (!saw_data) {
    std::ostringstream os;
    os << "no entries in " << to_string(pos) << " index";
    throw std::runtime_error(os.str());
  }
  return lemmas;
}

MftLexicon load_mft_lexicon(std::istream &source) {
  MftLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = split_char(line, '\t');
    if (fields.size() != 2 || fields[0].empty()) {
      std::ostringstream os;
      os << "expected 'word<TAB>TAG' at line " << line_no;
      throw std::runtime_error(os.str());
    }
    const auto tag = parse_pos_tag(fields[1]);
    if (!tag) {
      std::ostringstream os;
      os << "unknown POS tag '" << fields[1] << "' at line " << line_no;
      throw std::runtime_error(os.str());
    }
    if (fields[0].find_first_of("_ ") != std::string::npos) {
      std::ostringstream os;
      os << "multiword entry '" << fields[0] << "' at line " << line_no;
      throw std::runtime_error(os.str());
    }
    const std::string word = lowercase(fields[0]);
    auto [it, inserted] = lex.tags.emplace(word, *tag);
    if (!inserted) {
      it->second = *tag;  // last wins
      ++lex.duplicates;
    }
  }
  return lex;
}

void PosLexicon::add_wordnet(const std::unordered_set<std::string> &words, PosTag tag) {
  for (const std::string &w : words) wordnet_mask[w] |= pos_bit(tag);
}

void PosLexicon::set_mft(MftLexicon lexicon) {
  mft = std::move(lexicon.tags);
  mft_duplicates = lexicon.duplicates;
}

const std::vector<std::string> &PivotLists::list(PosTag tag) const {
  switch (tag) {
    case PosTag::Noun: return nouns;
    case PosTag::Adj: return adjectives;
    case PosTag::Verb: return verbs;
    default: throw std::invalid_argument("no pivot list for this POS");
  }
}

PivotLists build_pivots(const PosLexicon &lex) {
  PivotLists out;
  auto fill = [&](PosTag tag, std::vector<std::string> &target) {
    for (const auto &[word, mask] : lex.wordnet_mask) {
      if (mask != pos_bit(tag)) continue;  // must belong to exactly this POS
      const auto mft = lex.mft_pos(word);
      if (!mft || *mft != tag) continue;
      target.push_back(word);
    }
    std::sort(target.begin(), target.end());
    if (target.empty()) {
      std::ostringstream os;
      os << "empty pivot list for " << to_string(tag);
      throw std::runtime_error(os.str());
    }
  };
  fill(PosTag::Noun, out.nouns);
  fill(PosTag::Adj, out.adjectives);
  fill(PosTag::Verb, out.verbs);
  return out;
}

PosLexicon make_gold_lexicon(const MftLexicon &gold) {
  PosLexicon lex;
  for (const auto &[word, tag] : gold.tags) lex.wordnet_mask[word] = pos_bit(tag);
  lex.mft = gold.tags;
  return lex;
}

}  // namespace windowlens
