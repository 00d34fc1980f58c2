#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace windowlens {

enum class PosTag : std::uint8_t { Noun = 0, Verb, Adj, Adv, Other };
inline constexpr int kPosTagCount = 5;
inline constexpr PosTag kPivotTags[3] = {PosTag::Noun, PosTag::Adj, PosTag::Verb};

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view s);

inline constexpr std::uint8_t pos_bit(PosTag t) {
  return static_cast<std::uint8_t>(1u << static_cast<unsigned>(t));
}

/// Lemmas of one lexical-database index file: header lines begin with two
/// spaces, data lines carry the lemma as the first field. Underscore-joined
/// multiword lemmas are excluded. Throws std::runtime_error("no entries ...")
/// when no data line is present.
std::unordered_set<std::string> parse_index(std::istream &source, PosTag pos);

/// Most-frequent-tag lexicon, TSV "word<TAB>TAG". Later duplicates win.
struct MftLexicon {
  std::unordered_map<std::string, PosTag> tags;
  std::size_t duplicates = 0;
};
MftLexicon load_mft_lexicon(std::istream &source);

/// Two POS views of the vocabulary: the set of database POSes per word and
/// the single most-frequent tag.
struct PosLexicon {
  std::unordered_map<std::string, std::uint8_t> wordnet_mask;  // bit set per PosTag
  std::unordered_map<std::string, PosTag> mft;
  std::size_t mft_duplicates = 0;

  void add_wordnet(const std::unordered_set<std::string> &words, PosTag tag);
  void set_mft(MftLexicon lexicon);

  std::optional<PosTag> mft_pos(const std::string &word) const {
    auto it = mft.find(word);
    if (it == mft.end()) return std::nullopt;
    return it->second;
  }
};

/// Word lists per pivot POS, pairwise disjoint, sorted lexicographically.
struct PivotLists {
  std::vector<std::string> nouns;
  std::vector<std::string> adjectives;
  std::vector<std::string> verbs;

  const std::vector<std::string> &list(PosTag tag) const;
};

/// Pivots for NOUN/ADJ/VERB: words whose database POS set is exactly the one
/// tag and whose most-frequent tag agrees. Throws when any list comes out
/// empty, naming the POS.
PivotLists build_pivots(const PosLexicon &lex);

/// Lexicon for a gold tagging: the database mask is the singleton of each
/// word's tag, so build_pivots degenerates to a per-tag split.
PosLexicon make_gold_lexicon(const MftLexicon &gold);

}  // namespace windowlens
