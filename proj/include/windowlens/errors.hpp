#pragma once

#include <stdexcept>
#include <string>

namespace windowlens {

/// Lookup of a word that is not in the model vocabulary.
struct OovError : std::runtime_error {
  std::string word;
  explicit OovError(std::string w)
      : std::runtime_error("out-of-vocabulary word: " + w), word(std::move(w)) {}
};

}  // namespace windowlens
