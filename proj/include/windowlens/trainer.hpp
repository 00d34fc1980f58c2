#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "windowlens/model.hpp"
#include "windowlens/vocab.hpp"

namespace windowlens {

enum class Algorithm { Cbow, Sgns };

std::string to_string(Algorithm a);
/// Accepts "cbow" / "sgns" (any case); empty optional otherwise.
std::optional<Algorithm> parse_algorithm(const std::string &name);

struct TrainConfig {
  Algorithm algorithm = Algorithm::Sgns;
  int dim = 100;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.05;  // linearly decayed to 1e-4 * initial
  long long min_count = 5;
  double subsample_threshold = 1e-4;  // 0 disables frequent-word subsampling
  std::uint64_t seed = 1;
  int workers = 1;            // 1 = deterministic mode; >1 = lock-free hogwild
  bool respect_lines = false; // windows never cross newline boundaries
  std::string corpus_id;

  /// Throws std::invalid_argument on an out-of-domain field.
  void validate() const;
};

/// Receives every (center, context) position pair the trainer extracts.
/// Positions index into the (possibly subsampled) sentence. Only honored in
/// deterministic mode (workers == 1).
struct CooccurrenceObserver {
  virtual ~CooccurrenceObserver() = default;
  virtual void on_pair(long long sentence, long long center_pos, long long context_pos) = 0;
};

/// Per-pair logistic loss of skip-gram negative sampling and its exact
/// gradients. label 1 is an observed pair, 0 a noise pair:
///   loss = -log sigmoid(dot)        (label 1)
///   loss = -log sigmoid(-dot)       (label 0)
struct SgnsPairGrad {
  double loss = 0.0;
  std::vector<double> grad_target;
  std::vector<double> grad_context;
};
SgnsPairGrad sgns_pair_loss_and_gradient(std::span<const double> target,
                                         std::span<const double> context, int label);

/// One CBOW example: hidden = mean of context vectors, scored against the
/// center word (label 1) and each negative (label 0). Gradients are the
/// exact partials of the summed loss, including the 1/m factor on contexts.
struct CbowExampleGrad {
  double loss = 0.0;
  std::vector<std::vector<double>> grad_contexts;
  std::vector<double> grad_center;
  std::vector<std::vector<double>> grad_negatives;
};
CbowExampleGrad cbow_example_loss_and_gradient(const std::vector<std::vector<double>> &contexts,
                                               std::span<const double> center,
                                               const std::vector<std::vector<double>> &negatives);

struct TrainReport {
  std::size_t vocab_size = 0;
  long long token_count = 0;  // retained-token occurrences
};

/// Trains a model over the corpus stream. The effective window per position
/// is sampled uniformly from [1, config.window]. Input-side vectors,
/// unit-normalized at finalization, constitute the model. With workers == 1
/// and a fixed seed the result is bitwise reproducible.
///
/// Throws vocabulary errors, and std::runtime_error("divergence ...") naming
/// epoch and position if a non-finite loss is encountered.
EmbeddingModel train(std::istream &corpus, const TrainConfig &config,
                     CooccurrenceObserver *observer = nullptr, TrainReport *report = nullptr);

}  // namespace windowlens
