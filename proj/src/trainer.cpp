#include "windowlens/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "windowlens/rng.hpp"
#include "windowlens/text.hpp"

namespace windowlens {

std::string to_string(Algorithm a) { return a == Algorithm::Cbow ? "cbow" : "sgns"; }

std::optional<Algorithm> parse_algorithm(const std::string &name) {
  const std::string n = lowercase(name);
  if (n == "cbow") return Algorithm::Cbow;
  if (n == "sgns") return Algorithm::Sgns;
  return std::nullopt;
}

void TrainConfig::validate() const {
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be > 0");
  if (negatives < 0) throw std::invalid_argument("negatives must be >= 0");
  if (algorithm == Algorithm::Sgns && negatives < 1)
    throw std::invalid_argument("sgns requires negatives >= 1");
  if (min_count < 0) throw std::invalid_argument("min-count must be >= 0");
  if (subsample_threshold < 0.0) throw std::invalid_argument("subsample threshold must be >= 0");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

SgnsPairGrad sgns_pair_loss_and_gradient(std::span<const double> target,
                                         std::span<const double> context, int label) {
  const std::size_t dim = target.size();
  double dot = 0.0;
  for (std::size_t i = 0; i < dim; ++i) dot += target[i] * context[i];
  const double sig = sigmoid(dot);
  SgnsPairGrad out;
  out.loss = label == 1 ? -std::log(sig) : -std::log1p(-sig);
  const double d_dot = sig - static_cast<double>(label);
  out.grad_target.resize(dim);
  out.grad_context.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    out.grad_target[i] = d_dot * context[i];
    out.grad_context[i] = d_dot * target[i];
  }
  return out;
}

CbowExampleGrad cbow_example_loss_and_gradient(const std::vector<std::vector<double>> &contexts,
                                               std::span<const double> center,
                                               const std::vector<std::vector<double>> &negatives) {
  if (contexts.empty()) throw std::invalid_argument("cbow example needs at least one context");
  const std::size_t dim = center.size();
  const double inv_m = 1.0 / static_cast<double>(contexts.size());
  std::vector<double> hidden(dim, 0.0);
  for (const auto &c : contexts)
    for (std::size_t i = 0; i < dim; ++i) hidden[i] += c[i] * inv_m;

  CbowExampleGrad out;
  out.grad_center.assign(dim, 0.0);
  out.grad_negatives.assign(negatives.size(), std::vector<double>(dim, 0.0));
  std::vector<double> d_hidden(dim, 0.0);

  auto score = [&](std::span<const double> output, std::vector<double> &grad_output, int label) {
    double dot = 0.0;
    for (std::size_t i = 0; i < dim; ++i) dot += hidden[i] * output[i];
    const double sig = sigmoid(dot);
    out.loss += label == 1 ? -std::log(sig) : -std::log1p(-sig);
    const double d_dot = sig - static_cast<double>(label);
    for (std::size_t i = 0; i < dim; ++i) {
      d_hidden[i] += d_dot * output[i];
      grad_output[i] += d_dot * hidden[i];
    }
  };
  score(center, out.grad_center, 1);
  for (std::size_t j = 0; j < negatives.size(); ++j) score(negatives[j], out.grad_negatives[j], 0);

  out.grad_contexts.assign(contexts.size(), std::vector<double>(dim, 0.0));
  for (std::size_t c = 0; c < contexts.size(); ++c)
    for (std::size_t i = 0; i < dim; ++i) out.grad_contexts[c][i] = d_hidden[i] * inv_m;
  return out;
}

namespace {

struct TrainState {
  const TrainConfig &cfg;
  const Vocabulary &vocab;
  const std::vector<std::vector<int>> &sentences;
  std::vector<float> syn0;  // input vectors; these become the model
  std::vector<float> syn1;  // output vectors; discarded after training
  std::vector<double> keep_prob;  // empty when subsampling is disabled
  std::atomic<long long> done{0};
  long long total_planned = 0;
  CooccurrenceObserver *observer = nullptr;

  TrainState(const TrainConfig &c, const Vocabulary &v, const std::vector<std::vector<int>> &s)
      : cfg(c), vocab(v), sentences(s) {}
};

[[noreturn]] void throw_divergence(int epoch, std::size_t sentence, std::size_t pos) {
  std::ostringstream os;
  os << "divergence at epoch " << epoch << ", sentence " << sentence << ", position " << pos;
  throw std::runtime_error(os.str());
}

// One (input word, predicted word) step with negative sampling; shared by
// both algorithms. `in` is the input-side vector being trained (a word row
// for sgns, the averaged hidden layer for cbow). Accumulates the input-side
// gradient into neu1e and updates output rows in place.
inline void negative_sampling_step(TrainState &st, std::mt19937_64 &g, const float *in,
                                   int predicted_id, float alpha, float *neu1e, int epoch,
                                   std::size_t sentence, std::size_t pos) {
  const int dim = st.cfg.dim;
  for (int d = 0; d <= st.cfg.negatives; ++d) {
    int target;
    int label;
    if (d == 0) {
      target = predicted_id;
      label = 1;
    } else {
      target = st.vocab.sample_negative(g);
      if (target == predicted_id) continue;
      label = 0;
    }
    float *out = st.syn1.data() + static_cast<std::size_t>(target) * dim;
    double f = 0.0;
    for (int i = 0; i < dim; ++i) f += static_cast<double>(in[i]) * out[i];
    if (!std::isfinite(f)) throw_divergence(epoch, sentence, pos);
    const double sig = sigmoid(f);
    if ((label == 1 && sig == 0.0) || (label == 0 && sig == 1.0))
      throw_divergence(epoch, sentence, pos);
    const float gr = static_cast<float>(alpha * (static_cast<double>(label) - sig));
    for (int i = 0; i < dim; ++i) neu1e[i] += gr * out[i];
    for (int i = 0; i < dim; ++i) out[i] += gr * in[i];
  }
}

void run_worker(TrainState &st, int worker, std::size_t begin, std::size_t end) {
  std::mt19937_64 g(mix_seed(st.cfg.seed, static_cast<std::uint64_t>(worker) + 1));
  const int dim = st.cfg.dim;
  std::vector<float> neu1(dim), neu1e(dim);
  std::vector<int> sen;
  const double inv_total = 1.0 / static_cast<double>(st.total_planned);

  for (int epoch = 0; epoch < st.cfg.epochs; ++epoch) {
    for (std::size_t s = begin; s < end; ++s) {
      const std::vector<int> &ids = st.sentences[s];
      if (ids.empty()) continue;

      sen.clear();
      for (int id : ids) {
        if (!st.keep_prob.empty()) {
          const double kp = st.keep_prob[static_cast<std::size_t>(id)];
          if (kp < 1.0 && uniform01(g) >= kp) continue;
        }
        sen.push_back(id);
      }

      // Decay is linear in raw retained tokens; within a sentence the raw
      // offset is estimated from the subsampled position.
      const double base = static_cast<double>(st.done.load(std::memory_order_relaxed));
      const double raw_per_pos =
          sen.empty() ? 1.0 : static_cast<double>(ids.size()) / static_cast<double>(sen.size());
      float alpha = static_cast<float>(st.cfg.learning_rate *
                                       std::max(1e-4, 1.0 - base * inv_total));

      for (std::size_t pos = 0; pos < sen.size(); ++pos) {
        if ((pos & 4095) == 0 && pos > 0) {
          const double progress = (base + static_cast<double>(pos) * raw_per_pos) * inv_total;
          alpha = static_cast<float>(st.cfg.learning_rate * std::max(1e-4, 1.0 - progress));
        }
        const int b = uniform_int(g, 1, st.cfg.window);
        const std::size_t lo = pos >= static_cast<std::size_t>(b) ? pos - b : 0;
        const std::size_t hi = std::min(sen.size() - 1, pos + static_cast<std::size_t>(b));

        if (st.cfg.algorithm == Algorithm::Sgns) {
          for (std::size_t c = lo; c <= hi; ++c) {
            if (c == pos) continue;
            if (st.observer)
              st.observer->on_pair(static_cast<long long>(s), static_cast<long long>(pos),
                                   static_cast<long long>(c));
            float *in = st.syn0.data() + static_cast<std::size_t>(sen[c]) * dim;
            std::fill(neu1e.begin(), neu1e.end(), 0.0f);
            negative_sampling_step(st, g, in, sen[pos], alpha, neu1e.data(), epoch, s, pos);
            for (int i = 0; i < dim; ++i) in[i] += neu1e[i];
          }
        } else {
          int cw = 0;
          std::fill(neu1.begin(), neu1.end(), 0.0f);
          for (std::size_t c = lo; c <= hi; ++c) {
            if (c == pos) continue;
            if (st.observer)
              st.observer->on_pair(static_cast<long long>(s), static_cast<long long>(pos),
                                   static_cast<long long>(c));
            const float *in = st.syn0.data() + static_cast<std::size_t>(sen[c]) * dim;
            for (int i = 0; i < dim; ++i) neu1[i] += in[i];
            ++cw;
          }
          if (cw == 0) continue;
          const float inv_cw = 1.0f / static_cast<float>(cw);
          for (int i = 0; i < dim; ++i) neu1[i] *= inv_cw;
          std::fill(neu1e.begin(), neu1e.end(), 0.0f);
          negative_sampling_step(st, g, neu1.data(), sen[pos], alpha, neu1e.data(), epoch, s, pos);
          for (std::size_t c = lo; c <= hi; ++c) {
            if (c == pos) continue;
            float *in = st.syn0.data() + static_cast<std::size_t>(sen[c]) * dim;
            for (int i = 0; i < dim; ++i) in[i] += neu1e[i] * inv_cw;
          }
        }
      }
      st.done.fetch_add(static_cast<long long>(ids.size()), std::memory_order_relaxed);
    }
  }
}

std::vector<std::vector<std::string>> read_sentences(std::istream &in, bool respect_lines) {
  std::vector<std::vector<std::string>> sentences;
  if (respect_lines) {
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> toks = split_ws(strip_cr(line));
      if (!toks.empty()) sentences.push_back(std::move(toks));
    }
  } else {
    std::vector<std::string> toks;
    std::string token;
    while (in >> token) toks.push_back(std::move(token));
    if (!toks.empty()) sentences.push_back(std::move(toks));
  }
  return sentences;
}

}  // namespace

EmbeddingModel train(std::istream &corpus, const TrainConfig &config,
                     CooccurrenceObserver *observer, TrainReport *report) {
  config.validate();

  const std::vector<std::vector<std::string>> raw = read_sentences(corpus, config.respect_lines);
  std::unordered_map<std::string, long long> counts;
  long long seen = 0;
  for (const auto &sentence : raw)
    for (const auto &tok : sentence) {
      ++seen;
      ++counts[tok];
    }
  const Vocabulary vocab = build_vocabulary_from_counts(counts, seen, config.min_count);
  if (report) *report = TrainReport{vocab.size(), vocab.total_tokens()};

  std::vector<std::vector<int>> sentences(raw.size());
  for (std::size_t s = 0; s < raw.size(); ++s) {
    sentences[s].reserve(raw[s].size());
    for (const auto &tok : raw[s]) {
      if (auto id = vocab.find(tok)) sentences[s].push_back(*id);
    }
  }

  TrainState st{config, vocab, sentences};
  const std::size_t v = vocab.size();
  const std::size_t dim = static_cast<std::size_t>(config.dim);
  st.syn0.resize(v * dim);
  st.syn1.assign(v * dim, 0.0f);
  {
    std::mt19937_64 g(config.seed);
    const float scale = 1.0f / static_cast<float>(config.dim);
    for (float &x : st.syn0) x = static_cast<float>(uniform01(g) - 0.5) * scale;
  }

  if (config.subsample_threshold > 0.0) {
    st.keep_prob.resize(v);
    const double t = config.subsample_threshold;
    for (std::size_t i = 0; i < v; ++i) {
      const double f = static_cast<double>(vocab.entries()[i].count) /
                       static_cast<double>(vocab.total_tokens());
      st.keep_prob[i] = std::min(1.0, std::sqrt(t / f) + t / f);
    }
  }

  st.total_planned = static_cast<long long>(config.epochs) * vocab.total_tokens();
  st.observer = config.workers == 1 ? observer : nullptr;

  const int workers = std::min<int>(config.workers, static_cast<int>(sentences.size()) > 0
                                                        ? static_cast<int>(sentences.size())
                                                        : 1);
  if (workers <= 1) {
    run_worker(st, 0, 0, sentences.size());
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t per = (sentences.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(sentences.size(), w * per);
      const std::size_t end = std::min(sentences.size(), begin + per);
      pool.emplace_back([&st, w, begin, end, &errors] {
        try {
          run_worker(st, w, begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto &t : pool) t.join();
    for (auto &e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<std::string> words;
  words.reserve(v);
  for (const auto &e : vocab.entries()) words.push_back(e.word);
  Provenance prov{to_string(config.algorithm), config.window, config.corpus_id};
  return EmbeddingModel(std::move(words), std::move(st.syn0), config.dim, prov);
}

}  // namespace windowlens
