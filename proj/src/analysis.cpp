#include "windowlens/analysis.hpp"

#include <sstream>
#include <stdexcept>
#include <thread>

#include "windowlens/stats.hpp"
#include "windowlens/vecstore.hpp"

namespace windowlens {

std::optional<bool> same_pos(const PosLexicon &lex, const std::string &w1,
                             const std::string &w2) {
  const auto t1 = lex.mft_pos(w1);
  const auto t2 = lex.mft_pos(w2);
  if (!t1 || !t2) return std::nullopt;
  return *t1 == *t2;
}

EnrichmentResult enrichment(const Benchmark &benchmark, const RelatednessBands &bands,
                            const PosLexicon &lex) {
  EnrichmentResult r;
  r.benchmark_name = benchmark.name;
  auto tally = [&](const std::vector<std::size_t> &band, long long &all, long long &same) {
    for (const std::size_t i : band) {
      const ScoredPair &p = benchmark.pairs[i];
      const auto s = same_pos(lex, p.word1, p.word2);
      if (!s) {
        ++r.n_skipped;
        continue;
      }
      ++all;
      if (*s) ++same;
    }
  };
  tally(bands.related, r.n_related, r.n_related_same_pos);
  tally(bands.unrelated, r.n_unrelated, r.n_unrelated_same_pos);
  if (r.n_related == 0 || r.n_unrelated == 0)
    throw std::runtime_error("empty band: " + benchmark.name);
  const ContingencyCounts c{r.n_related + r.n_unrelated,
                            r.n_related_same_pos + r.n_unrelated_same_pos, r.n_related,
                            r.n_related_same_pos};
  r.p_value = hypergeom_sf(c);
  return r;
}

std::map<PosTag, NeighborPosHistogram> neighbor_pos_histogram(const EmbeddingModel &model,
                                                              const PivotLists &pivots,
                                                              const PosLexicon &lex, int k_search,
                                                              int k_keep, int jobs) {
  if (k_search < 1 || k_keep < 1) throw std::invalid_argument("k_search and k_keep must be >= 1");
  if (jobs < 1) jobs = 1;

  std::map<PosTag, NeighborPosHistogram> out;
  for (const PosTag tag : kPivotTags) {
    const std::vector<std::string> &list = pivots.list(tag);
    NeighborPosHistogram h;
    h.pivot_pos = tag;
    h.k_keep = k_keep;

    const int n = static_cast<int>(list.size());
    const int threads = std::min(jobs, std::max(1, n));
    std::vector<NeighborPosHistogram> partial(static_cast<std::size_t>(threads));
    for (auto &p : partial) {
      p.pivot_pos = tag;
      p.k_keep = k_keep;
    }

    auto work = [&](int t) {
      NeighborPosHistogram &acc = partial[static_cast<std::size_t>(t)];
      for (int i = t; i < n; i += threads) {
        const std::string &pivot = list[static_cast<std::size_t>(i)];
        if (!model.find(pivot)) {
          ++acc.n_pivots_skipped;
          continue;
        }
        ++acc.n_pivots_used;
        const NeighborList nl = nearest_neighbors(model, pivot, k_search);
        int kept = 0;
        for (const Neighbor &nb : nl.neighbors) {
          const auto tag_nb = lex.mft_pos(nb.word);
          if (!tag_nb) continue;
          ++acc.counts[static_cast<std::size_t>(*tag_nb)];
          if (++kept == k_keep) break;
        }
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto &th : pool) th.join();
    }
    for (const NeighborPosHistogram &p : partial) {
      for (int i = 0; i < kPosTagCount; ++i) h.counts[static_cast<std::size_t>(i)] +=
          p.counts[static_cast<std::size_t>(i)];
      h.n_pivots_used += p.n_pivots_used;
      h.n_pivots_skipped += p.n_pivots_skipped;
    }
    if (h.n_pivots_used == 0) {
      std::ostringstream os;
      os << "no usable pivots for " << to_string(tag);
      throw std::runtime_error(os.str());
    }
    out[tag] = h;
  }
  return out;
}

double same_pos_ratio(const NeighborPosHistogram &h) {
  long long total = 0;
  for (const long long c : h.counts) total += c;
  if (total == 0) throw std::runtime_error("empty histogram");
  return static_cast<double>(h.counts[static_cast<std::size_t>(h.pivot_pos)]) /
         static_cast<double>(total);
}

SweepSeries sweep_series(std::vector<std::pair<int, double>> points) {
  SweepSeries s;
  s.points = std::move(points);
  std::vector<double> windows, ratios;
  windows.reserve(s.points.size());
  ratios.reserve(s.points.size());
  for (const auto &[w, r] : s.points) {
    windows.push_back(static_cast<double>(w));
    ratios.push_back(r);
  }
  try {
    s.pearson_r = pearson(windows, ratios);
  } catch (const std::invalid_argument &) {
    throw std::runtime_error("degenerate sweep: constant same-POS ratios");
  }
  s.p_value = pearson_pvalue_two_tailed(s.pearson_r, static_cast<long long>(s.points.size()));
  return s;
}

SweepResult window_sweep(const std::map<int, EmbeddingModel> &models, const PivotLists &pivots,
                         const PosLexicon &lex, int k_search, int k_keep, int jobs) {
  if (models.size() < 3) throw std::runtime_error("sweep needs >= 3 windows");
  const int dim = models.begin()->second.dim();
  std::string algorithm;
  for (const auto &[w, m] : models) {
    if (m.dim() != dim) throw std::invalid_argument("sweep models must share dimension");
    if (m.provenance()) {
      if (algorithm.empty())
        algorithm = m.provenance()->algorithm;
      else if (algorithm != m.provenance()->algorithm)
        throw std::invalid_argument("sweep models must share algorithm");
    }
  }

  SweepResult result;
  std::map<PosTag, std::vector<std::pair<int, double>>> points;
  for (const auto &[window, model] : models) {
    auto hists = neighbor_pos_histogram(model, pivots, lex, k_search, k_keep, jobs);
    for (const auto &[tag, h] : hists) points[tag].emplace_back(window, same_pos_ratio(h));
    result.histograms[window] = std::move(hists);
  }
  for (auto &[tag, pts] : points) result.series[tag] = sweep_series(std::move(pts));
  return result;
}

}  // namespace windowlens
