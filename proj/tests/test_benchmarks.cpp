#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "windowlens/benchmarks.hpp"
#include "windowlens/stats.hpp"
#include "windowlens/vecstore.hpp"

using namespace windowlens;

namespace {

Benchmark make_benchmark(const std::vector<std::tuple<std::string, std::string, double>> &rows) {
  std::ostringstream os;
  for (const auto &[a, b, s] : rows) os << a << '\t' << b << '\t' << s << '\n';
  std::istringstream in(os.str());
  return load_benchmark(in, "test");
}

/// One word pair per benchmark pair, with the pair cosine pinned to `target`.
EmbeddingModel predictor_model(const Benchmark &b,
                               const std::function<double(double)> &target) {
  std::vector<std::string> words;
  std::vector<float> matrix;
  for (std::size_t i = 0; i < b.pairs.size(); ++i) {
    const double c = target(b.pairs[i].score);
    const double angle = std::acos(c);
    words.push_back(b.pairs[i].word1);
    matrix.push_back(1.0f);
    matrix.push_back(0.0f);
    words.push_back(b.pairs[i].word2);
    matrix.push_back(static_cast<float>(std::cos(angle)));
    matrix.push_back(static_cast<float>(std::sin(angle)));
  }
  return EmbeddingModel(std::move(words), std::move(matrix), 2);
}

}  // namespace

TEST_CASE("benchmark loading lowercases and tracks extrema") {
  std::istringstream in("# comment\nCar\tAuto\t8.5\nTree\tRock\t1.5\ncup\tMug\t9\n");
  const Benchmark b = load_benchmark(in, "tiny");
  REQUIRE(b.pairs.size() == 3);
  CHECK(b.pairs[0].word1 == "car");
  CHECK(b.pairs[0].word2 == "auto");
  CHECK(b.score_min == doctest::Approx(1.5));
  CHECK(b.score_max == doctest::Approx(9.0));
}

TEST_CASE("benchmark loader names the bad line") {
  std::istringstream in("a\tb\t1\nc\td\t2\ne\tf\t3\ng\th\t4\ni\tj\t5\nk\tl\t6\nm\tn\tabc\n");
  CHECK_THROWS_WITH_AS(load_benchmark(in, "x"), doctest::Contains("line 7"), std::runtime_error);
  std::istringstream empty("# only comments\n");
  CHECK_THROWS_WITH_AS(load_benchmark(empty, "x"), doctest::Contains("empty benchmark"),
                       std::runtime_error);
  std::istringstream short_row("a\tb\n");
  CHECK_THROWS_WITH_AS(load_benchmark(short_row, "x"), doctest::Contains("line 1"),
                       std::runtime_error);
}

TEST_CASE("perfect and anti predictors") {
  const Benchmark b = make_benchmark({{"a1", "b1", 1.0},
                                      {"a2", "b2", 3.0},
                                      {"a3", "b3", 5.5},
                                      {"a4", "b4", 7.0},
                                      {"a5", "b5", 10.0}});
  auto rescale = [&](double s) { return 0.1 + 0.8 * (s - b.score_min) / (b.score_max - b.score_min); };
  const EmbeddingModel perfect = predictor_model(b, rescale);
  CHECK(evaluate(perfect, b).rho == doctest::Approx(1.0).epsilon(1e-9));
  const EmbeddingModel anti = predictor_model(b, [&](double s) { return 1.0 - rescale(s); });
  CHECK(evaluate(anti, b).rho == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("oov pairs are skipped and counted") {
  const Benchmark b = make_benchmark(
      {{"a1", "b1", 1.0}, {"a2", "b2", 4.0}, {"ghost", "b3", 5.0}, {"a4", "b4", 8.0}});
  std::vector<std::string> words;
  std::vector<float> matrix;
  for (const auto &p : b.pairs) {
    if (p.word1 == "ghost") continue;
    words.push_back(p.word1);
    matrix.insert(matrix.end(), {1.0f, static_cast<float>(p.score)});
    words.push_back(p.word2);
    matrix.insert(matrix.end(), {static_cast<float>(p.score), 1.0f});
  }
  const EmbeddingModel m(std::move(words), std::move(matrix), 2);
  const EvalResult r = evaluate(m, b);
  CHECK(r.n_used == 3);
  CHECK(r.n_oov_pairs == 1);
  CHECK(r.n_used + r.n_oov_pairs == static_cast<long long>(b.pairs.size()));
}

TEST_CASE("evaluation matches a manual pipeline replay") {
  std::mt19937_64 g(51);
  std::vector<std::tuple<std::string, std::string, double>> rows;
  for (int i = 0; i < 20; ++i)
    rows.emplace_back("l" + std::to_string(i), "r" + std::to_string(i),
                      static_cast<double>(g() % 100) / 10.0);
  const Benchmark b = make_benchmark(rows);

  std::vector<std::string> words;
  std::vector<float> matrix;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto &p : b.pairs) {
    for (const std::string &w : {p.word1, p.word2}) {
      words.push_back(w);
      for (int d = 0; d < 4; ++d) matrix.push_back(static_cast<float>(u(g)));
    }
  }
  const EmbeddingModel m(std::move(words), std::move(matrix), 4);

  std::vector<double> human, predicted;
  for (const auto &p : b.pairs) {
    human.push_back(p.score);
    predicted.push_back(cosine(m, p.word1, p.word2));
  }
  CHECK(evaluate(m, b).rho ==
        doctest::Approx(oracles::spearman_by_enumeration(human, predicted)).epsilon(1e-12));
}

TEST_CASE("evaluate requires two surviving pairs") {
  const Benchmark b = make_benchmark({{"a", "b", 1.0}, {"c", "d", 2.0}});
  EmbeddingModel m({"a", "b"}, {1.0f, 0.0f, 0.6f, 0.8f}, 2);
  CHECK_THROWS_WITH_AS(evaluate(m, b), doctest::Contains("insufficient coverage"),
                       std::runtime_error);
}

TEST_CASE("band partition thresholds on a [0,10] range") {
  const Benchmark b = make_benchmark({{"p0", "q0", 0.0},
                                      {"p1", "q1", 9.5},
                                      {"p2", "q2", 2.0},
                                      {"p3", "q3", 5.0},
                                      {"p4", "q4", 7.0},
                                      {"p5", "q5", 10.0}});
  const RelatednessBands bands = band_partition(b);
  CHECK(bands.low == doctest::Approx(3.0));
  CHECK(bands.high == doctest::Approx(7.0));
  auto in_band = [](const std::vector<std::size_t> &band, std::size_t i) {
    return std::find(band.begin(), band.end(), i) != band.end();
  };
  CHECK(in_band(bands.related, 1));    // 9.5
  CHECK(in_band(bands.unrelated, 2));  // 2.0
  CHECK(in_band(bands.ignored, 3));    // 5.0
  CHECK(in_band(bands.related, 4));    // exactly 7.0, boundary inclusive
  CHECK(in_band(bands.unrelated, 0));  // 0.0
  CHECK(bands.related.size() + bands.unrelated.size() + bands.ignored.size() == b.pairs.size());
}

TEST_CASE("band partition is invariant under positive affine transforms") {
  std::mt19937_64 g(61);
  std::vector<std::tuple<std::string, std::string, double>> rows;
  for (int i = 0; i < 40; ++i)
    rows.emplace_back("w" + std::to_string(2 * i), "w" + std::to_string(2 * i + 1),
                      static_cast<double>(g() % 1000) / 37.0);
  const Benchmark b = make_benchmark(rows);

  std::vector<std::tuple<std::string, std::string, double>> scaled = rows;
  for (auto &[w1, w2, s] : scaled) s = 3.0 * s + 5.0;
  const Benchmark b2 = make_benchmark(scaled);

  const RelatednessBands x = band_partition(b), y = band_partition(b2);
  CHECK(x.related == y.related);
  CHECK(x.unrelated == y.unrelated);
  CHECK(x.ignored == y.ignored);
}

TEST_CASE("band partition rejects constant scores") {
  const Benchmark b = make_benchmark({{"a", "b", 4.0}, {"c", "d", 4.0}});
  CHECK_THROWS_WITH_AS(band_partition(b), doctest::Contains("degenerate score range"),
                       std::runtime_error);
}

TEST_CASE("relative window change") {
  CHECK(delta_win(0.50, 0.62) == doctest::Approx(24.0).epsilon(1e-9));
  CHECK(delta_win(0.50, 0.50) == doctest::Approx(0.0));
  CHECK(delta_win(0.40, 0.28) == doctest::Approx(-30.0).epsilon(1e-9));
  CHECK_THROWS_WITH_AS(delta_win(0.0, 0.5), doctest::Contains("undefined relative change"),
                       std::runtime_error);
}

TEST_CASE("evaluation is invariant under monotone transforms of the scores") {
  std::mt19937_64 g(71);
  std::vector<std::tuple<std::string, std::string, double>> rows;
  for (int i = 0; i < 15; ++i)
    rows.emplace_back("l" + std::to_string(i), "r" + std::to_string(i),
                      1.0 + static_cast<double>(g() % 90) / 10.0);
  const Benchmark b = make_benchmark(rows);
  auto rescale = [&](double s) { return 0.1 + 0.8 * (s - b.score_min) / (b.score_max - b.score_min); };
  const EmbeddingModel m = predictor_model(b, rescale);
  const double base = evaluate(m, b).rho;

  std::vector<std::tuple<std::string, std::string, double>> transformed = rows;
  for (auto &[w1, w2, s] : transformed) s = std::exp(s / 3.0);
  const Benchmark bt = make_benchmark(transformed);
  CHECK(evaluate(m, bt).rho == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("csv conversion produces canonical rows") {
  std::istringstream in("car,auto,8.94\ntree,rock,1.5\n");
  std::ostringstream out;
  convert_benchmark_csv(in, out);
  CHECK(out.str() == "car\tauto\t8.94\ntree\trock\t1.5\n");
  std::istringstream round(out.str());
  CHECK(load_benchmark(round, "x").pairs.size() == 2);
}

TEST_CASE("tsv conversion keeps the flagged score column") {
  std::istringstream in("car\tauto\tsomething\t8.94\textra\ntree\trock\tmore\t1.5\tcols\n");
  std::ostringstream out;
  convert_benchmark_tsv_columns(in, out, 4);
  CHECK(out.str() == "car\tauto\t8.94\ntree\trock\t1.5\n");
  std::istringstream missing("a\tb\t1\n");
  std::ostringstream sink;
  CHECK_THROWS_WITH_AS(convert_benchmark_tsv_columns(missing, sink, 4),
                       doctest::Contains("line 1"), std::runtime_error);
}
