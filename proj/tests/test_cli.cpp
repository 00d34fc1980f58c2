#include <sstream>
#include <string>

#include "doctest.h"
#include "test_util.hpp"
#include "windowlens/vecstore.hpp"

using testutil::CliResult;
using testutil::TempDir;
using testutil::count_data_lines;
using testutil::read_file;
using testutil::run_cli;
using testutil::write_file;

namespace {

std::string tiny_corpus() {
  std::ostringstream os;
  for (int i = 0; i < 400; ++i) os << "alpha beta gamma delta epsilon zeta\n";
  return os.str();
}

std::string tiny_benchmark(int variant = 0) {
  std::ostringstream os;
  os << "alpha\tbeta\t" << 9.1 + variant * 0.1 << "\n"
     << "alpha\tgamma\t7.5\nbeta\tgamma\t6.0\nbeta\tdelta\t3.2\ngamma\tdelta\t1.0\n"
     << "delta\tepsilon\t0.0\nalpha\tdelta\t10.0\n";
  return os.str();
}

}  // namespace

TEST_CASE("train happy path writes a loadable model") {
  TempDir dir;
  write_file(dir.file("corpus.txt"), tiny_corpus());
  const CliResult r = run_cli("train --corpus " + dir.file("corpus.txt") +
                                  " --algo sgns --dim 8 --window 2 --min-count 1 --epochs 1 "
                                  "--seed 7 --out " +
                                  dir.file("model.vec"),
                              dir);
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("vocabulary:") != std::string::npos);
  std::ifstream in(dir.file("model.vec"));
  const windowlens::EmbeddingModel m = windowlens::load_text_model(in);
  CHECK(m.size() == 6);
  CHECK(m.dim() == 8);
}

TEST_CASE("missing required flag exits with usage code") {
  TempDir dir;
  const CliResult r = run_cli("train --out " + dir.file("m.vec"), dir);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("--corpus") != std::string::npos);
}

TEST_CASE("out-of-domain window exits with usage code") {
  TempDir dir;
  write_file(dir.file("corpus.txt"), tiny_corpus());
  const CliResult r = run_cli("train --corpus " + dir.file("corpus.txt") + " --window 0 --out " +
                                  dir.file("m.vec"),
                              dir);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("window must be") != std::string::npos);
}

TEST_CASE("eval emits one row per model-benchmark combination") {
  TempDir dir;
  write_file(dir.file("corpus.txt"), tiny_corpus());
  for (const int w : {2, 15}) {
    const CliResult t = run_cli("train --corpus " + dir.file("corpus.txt") +
                                    " --dim 8 --window " + std::to_string(w) +
                                    " --min-count 1 --epochs 1 --seed 7 --out " +
                                    dir.file("m" + std::to_string(w) + ".vec"),
                                dir);
    REQUIRE(t.exit_code == 0);
  }
  for (int b = 0; b < 3; ++b)
    write_file(dir.file("bench" + std::to_string(b) + ".tsv"), tiny_benchmark(b));

  const std::string args = "eval --algo sgns --model 2=" + dir.file("m2.vec") +
                           " --model 15=" + dir.file("m15.vec") + " --benchmark " +
                           dir.file("bench0.tsv") + " --benchmark " + dir.file("bench1.tsv") +
                           " --benchmark " + dir.file("bench2.tsv") + " --out " +
                           dir.file("report.tsv");
  const CliResult r = run_cli(args, dir);
  REQUIRE(r.exit_code == 0);
  const std::string report = read_file(dir.file("report.tsv"));
  // 6 data rows + 3 delta rows + 1 column header.
  CHECK(count_data_lines(report) == 10);
  CHECK(report.find("delta_2_15_pct") != std::string::npos);
  CHECK(report.find("# windowlens") != std::string::npos);

  SUBCASE("repeated invocations are byte-identical") {
    const CliResult again = run_cli(args, dir);
    REQUIRE(again.exit_code == 0);
    CHECK(read_file(dir.file("report.tsv")) == report);
  }
}

TEST_CASE("enrich reproduces the published p-value from a counts fixture") {
  TempDir dir;
  const CliResult r = run_cli(
      "enrich --counts wordsim353:122,107,53,40 --out " + dir.file("enrich.tsv"), dir);
  REQUIRE(r.exit_code == 0);
  const std::string report = read_file(dir.file("enrich.tsv"));
  CHECK(report.find("wordsim353\t122\t107\t53\t40\t0.038") != std::string::npos);
}

TEST_CASE("enrich fails cleanly on a degenerate benchmark") {
  TempDir dir;
  write_file(dir.file("flat.tsv"), "a\tb\t4\nc\td\t4\n");
  write_file(dir.file("mft.tsv"), "a\tNOUN\nb\tNOUN\nc\tNOUN\nd\tNOUN\n");
  const CliResult r = run_cli("enrich --benchmark " + dir.file("flat.tsv") + " --mft-lexicon " +
                                  dir.file("mft.tsv") + " --out " + dir.file("enrich.tsv"),
                              dir);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("degenerate score range") != std::string::npos);
}

TEST_CASE("enrich keeps input order across benchmarks") {
  TempDir dir;
  write_file(dir.file("b1.tsv"), "n1\tn2\t9\nn3\tv1\t8\nn4\tn5\t1\nv2\tv3\t0\nn1\tv2\t10\n");
  write_file(dir.file("b2.tsv"), "n1\tn2\t5\nn3\tv1\t4\nn4\tn5\t1\nv2\tv3\t0\nn1\tv2\t6\n");
  write_file(dir.file("b3.tsv"), "n1\tn2\t3\nn3\tv1\t2\nn4\tn5\t1\nv2\tv3\t0\nn1\tv2\t4\n");
  write_file(dir.file("mft.tsv"),
             "n1\tNOUN\nn2\tNOUN\nn3\tNOUN\nn4\tNOUN\nn5\tNOUN\nv1\tVERB\nv2\tVERB\nv3\tVERB\n");
  const CliResult r = run_cli("enrich --benchmark " + dir.file("b1.tsv") + " --benchmark " +
                                  dir.file("b2.tsv") + " --benchmark " + dir.file("b3.tsv") +
                                  " --mft-lexicon " + dir.file("mft.tsv") + " --out " +
                                  dir.file("enrich.tsv"),
                              dir);
  REQUIRE(r.exit_code == 0);
  const std::string report = read_file(dir.file("enrich.tsv"));
  CHECK(count_data_lines(report) == 4);  // header + 3 rows
  CHECK(report.find("b1") < report.find("b2"));
  CHECK(report.find("b2") < report.find("b3"));
}

TEST_CASE("sweep rejects too few windows") {
  TempDir dir;
  write_file(dir.file("corpus.txt"), tiny_corpus());
  write_file(dir.file("mft.tsv"), "alpha\tNOUN\nbeta\tVERB\ngamma\tADJ\n");
  const CliResult r =
      run_cli("sweep --corpus " + dir.file("corpus.txt") + " --window 5 --mft-lexicon " +
                  dir.file("mft.tsv") + " --output-dir " + dir.file("out"),
              dir);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("sweep needs >= 3 windows") != std::string::npos);
}

TEST_CASE("spec-driven sweep emits histogram and summary rows deterministically") {
  TempDir dir;
  // Corpus with class-adjacent structure so ratios vary across windows.
  std::ostringstream grammar;
  grammar << "sentences=1500\nzipf=0.8\nseed=5\n"
          << "class=NOUN,12\nclass=VERB,8\nclass=ADJ,8\n"
          << "template=2,NOUN NOUN VERB ADJ ADJ\n"
          << "template=1,ADJ NOUN NOUN VERB NOUN\n";
  write_file(dir.file("grammar.txt"), grammar.str());
  CliResult g = run_cli("generate-corpus --grammar " + dir.file("grammar.txt") +
                            " --out-corpus " + dir.file("corpus.txt") + " --out-lexicon " +
                            dir.file("gold.tsv"),
                        dir);
  REQUIRE(g.exit_code == 0);

  write_file(dir.file("bench.tsv"),
             "noun1\tnoun2\t9\nnoun1\tverb1\t3\nadj1\tadj2\t8\nnoun2\tverb2\t1\n"
             "noun3\tadj1\t5\nnoun1\tnoun3\t10\nverb1\tverb2\t0\n");
  std::ostringstream spec;
  spec << "corpus=" << dir.file("corpus.txt") << "\n"
       << "mft_lexicon=" << dir.file("gold.tsv") << "\n"
       << "output_dir=" << dir.file("out") << "\n"
       << "benchmarks=" << dir.file("bench.tsv") << "\n"
       << "windows=1,2,3\ndim=12\nepochs=2\nmin_count=1\nseed=9\nk_search=20\nk_keep=5\n"
       << "algorithms=cbow,sgns\n";
  write_file(dir.file("sweep.spec"), spec.str());

  const CliResult r = run_cli("sweep --spec " + dir.file("sweep.spec"), dir);
  REQUIRE(r.exit_code == 0);
  const std::string report = read_file(dir.file("out/sweep.tsv"));

  // One evaluation report per algorithm: 3 windows x 1 benchmark + header.
  for (const std::string algo : {"cbow", "sgns"}) {
    const std::string eval = read_file(dir.file("out/eval_" + algo + ".tsv"));
    CHECK(count_data_lines(eval) == 4);
    CHECK(eval.find("bench\t" + algo + "\t1\t") != std::string::npos);
  }

  int summary_rows = 0, hist_rows = 0;
  std::istringstream lines(report);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("summary\t", 0) == 0) ++summary_rows;
    if (line.rfind("hist\t", 0) == 0) ++hist_rows;
  }
  CHECK(summary_rows == 6);                  // 2 algorithms x 3 pivot POS
  CHECK(hist_rows == 2 * 3 * 3 * 5);         // algos x windows x pivots x tags

  SUBCASE("same seed reruns byte-identically") {
    const CliResult again = run_cli("sweep --spec " + dir.file("sweep.spec"), dir);
    REQUIRE(again.exit_code == 0);
    CHECK(read_file(dir.file("out/sweep.tsv")) == report);
  }

  SUBCASE("parallel jobs do not change the report") {
    std::string spec2 = spec.str();
    spec2 += "jobs=3\n";
    write_file(dir.file("sweep2.spec"), spec2);
    const CliResult par = run_cli("sweep --spec " + dir.file("sweep2.spec"), dir);
    REQUIRE(par.exit_code == 0);
    // Data rows are identical; only the provenance header names another spec.
    auto body = [](const std::string &text) {
      std::string out;
      std::istringstream lines(text);
      std::string line;
      while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#') out += line + "\n";
      return out;
    };
    CHECK(body(read_file(dir.file("out/sweep.tsv"))) == body(report));
  }
}

TEST_CASE("sweep reports partial failures and exits non-zero") {
  TempDir dir;
  write_file(dir.file("mft.tsv"),
             "n1\tNOUN\nn2\tNOUN\nn3\tNOUN\nv1\tVERB\nv2\tVERB\na1\tADJ\na2\tADJ\n");
  // Hand-placed unit vectors whose nearest-neighbor class mix changes across
  // windows. Complete set for sgns; window 3 missing for cbow.
  const std::string w1 =
      "7 2\nn1 1.000000 0.000000\nn2 0.997564 0.069756\nn3 0.990268 0.139173\n"
      "v1 0.500000 0.866025\nv2 0.438371 0.898794\na1 0.034899 0.999391\na2 0.104528 0.994522\n";
  const std::string w2 =
      "7 2\nn1 1.000000 0.000000\nn2 0.997564 0.069756\nn3 0.990268 0.139173\n"
      "v1 0.999391 0.034899\nv2 0.438371 0.898794\na1 0.034899 0.999391\na2 0.104528 0.994522\n";
  const std::string w3 =
      "7 2\nn1 1.000000 0.000000\nn2 0.997564 0.069756\nn3 0.990268 0.139173\n"
      "v1 0.999391 0.034899\nv2 0.994522 0.104528\na1 0.978148 0.207912\na2 0.642788 0.766044\n";
  const auto models = dir.path() / "models";
  std::filesystem::create_directories(models);
  write_file((models / "sgns_w1.vec").string(), w1);
  write_file((models / "sgns_w2.vec").string(), w2);
  write_file((models / "sgns_w3.vec").string(), w3);
  write_file((models / "cbow_w1.vec").string(), w1);
  write_file((models / "cbow_w2.vec").string(), w2);

  const CliResult r = run_cli("sweep --models-dir " + models.string() +
                                  " --window 1 --window 2 --window 3 --mft-lexicon " +
                                  dir.file("mft.tsv") + " --k-search 5 --k-keep 1 --output-dir " +
                                  dir.file("out"),
                              dir);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("cbow window 3") != std::string::npos);
  CHECK(r.err.find("failed job") != std::string::npos);
  // The complete algorithm still produced its rows.
  const std::string report = read_file(dir.file("out/sweep.tsv"));
  CHECK(report.find("summary\tsgns\tNOUN\t1.000000\t0.000000\t") != std::string::npos);
  CHECK(report.find("summary\tcbow") == std::string::npos);
}

TEST_CASE("import-corpus lowercases and strips punctuation") {
  TempDir dir;
  write_file(dir.file("raw.txt"), "Hello, World! 42 times.\nSecond-line?\n");
  const CliResult r = run_cli(
      "import-corpus --in " + dir.file("raw.txt") + " --out " + dir.file("clean.txt"), dir);
  REQUIRE(r.exit_code == 0);
  CHECK(read_file(dir.file("clean.txt")) == "hello  world  42 times \nsecond line \n");
}

TEST_CASE("import-benchmark converts csv and flagged-column tsv") {
  TempDir dir;
  write_file(dir.file("b.csv"), "car,auto,8.94\ntree,rock,1.5\n");
  CliResult r = run_cli("import-benchmark --in " + dir.file("b.csv") + " --out " +
                            dir.file("b.tsv") + " --format csv",
                        dir);
  REQUIRE(r.exit_code == 0);
  CHECK(read_file(dir.file("b.tsv")) == "car\tauto\t8.94\ntree\trock\t1.5\n");

  write_file(dir.file("c.txt"), "car\tauto\tx\t8.94\textra\n");
  r = run_cli("import-benchmark --in " + dir.file("c.txt") + " --out " + dir.file("c.tsv") +
                  " --format tsv --score-col 4",
              dir);
  REQUIRE(r.exit_code == 0);
  CHECK(read_file(dir.file("c.tsv")) == "car\tauto\t8.94\n");
}

TEST_CASE("pivots command writes the purified lists") {
  TempDir dir;
  const auto wn = dir.path() / "wn";
  std::filesystem::create_directories(wn);
  write_file((wn / "index.noun").string(), "  1 header\ndog n 1 0 1 1 001\nrun n 1 0 1 1 002\n");
  write_file((wn / "index.verb").string(), "  1 header\nrun v 1 0 1 1 003\neat v 1 0 1 1 004\n");
  write_file((wn / "index.adj").string(), "  1 header\nred a 1 0 1 1 005\n");
  write_file((wn / "index.adv").string(), "  1 header\nfast r 1 0 1 1 006\n");
  write_file(dir.file("mft.tsv"), "dog\tNOUN\nrun\tVERB\neat\tVERB\nred\tADJ\nfast\tADV\n");
  const CliResult r = run_cli("pivots --wordnet-dir " + wn.string() + " --mft-lexicon " +
                                  dir.file("mft.tsv") + " --out " + dir.file("pivots.tsv"),
                              dir);
  REQUIRE(r.exit_code == 0);
  const std::string out = read_file(dir.file("pivots.tsv"));
  CHECK(out.find("dog\tNOUN") != std::string::npos);
  CHECK(out.find("eat\tVERB") != std::string::npos);
  CHECK(out.find("red\tADJ") != std::string::npos);
  CHECK(out.find("run\t") == std::string::npos);  // noun+verb homonym purged
}

TEST_CASE("neighbors command dumps ranked neighbors") {
  TempDir dir;
  write_file(dir.file("m.vec"), "3 2\na 1 0\nb 0.9 0.1\nc 0 1\n");
  const CliResult r = run_cli("neighbors --model " + dir.file("m.vec") +
                                  " --word a --k 2 --out " + dir.file("nn.tsv"),
                              dir);
  REQUIRE(r.exit_code == 0);
  const std::string out = read_file(dir.file("nn.tsv"));
  CHECK(out.find("a\t1\tb\t") != std::string::npos);
  CHECK(out.find("a\t2\tc\t") != std::string::npos);
}

TEST_CASE("unreadable input names the file") {
  TempDir dir;
  const CliResult r = run_cli("eval --model 2=" + dir.file("missing.vec") + " --benchmark " +
                                  dir.file("missing.tsv") + " --out " + dir.file("r.tsv"),
                              dir);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("missing.vec") != std::string::npos);
}
