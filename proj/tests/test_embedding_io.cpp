#include <doctest.h>

#include <cmath>
#include <random>

#include "emograph/embedding.hpp"
#include "emograph/errors.hpp"
#include "testutil.hpp"

using namespace emograph;

namespace {

Vocabulary vocab_of(std::size_t n) {
  Vocabulary vocab;
  for (std::size_t k = 0; k < n; ++k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%X", static_cast<unsigned>(0x1F600 + k));
    vocab.add(buf);
  }
  return vocab;
}

}  // namespace

TEST_CASE("round-trip of a random 10x4 matrix stays within 1e-8") {
  testutil::TempDir dir("embio");
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Matrix m(10, 4);
  for (double& v : m.flat()) v = uniform(rng);

  const auto path = dir.file("emb.txt");
  const Vocabulary vocab = vocab_of(10);
  save_embeddings(m, vocab, path);
  const EmbeddingSet loaded = load_embeddings(path);

  REQUIRE(loaded.vectors.rows() == 10);
  REQUIRE(loaded.vectors.cols() == 4);
  double worst = 0.0;
  for (std::size_t r = 0; r < 10; ++r) {
    CHECK(loaded.vocab.token(static_cast<NodeId>(r)) == vocab.token(static_cast<NodeId>(r)));
    for (std::size_t c = 0; c < 4; ++c) {
      worst = std::max(worst, std::fabs(loaded.vectors.row(r)[c] - m.row(r)[c]));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("declared row count must match the file body") {
  testutil::TempDir dir("embio");
  const auto path = dir.file("short.txt");
  testutil::write_file(path,
                       "5 2\n"
                       "1F600 0.1 0.2\n"
                       "1F601 0.3 0.4\n"
                       "1F602 0.5 0.6\n"
                       "1F603 0.7 0.8\n");
  CHECK_THROWS_AS(load_embeddings(path), FormatError);
}

TEST_CASE("writing an empty vocabulary is refused") {
  testutil::TempDir dir("embio");
  Vocabulary empty;
  Matrix m(0, 4);
  CHECK_THROWS_AS(save_embeddings(m, empty, dir.file("x.txt")), FormatError);
}

TEST_CASE("malformed embedding files are rejected") {
  testutil::TempDir dir("embio");
  const auto path = dir.file("bad.txt");

  SUBCASE("bad float") {
    testutil::write_file(path, "1 2\n1F600 0.1 zork\n");
    CHECK_THROWS_AS(load_embeddings(path), FormatError);
  }
  SUBCASE("extra column") {
    testutil::write_file(path, "1 2\n1F600 0.1 0.2 0.3\n");
    CHECK_THROWS_AS(load_embeddings(path), FormatError);
  }
  SUBCASE("missing column") {
    testutil::write_file(path, "1 2\n1F600 0.1\n");
    CHECK_THROWS_AS(load_embeddings(path), FormatError);
  }
  SUBCASE("duplicate token") {
    testutil::write_file(path, "2 1\n1F600 0.1\n1F600 0.2\n");
    CHECK_THROWS_AS(load_embeddings(path), FormatError);
  }
  SUBCASE("non-emoji token") {
    testutil::write_file(path, "1 1\n41 0.1\n");
    CHECK_THROWS_AS(load_embeddings(path), FormatError);
  }
  SUBCASE("empty file") {
    testutil::write_file(path, "");
    CHECK_THROWS_AS(load_embeddings(path), FormatError);
  }
  SUBCASE("zero dimension header") {
    testutil::write_file(path, "1 0\n1F600\n");
    CHECK_THROWS_AS(load_embeddings(path), FormatError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_embeddings(dir.file("absent.txt")), FileNotFound);
  }
}

TEST_CASE("vocabulary size must match the matrix rows on save") {
  testutil::TempDir dir("embio");
  Matrix m(3, 2);
  CHECK_THROWS_AS(save_embeddings(m, vocab_of(4), dir.file("x.txt")), DimensionMismatch);
}
