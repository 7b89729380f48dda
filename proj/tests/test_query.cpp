#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "emograph/errors.hpp"
#include "emograph/query.hpp"
#include "testutil.hpp"

using namespace emograph;

namespace {

EmbeddingSet make_set(const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  EmbeddingSet set;
  set.vectors = Matrix(rows.size(), rows.front().second.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    REQUIRE(set.vocab.add(rows[r].first) == r);
    std::copy(rows[r].second.begin(), rows[r].second.end(), set.vectors.row(r).begin());
  }
  return set;
}

}  // namespace

TEST_CASE("cosine_similarity fundamentals") {
  const std::vector<double> x{0.3, -0.7, 2.0};
  CHECK(cosine_similarity(x, x) == doctest::Approx(1.0).epsilon(1e-15));

  const std::vector<double> e1{1.0, 0.0};
  const std::vector<double> e2{0.0, 1.0};
  CHECK(cosine_similarity(e1, e2) == doctest::Approx(0.0).epsilon(1e-15));

  const std::vector<double> diag{1.0, 1.0};
  CHECK(cosine_similarity(e1, diag) == doctest::Approx(0.70710678118654752).epsilon(1e-12));

  const std::vector<double> neg{-1.0, 0.0};
  CHECK(cosine_similarity(e1, neg) == doctest::Approx(-1.0).epsilon(1e-15));

  CHECK_THROWS_AS(cosine_similarity(e1, std::vector<double>{0.0, 0.0}), ZeroVector);
  CHECK_THROWS_AS(cosine_similarity(e1, x), DimensionMismatch);
}

TEST_CASE("cosine_similarity is symmetric and positive-scale invariant") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> uniform(-2.0, 2.0);
  std::uniform_real_distribution<double> scale(0.01, 50.0);
  for (int round = 0; round < 100; ++round) {
    std::vector<double> a(5), b(5);
    for (auto& v : a) v = uniform(rng);
    for (auto& v : b) v = uniform(rng);
    const double base = cosine_similarity(a, b);
    CHECK(cosine_similarity(b, a) == doctest::Approx(base).epsilon(1e-15));
    std::vector<double> sa = a, sb = b;
    const double alpha = scale(rng), beta = scale(rng);
    for (auto& v : sa) v *= alpha;
    for (auto& v : sb) v *= beta;
    CHECK(cosine_similarity(sa, sb) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("top_k_similar returns the exact ranked neighbors") {
  // Hand-built vectors with known pairwise cosines against the query (1,0):
  // 1F601 -> 1.0, 1F602 -> 1/sqrt(2), 1F603 -> 0, 1F604 -> -1.
  const auto set = make_set({
      {"1F600", {1.0, 0.0}},
      {"1F601", {2.0, 0.0}},
      {"1F602", {1.0, 1.0}},
      {"1F603", {0.0, 3.0}},
      {"1F604", {-5.0, 0.0}},
  });

  const auto top = top_k_similar(set, "1F600", 4);
  REQUIRE(top.size() == 4);
  CHECK(top[0].token == "1F601");
  CHECK(top[0].score == doctest::Approx(1.0));
  CHECK(top[1].token == "1F602");
  CHECK(top[1].score == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(top[2].token == "1F603");
  CHECK(top[2].score == doctest::Approx(0.0));
  CHECK(top[3].token == "1F604");
  CHECK(top[3].score == doctest::Approx(-1.0));

  SUBCASE("k = |V|-1 returns everything, fully sorted") {
    for (std::size_t i = 1; i < top.size(); ++i) CHECK(top[i - 1].score >= top[i].score);
  }
  SUBCASE("query token never appears in its own results") {
    for (const auto& r : top) CHECK(r.token != "1F600");
  }
  SUBCASE("prefix property: smaller k is a prefix of larger k") {
    const auto top2 = top_k_similar(set, "1F600", 2);
    REQUIRE(top2.size() == 2);
    CHECK(top2[0].token == top[0].token);
    CHECK(top2[1].token == top[1].token);
  }
  SUBCASE("k out of range") {
    CHECK_THROWS_AS(top_k_similar(set, "1F600", 0), KOutOfRange);
    CHECK_THROWS_AS(top_k_similar(set, "1F600", 5), KOutOfRange);
  }
  SUBCASE("unknown token") {
    CHECK_THROWS_AS(top_k_similar(set, "1F999", 2), UnknownToken);
  }
}

TEST_CASE("ties are broken by ascending token serialization") {
  const auto set = make_set({
      {"1F600", {1.0, 0.0}},
      {"1F60B", {3.0, 0.0}},  // cosine 1 with the query
      {"1F60A", {2.0, 0.0}},  // cosine 1 with the query
      {"1F603", {0.0, 1.0}},
  });
  const auto top = top_k_similar(set, "1F600", 3);
  CHECK(top[0].token == "1F60A");
  CHECK(top[1].token == "1F60B");
  CHECK(top[2].token == "1F603");
}

TEST_CASE("analogy ranks by similarity to b - a + c") {
  // Constructed so that vec(b) - vec(a) + vec(c) equals vec(d) exactly.
  const auto set = make_set({
      {"1F600", {1.0, 0.0, 0.0}},   // a
      {"1F601", {1.0, 1.0, 0.0}},   // b
      {"1F602", {0.0, 0.0, 1.0}},   // c
      {"1F603", {0.0, 1.0, 1.0}},   // d = b - a + c
      {"1F604", {-1.0, -1.0, -1.0}},
  });

  const auto results = analogy(set, "1F600", "1F601", "1F602", 2);
  REQUIRE(results.size() == 2);
  CHECK(results[0].token == "1F603");
  CHECK(results[0].score == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("a, b, c are excluded from candidates") {
    const auto all = analogy(set, "1F600", "1F601", "1F602", 2);
    for (const auto& r : all) {
      CHECK(r.token != "1F600");
      CHECK(r.token != "1F601");
      CHECK(r.token != "1F602");
    }
  }
  SUBCASE("unknown token raises") {
    CHECK_THROWS_AS(analogy(set, "1F600", "1F601", "1F999", 1), UnknownToken);
  }
  SUBCASE("k out of range") {
    CHECK_THROWS_AS(analogy(set, "1F600", "1F601", "1F602", 3), KOutOfRange);
  }
}

TEST_CASE("degenerate analogy a = b reduces to c's nearest neighbor") {
  const auto set = make_set({
      {"1F600", {1.0, 0.0}},
      {"1F601", {0.0, 1.0}},
      {"1F602", {0.0, 2.0}},
      {"1F603", {1.0, 1.0}},
  });
  // a = b = 1F600, c = 1F601. Target = vec(c); candidates exclude {a, c}.
  const auto results = analogy(set, "1F600", "1F600", "1F601", 2);
  REQUIRE(results.size() == 2);
  CHECK(results[0].token == "1F602");  // same direction as c
  CHECK(results[0].score == doctest::Approx(1.0));
}

TEST_CASE("analogy with an all-zero target raises ZeroVector") {
  // c = a - b makes vec(b) - vec(a) + vec(c) vanish while every row stays
  // nonzero.
  const auto set = make_set({
      {"1F600", {1.0, 1.0}},
      {"1F601", {2.0, 3.0}},
      {"1F602", {-1.0, -2.0}},
      {"1F603", {0.5, 0.5}},
  });
  CHECK_THROWS_AS(analogy(set, "1F600", "1F601", "1F602", 1), ZeroVector);
}

TEST_CASE("swapping a and c generally changes the analogy target") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  // b - a + c != b - c + a unless a == c; check on a random instance.
  std::vector<double> a(4), b(4), c(4);
  for (auto& v : a) v = uniform(rng);
  for (auto& v : b) v = uniform(rng);
  for (auto& v : c) v = uniform(rng);
  std::vector<double> t1(4), t2(4);
  for (int i = 0; i < 4; ++i) {
    t1[i] = b[i] - a[i] + c[i];
    t2[i] = b[i] - c[i] + a[i];
  }
  CHECK_FALSE(std::equal(t1.begin(), t1.end(), t2.begin()));
}

TEST_CASE("top_k equals an independent brute-force scan for every k") {
  std::mt19937_64 rng(917);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  for (int r = 0; r < 20; ++r) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%X", 0x1F600 + r);
    std::vector<double> v(5);
    for (auto& x : v) x = uniform(rng);
    rows.push_back({buf, v});
  }
  const auto set = make_set(rows);

  // Selection-based oracle: repeatedly pick the best remaining candidate.
  auto oracle_top = [&](const std::string& query, std::size_t k) {
    const NodeId q = *set.vocab.find(query);
    std::vector<std::pair<double, std::string>> scored;
    for (NodeId id = 0; id < set.vocab.size(); ++id) {
      if (id == q) continue;
      scored.push_back({cosine_similarity(set.vectors.row(q), set.vectors.row(id)),
                        set.vocab.token(id)});
    }
    std::vector<std::pair<double, std::string>> picked;
    while (picked.size() < k) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < scored.size(); ++i) {
        const bool better = scored[i].first > scored[best].first ||
                            (scored[i].first == scored[best].first &&
                             scored[i].second < scored[best].second);
        if (better) best = i;
      }
      picked.push_back(scored[best]);
      scored.erase(scored.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return picked;
  };

  for (std::size_t k = 1; k <= 19; ++k) {
    const auto got = top_k_similar(set, "1F600", k);
    const auto expected = oracle_top("1F600", k);
    REQUIRE(got.size() == k);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(got[i].token == expected[i].second);
      CHECK(got[i].score == doctest::Approx(expected[i].first).epsilon(1e-15));
    }
  }
}

TEST_CASE("orderings are invariant under global positive scaling") {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  for (int r = 0; r < 12; ++r) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%X", 0x1F600 + r);
    std::vector<double> v(6);
    for (auto& x : v) x = uniform(rng);
    rows.push_back({buf, v});
  }
  const auto set = make_set(rows);
  auto scaled = make_set(rows);
  for (double& v : scaled.vectors.flat()) v *= 37.5;

  const auto base_top = top_k_similar(set, "1F600", 11);
  const auto scaled_top = top_k_similar(scaled, "1F600", 11);
  for (std::size_t i = 0; i < base_top.size(); ++i) {
    CHECK(base_top[i].token == scaled_top[i].token);
  }
  const auto base_analogy = analogy(set, "1F600", "1F601", "1F602", 9);
  const auto scaled_analogy = analogy(scaled, "1F600", "1F601", "1F602", 9);
  for (std::size_t i = 0; i < base_analogy.size(); ++i) {
    CHECK(base_analogy[i].token == scaled_analogy[i].token);
  }
}
