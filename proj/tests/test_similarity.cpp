#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "spot/similarity.hpp"

using namespace spot;

TEST_SUITE_BEGIN("similarity");

TEST_CASE("mean_pool arithmetic") {
  const Matrix m = Matrix::from_rows({{1, 0}, {3, 2}});
  const std::vector<double> pooled = mean_pool(m);
  CHECK(pooled == std::vector<double>{2.0, 1.0});
}

TEST_CASE("mean_pool of a single row is the row") {
  const Matrix m = Matrix::from_rows({{0.5, -1.25, 3.0}});
  CHECK(mean_pool(m) == std::vector<double>{0.5, -1.25, 3.0});
}

TEST_CASE("mean_pool matches the elementwise-loop oracle") {
  std::mt19937_64 rng(41);
  const Matrix m = oracles::random_matrix(rng, 4, 3);
  const std::vector<double> pooled = mean_pool(m);
  const std::vector<double> expected = oracles::column_means(m);
  for (std::size_t c = 0; c < 3; ++c) CHECK(pooled[c] == doctest::Approx(expected[c]).epsilon(0).scale(1).epsilon(1e-12));
}

TEST_CASE("cosine of a vector with itself is 1") {
  const std::vector<double> u = {1, 2};
  CHECK(cosine(u, u) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cosine of orthogonal vectors is 0") {
  const std::vector<double> u = {1, 0};
  const std::vector<double> v = {0, 1};
  CHECK(cosine(u, v) == 0.0);
}

TEST_CASE("cosine matches the direct dot/norm oracle") {
  const std::vector<double> u = {1, 2, 3};
  const std::vector<double> v = {4, 5, 6};
  CHECK(std::fabs(cosine(u, v) - oracles::cosine(u, v)) < 1e-12);
}

TEST_CASE("cosine rejects a zero vector") {
  const std::vector<double> z = {0, 0};
  const std::vector<double> v = {1, 1};
  CHECK_THROWS_AS((void)cosine(z, v), ZeroNormError);
  CHECK_THROWS_AS((void)cosine(v, z), ZeroNormError);
}

TEST_CASE("sim_avg_tokens of identical embeddings is 1") {
  std::mt19937_64 rng(7);
  const TaskEmbedding e = oracles::embedding_of(oracles::random_matrix(rng, 3, 4));
  CHECK(sim_avg_tokens(e, e) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sim_avg_tokens ignores positive scaling") {
  std::mt19937_64 rng(8);
  const Matrix a = oracles::random_matrix(rng, 3, 4);
  Matrix b = a;
  for (double& v : b.data()) v *= 3.5;
  CHECK(sim_avg_tokens(oracles::embedding_of(a), oracles::embedding_of(b)) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sim_avg_tokens matches the pool-then-cosine oracle") {
  std::mt19937_64 rng(9);
  const Matrix a = oracles::random_matrix(rng, 3, 4);
  const Matrix b = oracles::random_matrix(rng, 3, 4);
  const double got = sim_avg_tokens(oracles::embedding_of(a), oracles::embedding_of(b));
  CHECK(std::fabs(got - oracles::sim_avg_tokens(a, b)) < 1e-12);
}

TEST_CASE("sim_per_token with L=1 reduces to plain cosine") {
  const Matrix a = Matrix::from_rows({{1, 2, 3}});
  const Matrix b = Matrix::from_rows({{4, 5, 6}});
  const double got = sim_per_token(oracles::embedding_of(a), oracles::embedding_of(b));
  CHECK(std::fabs(got - cosine(a.row(0), b.row(0))) < 1e-12);
}

TEST_CASE("sim_per_token self-similarity with orthonormal rows is 0.5") {
  const Matrix a = Matrix::from_rows({{1, 0}, {0, 1}});
  const TaskEmbedding e = oracles::embedding_of(a);
  CHECK(sim_per_token(e, e) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sim_per_token matches the double-loop oracle") {
  std::mt19937_64 rng(10);
  const Matrix a = oracles::random_matrix(rng, 3, 4);
  const Matrix b = oracles::random_matrix(rng, 3, 4);
  const double got = sim_per_token(oracles::embedding_of(a), oracles::embedding_of(b));
  CHECK(std::fabs(got - oracles::sim_per_token(a, b)) < 1e-12);
}

TEST_CASE("sim_per_token names the zero-norm row") {
  Matrix a = Matrix::from_rows({{1, 1}, {0, 0}});
  const Matrix b = Matrix::from_rows({{1, 0}, {0, 1}});
  try {
    (void)sim_per_token(oracles::embedding_of(a), oracles::embedding_of(b));
    FAIL("expected ZeroNormError");
  } catch (const ZeroNormError& e) {
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
}

TEST_CASE("metrics reject mismatched shapes") {
  std::mt19937_64 rng(11);
  const TaskEmbedding a = oracles::embedding_of(oracles::random_matrix(rng, 2, 3));
  const TaskEmbedding b = oracles::embedding_of(oracles::random_matrix(rng, 3, 3));
  CHECK_THROWS_AS((void)sim_avg_tokens(a, b), ShapeMismatchError);
  CHECK_THROWS_AS((void)sim_per_token(a, b), ShapeMismatchError);
}

TEST_CASE("both metrics match brute force on 100 random pairs") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t L = 1 + rng() % 8;
    const std::size_t E = 1 + rng() % 8;
    const Matrix a = oracles::random_matrix(rng, L, E);
    const Matrix b = oracles::random_matrix(rng, L, E);
    const TaskEmbedding ea = oracles::embedding_of(a);
    const TaskEmbedding eb = oracles::embedding_of(b);
    CHECK(std::fabs(sim_avg_tokens(ea, eb) - oracles::sim_avg_tokens(a, b)) < 1e-12);
    CHECK(std::fabs(sim_per_token(ea, eb) - oracles::sim_per_token(a, b)) < 1e-12);
  }
}

TEST_CASE("metrics are symmetric and bounded on random pairs") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t L = 1 + rng() % 6;
    const std::size_t E = 1 + rng() % 6;
    const TaskEmbedding a = oracles::embedding_of(oracles::random_matrix(rng, L, E));
    const TaskEmbedding b = oracles::embedding_of(oracles::random_matrix(rng, L, E));
    for (const SimilarityMetric metric : {SimilarityMetric::AvgTokens, SimilarityMetric::PerToken}) {
      const double ab = similarity(a, b, metric);
      const double ba = similarity(b, a, metric);
      CHECK(std::fabs(ab - ba) < 1e-12);
      CHECK(ab >= -1.0);
      CHECK(ab <= 1.0);
    }
  }
}

TEST_CASE("row permutations change neither metric") {
  std::mt19937_64 rng(14);
  const Matrix a = oracles::random_matrix(rng, 5, 4);
  const Matrix b = oracles::random_matrix(rng, 5, 4);
  Matrix shuffled = b;
  const std::vector<std::size_t> perm = {3, 0, 4, 1, 2};
  for (std::size_t r = 0; r < perm.size(); ++r)
    for (std::size_t c = 0; c < 4; ++c) shuffled(r, c) = b(perm[r], c);

  const TaskEmbedding ea = oracles::embedding_of(a);
  const TaskEmbedding eb = oracles::embedding_of(b);
  const TaskEmbedding es = oracles::embedding_of(shuffled);
  CHECK(std::fabs(sim_per_token(ea, eb) - sim_per_token(ea, es)) < 1e-12);
  CHECK(std::fabs(sim_avg_tokens(ea, eb) - sim_avg_tokens(ea, es)) < 1e-9);
}

TEST_CASE("scaling one row leaves sim_per_token unchanged") {
  std::mt19937_64 rng(15);
  const Matrix a = oracles::random_matrix(rng, 4, 3);
  Matrix b = oracles::random_matrix(rng, 4, 3);
  const double before = sim_per_token(oracles::embedding_of(a), oracles::embedding_of(b));
  for (std::size_t c = 0; c < 3; ++c) b(2, c) *= 7.0;
  const double after = sim_per_token(oracles::embedding_of(a), oracles::embedding_of(b));
  CHECK(std::fabs(before - after) < 1e-9);
}

TEST_CASE("cross_run_similarity of single-run lists is the plain metric") {
  std::mt19937_64 rng(16);
  const TaskEmbedding a = oracles::embedding_of(oracles::random_matrix(rng, 3, 3));
  const TaskEmbedding b = oracles::embedding_of(oracles::random_matrix(rng, 3, 3));
  CHECK(cross_run_similarity({a}, {b}, SimilarityMetric::AvgTokens) ==
        doctest::Approx(sim_avg_tokens(a, b)).epsilon(1e-15));
}

TEST_CASE("cross_run_similarity of identical run lists is 1") {
  std::mt19937_64 rng(17);
  const TaskEmbedding e = oracles::embedding_of(oracles::random_matrix(rng, 3, 3));
  const std::vector<TaskEmbedding> runs = {e, e, e};
  CHECK(cross_run_similarity(runs, runs, SimilarityMetric::AvgTokens) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cross_run_similarity averages all nine pairs") {
  std::mt19937_64 rng(18);
  std::vector<TaskEmbedding> runs_a;
  std::vector<TaskEmbedding> runs_b;
  for (int i = 0; i < 3; ++i) {
    runs_a.push_back(oracles::embedding_of(oracles::random_matrix(rng, 3, 4)));
    runs_b.push_back(oracles::embedding_of(oracles::random_matrix(rng, 3, 4)));
  }
  double expected = 0.0;
  for (const TaskEmbedding& a : runs_a)
    for (const TaskEmbedding& b : runs_b)
      expected += oracles::sim_per_token(a.tokens, b.tokens);
  expected /= 9.0;
  const double got = cross_run_similarity(runs_a, runs_b, SimilarityMetric::PerToken);
  CHECK(std::fabs(got - expected) < 1e-12);
}

TEST_CASE("cross_run_similarity rejects empty lists") {
  std::mt19937_64 rng(19);
  const std::vector<TaskEmbedding> runs = {
      oracles::embedding_of(oracles::random_matrix(rng, 2, 2))};
  CHECK_THROWS_AS((void)cross_run_similarity({}, runs, SimilarityMetric::AvgTokens),
                  EmptyRunListError);
  CHECK_THROWS_AS((void)cross_run_similarity(runs, {}, SimilarityMetric::AvgTokens),
                  EmptyRunListError);
}

TEST_SUITE_END();
