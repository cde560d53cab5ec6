#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "hiertags/error.hpp"
#include "hiertags/random.hpp"
#include "hiertags/stats.hpp"

using namespace hiertags;

// Reference values computed independently in double precision from the
// hypergeometric moments and the entropy definition.
constexpr double kVariance_100_20_30 = 3.3939393939393945;
constexpr double kZ_100_20_30_10 = 2.1712405933672376;
constexpr double kEntropy_3_1 = 0.5623351446188083;

TEST(ExpectedCooccurrence, Examples) {
  EXPECT_DOUBLE_EQ(expected_cooccurrence(100, 20, 30), 6.0);
  EXPECT_DOUBLE_EQ(expected_cooccurrence(57, 57, 13), 13.0);
  EXPECT_DOUBLE_EQ(expected_cooccurrence(10, 0, 5), 0.0);
}

TEST(CooccurrenceVariance, Examples) {
  EXPECT_NEAR(cooccurrence_variance(100, 20, 30), kVariance_100_20_30, 1e-12);
  EXPECT_EQ(cooccurrence_variance(40, 40, 7), 0.0);
  EXPECT_EQ(cooccurrence_variance(40, 9, 40), 0.0);
}

TEST(CooccurrenceVariance, DegeneratePopulation) {
  try {
    cooccurrence_variance(1, 1, 1);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("degenerate population"), std::string::npos);
  }
}

TEST(ZScore, Examples) {
  EXPECT_EQ(z_score({100, 20, 30, 6}), 0.0);
  EXPECT_NEAR(z_score({100, 20, 30, 10}), kZ_100_20_30_10, 1e-9);
  EXPECT_EQ(z_score({30, 30, 20, 20}), 0.0);
  EXPECT_EQ(z_score({1, 1, 1, 1}), 0.0);
}

TEST(ZScore, SymmetricInTheTwoTags) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t q = 2 + rng.below(500);
    const std::uint64_t a = rng.below(q + 1), b = rng.below(q + 1);
    const std::uint64_t lo = a + b > q ? a + b - q : 0;
    const std::uint64_t both = lo + rng.below(std::min(a, b) - lo + 1);
    EXPECT_EQ(z_score({q, a, b, both}), z_score({q, b, a, both}));
  }
}

// Random assignment: tag i marks 20 of 100 objects uniformly, tag j is fixed
// on the first 30. The overlap count is a hypergeometric draw.
TEST(ZScore, MonteCarloAgreesWithClosedForm) {
  constexpr int samples = 1'000'000;
  Rng rng(2024);
  std::vector<int> pool(100);
  double sum = 0, sum2 = 0, sum3 = 0, sum4 = 0;
  for (int s = 0; s < samples; ++s) {
    std::iota(pool.begin(), pool.end(), 0);
    int overlap = 0;
    for (int k = 0; k < 20; ++k) {
      const auto pick = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(100 - k)));
      std::swap(pool[k], pool[pick]);
      overlap += pool[k] < 30;
    }
    const double x = overlap;
    sum += x;
    sum2 += x * x;
    sum3 += x * x * x;
    sum4 += x * x * x * x;
  }
  const double n = samples;
  const double mean = sum / n;
  const double m2 = sum2 / n - mean * mean;
  const double m4 = sum4 / n - 4 * mean * sum3 / n + 6 * mean * mean * sum2 / n - 3 * std::pow(mean, 4);
  const double var = m2 * n / (n - 1);
  const double se_mean = std::sqrt(var / n);
  const double se_var = std::sqrt((m4 - m2 * m2) / n);
  EXPECT_LT(std::abs(mean - expected_cooccurrence(100, 20, 30)), 3 * se_mean);
  EXPECT_LT(std::abs(var - cooccurrence_variance(100, 20, 30)), 3 * se_var);

  const double z_mc = (10.0 - mean) / std::sqrt(var);
  const double kurtosis = m4 / (m2 * m2);
  const double se_z = std::sqrt(1.0 / n + z_mc * z_mc * (kurtosis - 1.0) / (4.0 * n));
  EXPECT_LT(std::abs(z_mc - z_score({100, 20, 30, 10})), 3 * se_z);
}

TEST(InLinkEntropy, Examples) {
  const std::vector<double> uniform{5, 5, 5, 5}, single{7}, skewed{3, 1}, none{};
  EXPECT_NEAR(in_link_entropy(uniform), std::log(4.0), 1e-12);
  EXPECT_EQ(in_link_entropy(single), 0.0);
  EXPECT_NEAR(in_link_entropy(skewed), kEntropy_3_1, 1e-12);
  EXPECT_EQ(in_link_entropy(none), 0.0);
}

TEST(InLinkEntropy, RejectsNonPositiveWeights) {
  const std::vector<double> zero{1, 0}, negative{2, -1};
  EXPECT_THROW(in_link_entropy(zero), Error);
  EXPECT_THROW(in_link_entropy(negative), Error);
}

TEST(InLinkEntropy, ScaleInvariantAndBounded) {
  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> w(1 + rng.below(30));
    for (double& x : w) x = 0.01 + rng.uniform() * 100;
    const double c = 0.001 + rng.uniform() * 1000;
    std::vector<double> scaled = w;
    for (double& x : scaled) x *= c;
    const double h = in_link_entropy(w);
    EXPECT_NEAR(in_link_entropy(scaled), h, 1e-12);
    EXPECT_GE(h, -1e-15);
    EXPECT_LE(h, std::log(static_cast<double>(w.size())) + 1e-12);
  }
}

namespace {

CentralityVector centrality_of(std::size_t n, std::vector<WeightedLink> links, CentralityOptions opt = {}) {
  return eigenvector_centrality(WeightedGraph(n, links), opt);
}

}  // namespace

TEST(EigenvectorCentrality, TwoTags) {
  const auto c = centrality_of(2, {{0, 1, 7.0}});
  EXPECT_NEAR(c.score[0], 0.5, 1e-15);
  EXPECT_NEAR(c.score[1], 0.5, 1e-15);
  EXPECT_EQ(c.iterations, 100);
}

TEST(EigenvectorCentrality, PathMatchesClosedForm) {
  const double s = 2 + std::sqrt(2.0);
  const auto c = centrality_of(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  EXPECT_NEAR(c.score[0], 1 / s, 1e-6);
  EXPECT_NEAR(c.score[1], std::sqrt(2.0) / s, 1e-6);
  EXPECT_NEAR(c.score[2], 1 / s, 1e-6);
}

TEST(EigenvectorCentrality, PlainIterationOscillatesOnPath) {
  // Plain power iteration on a bipartite graph alternates between two
  // vectors; the shifted default does not.
  const auto plain = centrality_of(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {100, PowerIteration::plain, 0.0});
  EXPECT_GT(std::abs(plain.score[1] - std::sqrt(2.0) / (2 + std::sqrt(2.0))), 1e-3);
}

TEST(EigenvectorCentrality, StarCenterDominates) {
  const auto c = centrality_of(5, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {0, 4, 1.0}});
  for (TagId leaf = 1; leaf < 5; ++leaf) EXPECT_GT(c.score[0], c.score[leaf]);
  EXPECT_NEAR(std::accumulate(c.score.begin(), c.score.end(), 0.0), 1.0, 1e-12);
}

TEST(EigenvectorCentrality, EdgelessGraphIsUniform) {
  const auto c = centrality_of(4, {});
  for (double v : c.score) EXPECT_EQ(v, 0.25);
}

TEST(EigenvectorCentrality, IsolatedTagsScoreZero) {
  const auto c = centrality_of(4, {{0, 1, 2.0}, {1, 2, 1.0}});
  EXPECT_EQ(c.score[3], 0.0);
  EXPECT_NEAR(c.score[0] + c.score[1] + c.score[2], 1.0, 1e-12);
}

TEST(EigenvectorCentrality, ToleranceStopsEarly) {
  const auto c = centrality_of(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}, {100, PowerIteration::shifted, 1e-12});
  EXPECT_LT(c.iterations, 100);
  for (double v : c.score) EXPECT_NEAR(v, 1.0 / 3, 1e-12);
}

namespace {

struct RandomGraph {
  std::size_t n;
  std::vector<WeightedLink> links;
};

RandomGraph random_graph(Rng& rng) {
  RandomGraph g{5 + rng.below(96), {}};
  // Random spanning tree keeps the graph connected; extra links at random.
  const double p = 0.02 + rng.uniform() * 0.3;
  for (TagId i = 1; i < g.n; ++i) g.links.push_back({static_cast<TagId>(rng.below(i)), i, 0.5 + rng.uniform()});
  for (TagId i = 0; i < g.n; ++i) {
    for (TagId j = i + 1; j < g.n; ++j) {
      if (rng.bernoulli(p)) g.links.push_back({i, j, 0.5 + 2 * rng.uniform()});
    }
  }
  // Merge parallel links created by the two passes.
  std::sort(g.links.begin(), g.links.end(), [](const WeightedLink& x, const WeightedLink& y) {
    return std::pair(std::min(x.a, x.b), std::max(x.a, x.b)) < std::pair(std::min(y.a, y.b), std::max(y.a, y.b));
  });
  std::vector<WeightedLink> merged;
  for (const auto& l : g.links) {
    const auto key = std::pair(std::min(l.a, l.b), std::max(l.a, l.b));
    if (!merged.empty() && std::pair(std::min(merged.back().a, merged.back().b),
                                     std::max(merged.back().a, merged.back().b)) == key) {
      merged.back().weight += l.weight;
    } else {
      merged.push_back(l);
    }
  }
  g.links = std::move(merged);
  return g;
}

}  // namespace

TEST(EigenvectorCentrality, MatchesDenseEigensolver) {
  Rng rng(77);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 100; ++trial) {
    const auto g = random_graph(rng);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.n), static_cast<Eigen::Index>(g.n));
    for (const auto& l : g.links) a(l.a, l.b) = a(l.b, l.a) = l.weight;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    const auto& values = solver.eigenvalues();  // ascending
    const double top = values(values.size() - 1);
    // Power-method gap: distance of the next largest |eigenvalue| from the top.
    const double runner_up = std::max(std::abs(values(values.size() - 2)), std::abs(values(0)));
    if (1.0 - runner_up / top < 0.05) continue;
    Eigen::VectorXd v = solver.eigenvectors().col(values.size() - 1).cwiseAbs();
    v /= v.sum();

    const auto c = centrality_of(g.n, g.links);
    for (std::size_t t = 0; t < g.n; ++t) EXPECT_NEAR(c.score[t], v(static_cast<Eigen::Index>(t)), 1e-4);
    ++checked;
  }
  EXPECT_GE(checked, 100);
}

TEST(EigenvectorCentrality, InvariantUnderScalingAndRelabeling) {
  Rng rng(78);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_graph(rng);
    std::vector<TagId> perm(g.n);
    std::iota(perm.begin(), perm.end(), TagId{0});
    rng.shuffle(perm);
    std::vector<WeightedLink> moved, scaled;
    for (const auto& l : g.links) {
      moved.push_back({perm[l.a], perm[l.b], l.weight});
      scaled.push_back({l.a, l.b, l.weight * 8.0});
    }
    const auto base = centrality_of(g.n, g.links);
    const auto relabeled = centrality_of(g.n, moved);
    const auto bigger = centrality_of(g.n, scaled);
    for (TagId t = 0; t < g.n; ++t) {
      EXPECT_NEAR(relabeled.score[perm[t]], base.score[t], 1e-12);
      EXPECT_NEAR(bigger.score[t], base.score[t], 1e-12);
    }
  }
}
