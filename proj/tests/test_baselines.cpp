#include <gtest/gtest.h>

#include "hiertags/baselines.hpp"
#include "hiertags/error.hpp"
#include "test_support.hpp"

using namespace hiertags;
using namespace hiertags::testing;

using Links = std::vector<std::pair<std::string, std::string>>;

namespace {

const std::vector<std::pair<std::vector<std::string>, int>> nested{
    {{"a"}, 100}, {{"a", "b"}, 100}, {{"a", "b", "c"}, 100}};

Links real_links(const Hierarchy& h) { return named_edges(h.without_synthetic_root()); }

}  // namespace

TEST(CosineSimilarity, ObjectVectors) {
  const auto net = make_network(nested);
  const TagId a = 0, b = 1, c = 2;
  EXPECT_NEAR(cosine_similarity(net, a, b), 200 / std::sqrt(300.0 * 200.0), 1e-15);
  EXPECT_NEAR(cosine_similarity(net, b, c), 100 / std::sqrt(200.0 * 100.0), 1e-15);
}

TEST(Heymann, SingleTag) {
  const auto h = extract_heymann(make_network({{{"a"}, 2}}));
  ASSERT_TRUE(h.synthetic_root());
  EXPECT_EQ(h.tag_count(), 2u);
  EXPECT_EQ(h.without_synthetic_root().edge_count(), 0u);
}

TEST(Heymann, NestedCorpusGivesChain) {
  const auto h = extract_heymann(make_network(nested));
  EXPECT_TRUE(h.is_tree());
  EXPECT_EQ(real_links(h), (Links{{"a", "b"}, {"b", "c"}}));
}

TEST(Heymann, SeparateClustersHangFromTheSyntheticRoot) {
  const auto net = make_network({{{"a", "b"}, 40}, {{"a"}, 10}, {{"x", "y"}, 40}, {{"x"}, 10}});
  HeymannParams p;
  p.similarity_threshold = 0.5;
  const auto h = extract_heymann(net, p);
  EXPECT_TRUE(h.is_tree());
  const TagId root = *h.synthetic_root();
  std::vector<std::string> heads;
  for (TagId t : h.children(root)) heads.push_back(h.name(t));
  std::sort(heads.begin(), heads.end());
  EXPECT_EQ(heads, (std::vector<std::string>{"a", "x"}));
  EXPECT_EQ(real_links(h), (Links{{"a", "b"}, {"x", "y"}}));
}

TEST(Heymann, SyntheticRootNameAvoidsClashes) {
  const auto h = extract_heymann(make_network({{{"<root>", "b"}, 4}}));
  EXPECT_NE(h.name(*h.synthetic_root()), "<root>");
}

TEST(Heymann, AllCentralitiesGiveTrees) {
  Rng rng(41);
  for (auto kind : {HeymannCentrality::degree, HeymannCentrality::strength, HeymannCentrality::closeness}) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto net = build_cooccurrence(random_corpus(1 + rng.below(80), 1 + rng.below(300), rng));
      const auto h = extract_heymann(net, {rng.uniform(), kind});
      EXPECT_TRUE(h.is_tree());
      EXPECT_EQ(h.tag_count(), net.tag_count() + 1);
      EXPECT_EQ(h.roots(), std::vector<TagId>{*h.synthetic_root()});
    }
  }
}

TEST(Heymann, RejectsBadThreshold) {
  EXPECT_THROW(extract_heymann(make_network(nested), {1.5, HeymannCentrality::degree}), Error);
}

TEST(Schmitz, NestedCorpusDropsTransitiveLink) {
  const auto h = extract_schmitz(make_corpus(nested));
  EXPECT_EQ(named_edges(h), (Links{{"a", "b"}, {"b", "c"}}));
}

TEST(Schmitz, IndependentTagsStayIsolated) {
  const auto h = extract_schmitz(make_corpus({{{"a", "b"}, 20}, {{"a"}, 80}, {{"b"}, 80}, {{"c"}, 50}}));
  EXPECT_EQ(h.edge_count(), 0u);
  EXPECT_EQ(h.roots().size(), 3u);
}

TEST(Schmitz, MinimumCooccurrence) {
  const auto corpus = make_corpus({{{"a", "b"}, 9}, {{"a"}, 30}});
  EXPECT_EQ(extract_schmitz(corpus).edge_count(), 0u);
  EXPECT_EQ(named_edges(extract_schmitz(corpus, {0.8, 9})), (Links{{"a", "b"}}));
}

TEST(Schmitz, MultipleParentsKeepTheStrongestSubsumer) {
  // c is covered by a (90%) and b (85%); neither a nor b subsumes the other.
  const auto corpus = make_corpus({{{"a", "b", "c"}, 75}, {{"a", "c"}, 15}, {{"b", "c"}, 10}, {{"a"}, 300},
                                   {{"b"}, 300}});
  EXPECT_EQ(named_edges(extract_schmitz(corpus)), (Links{{"a", "c"}}));
}

TEST(SchmitzProperty, ForestWithoutTransitiveTriples) {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const auto corpus = random_corpus(1 + rng.below(60), 1 + rng.below(2000), rng);
    const auto h = extract_schmitz(corpus, {0.3 + 0.7 * rng.uniform(), rng.below(5)});
    EXPECT_TRUE(h.is_forest());
    for (const auto& e : h.edges()) {
      for (TagId z : h.children(e.parent)) {
        const auto grand = h.children(e.child);
        EXPECT_TRUE(std::find(grand.begin(), grand.end(), z) == grand.end());
      }
    }
  }
}
