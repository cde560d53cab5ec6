#include <gtest/gtest.h>

#include <sstream>

#include "hiertags/corpus.hpp"
#include "hiertags/error.hpp"
#include "test_support.hpp"

using namespace hiertags;
using namespace hiertags::testing;

namespace {

TagCorpus parse(const std::string& text, CorpusFormat format = {}) {
  std::istringstream in(text);
  return read_corpus(in, format);
}

TagId id(const TagCorpus& c, const std::string& name) { return *c.symbols().find(name); }

}  // namespace

TEST(ReadCorpus, CountsFrequencies) {
  const auto c = parse("a\tb\na\tc\n");
  EXPECT_EQ(c.object_count(), 2u);
  EXPECT_EQ(c.tag_count(), 3u);
  EXPECT_EQ(c.frequency(id(c, "a")), 2u);
  EXPECT_EQ(c.frequency(id(c, "b")), 1u);
  EXPECT_EQ(c.frequency(id(c, "c")), 1u);
}

TEST(ReadCorpus, CollapsesDuplicateTags) {
  const auto c = parse("a\ta\tb\n");
  ASSERT_EQ(c.object_count(), 1u);
  EXPECT_EQ(c.object(0).size(), 2u);
  EXPECT_EQ(c.frequency(id(c, "a")), 1u);
}

TEST(ReadCorpus, EmptyInputHasZeroObjects) {
  try {
    parse("");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("zero objects"), std::string::npos);
  }
  EXPECT_THROW(parse("# only a comment\n\n"), Error);
}

TEST(ReadCorpus, SkipsCommentsBlankLinesAndCarriageReturns) {
  const auto c = parse("# header\n\na\tb\r\n\n#x\ty\nb\n");
  EXPECT_EQ(c.object_count(), 2u);
  EXPECT_FALSE(c.symbols().find("x"));
  EXPECT_EQ(c.frequency(id(c, "b")), 2u);
  EXPECT_FALSE(c.symbols().find("b\r"));
}

TEST(ReadCorpus, ReportsLineOfMalformedInput) {
  try {
    parse("a\tb\n\na\t\tb\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ReadCorpus, WithIdsSkipsFirstField) {
  const auto c = parse("obj1\ta\tb\nobj2\tb\n", CorpusFormat{true});
  EXPECT_EQ(c.object_count(), 2u);
  EXPECT_EQ(c.tag_count(), 2u);
  EXPECT_FALSE(c.symbols().find("obj1"));
  EXPECT_THROW(parse("obj1\n", CorpusFormat{true}), ParseError);
}

TEST(ReadCorpus, TagsAreCaseSensitive) {
  const auto c = parse("Tag\ttag\n");
  EXPECT_EQ(c.tag_count(), 2u);
}

TEST(ReadCorpus, MissingFileThrows) { EXPECT_THROW(load_corpus("/nonexistent/objects.tsv"), Error); }

TEST(WriteCorpus, RoundTripIsIdentical) {
  Rng rng(3);
  const auto c = random_corpus(40, 300, rng);
  std::ostringstream first;
  write_corpus(first, c);
  const auto back = parse(first.str());
  std::ostringstream second;
  write_corpus(second, back);
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(back.symbols().names(), c.symbols().names());
}

TEST(TagCorpus, KeepsOnlyUsedTagsInFirstAppearanceOrder) {
  const std::vector<std::string> names{"x", "y", "z"};
  const TagCorpus c(names, {{2, 0}, {2}});
  EXPECT_EQ(c.symbols().names(), (std::vector<std::string>{"x", "z"}));
  EXPECT_EQ(c.frequency(*c.symbols().find("z")), 2u);
}

TEST(TagCorpus, RejectsEmptyObjects) {
  const std::vector<std::string> names{"x"};
  EXPECT_THROW(TagCorpus(names, {{0}, {}}), Error);
  EXPECT_THROW(TagCorpus(names, {}), Error);
}

TEST(SymbolTable, InternsDensely) {
  SymbolTable s;
  EXPECT_EQ(s.intern("a"), 0u);
  EXPECT_EQ(s.intern("b"), 1u);
  EXPECT_EQ(s.intern("a"), 0u);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.name(1), "b");
  EXPECT_THROW(SymbolTable({"a", "a"}), Error);
}

TEST(BuildCooccurrence, CountsPairsPerObject) {
  const auto c = make_corpus({{{"a", "b"}, 2}, {{"a", "c"}, 1}});
  const auto net = build_cooccurrence(c);
  const TagId a = id(c, "a"), b = id(c, "b"), cc = id(c, "c");
  EXPECT_EQ(net.weight(a, b), 2u);
  EXPECT_EQ(net.weight(b, a), 2u);
  EXPECT_EQ(net.weight(a, cc), 1u);
  EXPECT_EQ(net.weight(b, cc), 0u);
  EXPECT_EQ(net.link_count(), 2u);
  EXPECT_EQ(net.neighbors(b).size(), 1u);
}

TEST(BuildCooccurrence, SingleObjectSingleTag) {
  const auto net = make_network({{{"a"}, 1}});
  EXPECT_EQ(net.tag_count(), 1u);
  EXPECT_EQ(net.link_count(), 0u);
  EXPECT_EQ(net.object_count(), 1u);
}

TEST(BuildCooccurrence, ThousandIdenticalObjects) {
  const auto net = make_network({{{"a", "b"}, 1000}});
  EXPECT_EQ(net.weight(0, 1), 1000u);
  EXPECT_EQ(net.frequency(0), 1000u);
}

TEST(BuildCooccurrence, SingleTagObjectsCountTowardMarginals) {
  const auto net = make_network({{{"a", "b"}, 3}, {{"a"}, 4}});
  EXPECT_EQ(net.object_count(), 7u);
  EXPECT_EQ(net.frequency(0), 7u);
  EXPECT_EQ(net.weight(0, 1), 3u);
}

TEST(BuildCooccurrenceProperty, PairSumAndBounds) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_corpus(1 + rng.below(60), 1 + rng.below(400), rng);
    const auto net = build_cooccurrence(c);
    std::uint64_t expected = 0;
    for (std::size_t q = 0; q < c.object_count(); ++q) {
      const auto k = c.object(q).size();
      expected += k * (k - 1) / 2;
    }
    std::uint64_t total = 0;
    for (TagId i = 0; i < net.tag_count(); ++i) {
      const auto nb = net.neighbors(i);
      const auto w = net.weights(i);
      EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
      for (std::size_t k = 0; k < nb.size(); ++k) {
        EXPECT_GT(w[k], 0u);
        EXPECT_LE(w[k], std::min(net.frequency(i), net.frequency(nb[k])));
        EXPECT_EQ(net.weight(nb[k], i), w[k]);
        if (i < nb[k]) total += w[k];
      }
    }
    EXPECT_EQ(total, expected);
  }
}

TEST(BuildCooccurrenceProperty, OrderIndependent) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_corpus(30, 200, rng);
    std::vector<std::vector<TagId>> objects;
    for (std::size_t q = 0; q < c.object_count(); ++q) objects.emplace_back(c.object(q).begin(), c.object(q).end());
    // Identifiers follow first appearance, so compare by name.
    std::reverse(objects.begin(), objects.end());
    const TagCorpus reversed(c.symbols().names(), objects);
    const auto a = build_cooccurrence(c);
    const auto b = build_cooccurrence(reversed);
    ASSERT_EQ(a.tag_count(), b.tag_count());
    for (TagId i = 0; i < a.tag_count(); ++i) {
      const TagId bi = *b.symbols().find(a.symbols().name(i));
      EXPECT_EQ(a.frequency(i), b.frequency(bi));
      for (TagId j : a.neighbors(i)) {
        EXPECT_EQ(a.weight(i, j), b.weight(bi, *b.symbols().find(a.symbols().name(j))));
      }
      EXPECT_EQ(a.neighbors(i).size(), b.neighbors(bi).size());
    }
  }
}

TEST(BuildCooccurrenceProperty, ShardedMergeEqualsSinglePass) {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_corpus(25, 500, rng);
    const auto whole = PairCounts::count(c, 0, c.object_count());
    const std::size_t cut1 = rng.below(c.object_count() + 1);
    const std::size_t cut2 = cut1 + rng.below(c.object_count() - cut1 + 1);
    const auto a = PairCounts::count(c, 0, cut1);
    const auto b = PairCounts::count(c, cut1, cut2);
    const auto d = PairCounts::count(c, cut2, c.object_count());
    EXPECT_EQ(PairCounts::merge(PairCounts::merge(a, b), d), whole);
    EXPECT_EQ(PairCounts::merge(d, PairCounts::merge(b, a)), whole);
  }
}

TEST(BuildCooccurrenceProperty, ThreadCountDoesNotMatter) {
  Rng rng(14);
  const auto c = random_corpus(200, 100000, rng);
  const auto one = build_cooccurrence(c, 1);
  const auto four = build_cooccurrence(c, 4);
  ASSERT_EQ(one.link_count(), four.link_count());
  for (TagId i = 0; i < one.tag_count(); ++i) {
    EXPECT_TRUE(std::ranges::equal(one.neighbors(i), four.neighbors(i)));
    EXPECT_TRUE(std::ranges::equal(one.weights(i), four.weights(i)));
  }
}
