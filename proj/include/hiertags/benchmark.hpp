#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hiertags/corpus.hpp"
#include "hiertags/hierarchy.hpp"

namespace hiertags {

struct TagsPerObject {
  enum class Kind { poisson, fixed };
  Kind kind = Kind::poisson;
  /// Poisson mean (before truncation to >= 1) or the fixed count.
  double value = 3.0;

  /// "poisson:<mean>" or "fixed:<k>".
  static TagsPerObject parse(std::string_view text);
  std::string str() const;
};

struct WalkLength {
  int min = 1;
  int max = 3;

  /// "uniform:<a>:<b>" or "fixed:<k>".
  static WalkLength parse(std::string_view text);
  std::string str() const;
};

struct FrequencyProfile {
  enum class Kind { linear_depth, power_law, zipf, table };
  Kind kind = Kind::linear_depth;
  /// power-law: exponent g of the tag frequency distribution P(w) ~ w^-g.
  /// zipf: exponent of the rank-ordered weights, w ~ rank^-exponent.
  double exponent = 2.0;
  std::map<std::string, double, std::less<>> table;

  /// "linear-depth", "power-law[:<g>]" (g > 1) or "zipf:<a>". Tables come
  /// from load_table().
  static FrequencyProfile parse(std::string_view text);
  /// "tag TAB weight" lines.
  static FrequencyProfile load_table(const std::string& path);
  std::string str() const;
};

struct BenchmarkConfig {
  std::size_t object_count = 200'000;
  TagsPerObject tags_per_object{};
  double p_rw = 0.5;
  WalkLength walk{};
  FrequencyProfile profile{};
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// Unnormalized sampling weight of every tag. linear-depth: d_max - depth + 1;
/// power-law: rank^(-1 / (g - 1)), zipf: rank^-a, ranks shuffled by a
/// generator derived from `seed`; table: looked up by name (a missing tag
/// throws).
std::vector<double> frequency_profile(const Hierarchy& h, const FrequencyProfile& profile, std::uint64_t seed);

/// Random-walk corpus: each object gets a profile-drawn first tag, then
/// further tags that are either endpoints of undirected walks from the first
/// tag (probability p_rw) or fresh profile draws. Objects come in fixed-size
/// chunks, each with its own generator, so the corpus does not depend on the
/// thread count.
TagCorpus generate(const Hierarchy& h, const BenchmarkConfig& config);

}  // namespace hiertags
