#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hiertags/corpus.hpp"

namespace hiertags {

/// Population counts for the co-occurrence z-score of a tag pair.
struct ZScoreInputs {
  std::uint64_t objects;     ///< Q
  std::uint64_t first;       ///< Q_i
  std::uint64_t second;      ///< Q_j
  std::uint64_t together;    ///< Q_ij
};

/// Q_i Q_j / Q, the mean of the hypergeometric co-occurrence count.
double expected_cooccurrence(std::uint64_t objects, std::uint64_t first, std::uint64_t second);

/// Hypergeometric variance of the co-occurrence count. Throws for Q < 2.
double cooccurrence_variance(std::uint64_t objects, std::uint64_t first, std::uint64_t second);

/// (Q_ij - <Q_ij>) / sigma. Pairs with zero variance score 0.
double z_score(const ZScoreInputs& in);

/// Natural-log entropy of the normalized weight distribution; 0 for an empty
/// list. Throws if any weight is not strictly positive.
double in_link_entropy(std::span<const double> weights);

struct WeightedLink {
  TagId a;
  TagId b;
  double weight;
};

/// Undirected weighted graph in CSR form (both directions stored).
class WeightedGraph {
 public:
  WeightedGraph(std::size_t tag_count, std::span<const WeightedLink> links);

  std::size_t tag_count() const noexcept { return offsets_.size() - 1; }
  std::span<const TagId> neighbors(TagId t) const {
    return {neighbor_.data() + offsets_[t], neighbor_.data() + offsets_[t + 1]};
  }
  std::span<const double> weights(TagId t) const {
    return {weight_.data() + offsets_[t], weight_.data() + offsets_[t + 1]};
  }
  double strength(TagId t) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<TagId> neighbor_;
  std::vector<double> weight_;
};

enum class PowerIteration {
  /// Iterates c <- A c with sum normalization, starting from the strength
  /// vector. Oscillates on bipartite components (trees, stars).
  plain,
  /// Iterates on A + s I with s = 0.1 * (a lower bound on lambda_max). Same
  /// eigenvectors as A; the shift removes the -lambda_max mode that makes the
  /// plain iteration oscillate, and costs little convergence speed otherwise.
  shifted,
};

struct CentralityOptions {
  int iterations = 100;
  PowerIteration mode = PowerIteration::shifted;
  /// Stop early once the max absolute change drops below this; 0 disables.
  double tolerance = 0.0;
};

struct CentralityVector {
  std::vector<double> score;  ///< sums to 1
  int iterations = 0;         ///< rounds actually performed
};

/// Eigenvector centrality by power iteration. An all-zero graph yields 1/N
/// for every tag; isolated tags otherwise score 0.
CentralityVector eigenvector_centrality(const WeightedGraph& graph, const CentralityOptions& options = {});

}  // namespace hiertags
