#pragma once

#include <vector>

#include "hiertags/corpus.hpp"
#include "hiertags/hierarchy.hpp"
#include "hiertags/stats.hpp"

namespace hiertags {

struct AlgoBParams {
  /// Links with z at or below this are pruned unless one tag sits on at least
  /// half of the other's objects.
  double z_threshold = 10.0;
  /// Hang secondary roots under the most central root.
  bool force_single_root = false;
  CentralityOptions centrality{};
};

struct AlgoBResult {
  Hierarchy hierarchy;
  std::vector<double> centrality;
  /// Position in the strict centrality order (0 = least central). Ties in
  /// centrality go to the more frequent tag, then to the lower identifier.
  std::vector<std::size_t> rank;
  std::size_t kept_links = 0;
};

/// Keep test of the pruning phase for the pair (a, b).
bool keeps_link(const CooccurrenceNetwork& network, TagId a, TagId b, double z_threshold);

AlgoBResult extract_b_detailed(const CooccurrenceNetwork& network, const AlgoBParams& params = {});

/// Bottom-up sweep in ascending centrality; every tag takes as parent the more
/// central pruned neighbor with the largest z-score aggregated over the tag
/// and its already attached descendants. Returns a forest.
inline Hierarchy extract_b(const CooccurrenceNetwork& network, const AlgoBParams& params = {}) {
  return extract_b_detailed(network, params).hierarchy;
}

}  // namespace hiertags
