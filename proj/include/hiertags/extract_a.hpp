#pragma once

#include <optional>
#include <vector>

#include "hiertags/corpus.hpp"
#include "hiertags/hierarchy.hpp"

namespace hiertags {

struct AlgoAParams {
  /// Incoming links weaker than omega * (strongest incoming weight) are dropped.
  double omega = 0.4;
};

/// Output of the per-tag parent selection, before the local trees are joined.
struct LocalForest {
  std::vector<std::optional<TagId>> parent;
  std::vector<TagId> local_roots;
  /// Entropy of the surviving incoming weights, per tag.
  std::vector<double> entropy;
};

/// Thresholds incoming links per tag and picks each tag's parent as the
/// highest-z surviving in-neighbor that does not in turn accept the tag as a
/// parent candidate (the sibling rule).
LocalForest local_hierarchies(const CooccurrenceNetwork& network, const AlgoAParams& params = {});

/// Local hierarchies joined under the maximum-entropy local root. Always a
/// single-rooted tree over every tag of the network.
Hierarchy extract_a(const CooccurrenceNetwork& network, const AlgoAParams& params = {});

}  // namespace hiertags
