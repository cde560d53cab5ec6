#pragma once

#include <cstdint>

#include "hiertags/corpus.hpp"
#include "hiertags/hierarchy.hpp"

namespace hiertags {

enum class HeymannCentrality {
  /// Number of similarity-graph links.
  degree,
  /// Sum of similarity-graph link weights.
  strength,
  /// Unweighted closeness, Wasserman-Faust form on disconnected graphs.
  closeness,
};

struct HeymannParams {
  double similarity_threshold = 0.1;
  HeymannCentrality centrality = HeymannCentrality::degree;
};

/// Cosine similarity of the object-incidence vectors: Q_ij / sqrt(Q_i Q_j).
double cosine_similarity(const CooccurrenceNetwork& network, TagId a, TagId b);

/// Greedy insertion in descending similarity-graph centrality (ties: higher
/// frequency, then lower identifier). Each tag hangs under the most similar
/// tag inserted before it, or under a synthetic root when no inserted tag
/// reaches the threshold. The synthetic root is the last tag of the result.
Hierarchy extract_heymann(const CooccurrenceNetwork& network, const HeymannParams& params = {});

struct SchmitzParams {
  double t_subsume = 0.8;
  std::uint64_t min_cooccurrence = 10;
};

/// Subsumption forest: x -> y when P(x|y) >= t, P(y|x) < t and Q_xy is large
/// enough; transitive links dropped; a tag with several parents keeps the one
/// with the largest P(parent|tag) (ties: more frequent parent, lower id).
Hierarchy extract_schmitz(const CooccurrenceNetwork& network, const SchmitzParams& params = {});
Hierarchy extract_schmitz(const TagCorpus& corpus, const SchmitzParams& params = {});

}  // namespace hiertags
