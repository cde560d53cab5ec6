#include "hiertags/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hiertags/error.hpp"

namespace hiertags {

double expected_cooccurrence(std::uint64_t objects, std::uint64_t first, std::uint64_t second) {
  return static_cast<double>(first) * static_cast<double>(second) / static_cast<double>(objects);
}

double cooccurrence_variance(std::uint64_t objects, std::uint64_t first, std::uint64_t second) {
  if (objects < 2) throw Error("degenerate population");
  const double q = static_cast<double>(objects);
  const double qi = static_cast<double>(first);
  const double qj = static_cast<double>(second);
  return (qi * qj / q) * ((q - qi) / q) * ((q - qj) / (q - 1.0));
}

double z_score(const ZScoreInputs& in) {
  if (in.objects < 2) return 0.0;
  // Fixed argument order so that z(i, j) and z(j, i) round identically.
  const auto [lo, hi] = std::minmax(in.first, in.second);
  const double var = cooccurrence_variance(in.objects, lo, hi);
  if (!(var > 0.0)) return 0.0;
  return (static_cast<double>(in.together) - expected_cooccurrence(in.objects, lo, hi)) / std::sqrt(var);
}

double in_link_entropy(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw Error("link weights must be positive");
    total += w;
  }
  double h = 0.0;
  for (double w : weights) {
    const double p = w / total;
    h -= p * std::log(p);
  }
  return h;
}

WeightedGraph::WeightedGraph(std::size_t tag_count, std::span<const WeightedLink> links) {
  offsets_.assign(tag_count + 1, 0);
  for (const auto& l : links) {
    if (l.a >= tag_count || l.b >= tag_count || l.a == l.b) throw Error("invalid weighted link");
    ++offsets_[l.a + 1];
    ++offsets_[l.b + 1];
  }
  for (std::size_t i = 0; i < tag_count; ++i) offsets_[i + 1] += offsets_[i];
  neighbor_.resize(offsets_.back());
  weight_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& l : links) {
    neighbor_[fill[l.a]] = l.b;
    weight_[fill[l.a]++] = l.weight;
    neighbor_[fill[l.b]] = l.a;
    weight_[fill[l.b]++] = l.weight;
  }
}

double WeightedGraph::strength(TagId t) const {
  const auto w = weights(t);
  return std::accumulate(w.begin(), w.end(), 0.0);
}

CentralityVector eigenvector_centrality(const WeightedGraph& graph, const CentralityOptions& options) {
  const std::size_t n = graph.tag_count();
  if (n == 0) throw Error("centrality of an empty graph");
  CentralityVector out;
  out.score.resize(n);
  double total = 0.0;
  std::size_t connected = 0;
  for (TagId t = 0; t < n; ++t) {
    out.score[t] = graph.strength(t);
    total += out.score[t];
    if (out.score[t] > 0.0) ++connected;
  }
  if (!(total > 0.0)) {
    std::fill(out.score.begin(), out.score.end(), 1.0 / static_cast<double>(n));
    return out;
  }
  // lambda_max >= mean strength and >= every row's 2-norm. A tenth of that
  // bound keeps the shift small next to lambda_max.
  double shift = 0.0;
  if (options.mode == PowerIteration::shifted) {
    double bound = total / static_cast<double>(connected);
    for (TagId t = 0; t < n; ++t) {
      double sq = 0.0;
      for (double w : graph.weights(t)) sq += w * w;
      bound = std::max(bound, std::sqrt(sq));
    }
    shift = 0.1 * bound;
  }
  // Starting vector is the raw strength; scale it once so that the shift term
  // and A c are on the same footing.
  for (double& c : out.score) c /= total;

  std::vector<double> next(n);
  for (int round = 0; round < options.iterations; ++round) {
    double sum = 0.0;
    for (TagId t = 0; t < n; ++t) {
      const auto nb = graph.neighbors(t);
      const auto w = graph.weights(t);
      double acc = shift * out.score[t];
      for (std::size_t k = 0; k < nb.size(); ++k) acc += w[k] * out.score[nb[k]];
      next[t] = acc;
      sum += acc;
    }
    double change = 0.0;
    for (TagId t = 0; t < n; ++t) {
      const double v = next[t] / sum;
      change = std::max(change, std::abs(v - out.score[t]));
      out.score[t] = v;
    }
    out.iterations = round + 1;
    if (options.tolerance > 0.0 && change < options.tolerance) break;
  }
  return out;
}

}  // namespace hiertags
