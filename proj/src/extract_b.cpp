#include "hiertags/extract_b.hpp"

#include <algorithm>
#include <numeric>

#include "hiertags/error.hpp"

namespace hiertags {

namespace {

bool majority(std::uint64_t together, std::uint64_t count) { return 2 * together >= count; }

}  // namespace

bool keeps_link(const CooccurrenceNetwork& net, TagId a, TagId b, double z_threshold) {
  const std::uint64_t q = net.weight(a, b);
  if (q == 0) return false;
  const double z = z_score({net.object_count(), net.frequency(a), net.frequency(b), q});
  return z > z_threshold || majority(q, net.frequency(a)) || majority(q, net.frequency(b));
}

AlgoBResult extract_b_detailed(const CooccurrenceNetwork& net, const AlgoBParams& params) {
  if (!(params.z_threshold >= 0.0)) throw Error("z threshold must be non-negative");
  const std::size_t n = net.tag_count();
  if (n == 0) throw Error("empty network");
  const double zt = params.z_threshold;

  // Per-slot z-scores and keep flags, aligned with the network adjacency.
  std::vector<double> z(net.link_count() * 2);
  std::vector<bool> kept(net.link_count() * 2);
  std::vector<WeightedLink> pruned;
  for (TagId i = 0; i < n; ++i) {
    const auto nb = net.neighbors(i);
    const auto w = net.weights(i);
    const std::size_t base = net.link_offset(i);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const TagId j = nb[k];
      z[base + k] = z_score({net.object_count(), net.frequency(i), net.frequency(j), w[k]});
      kept[base + k] = z[base + k] > zt || majority(w[k], net.frequency(i)) || majority(w[k], net.frequency(j));
      if (kept[base + k] && i < j) pruned.push_back({i, j, static_cast<double>(w[k])});
    }
  }
  const WeightedGraph graph(n, pruned);
  CentralityVector centrality = eigenvector_centrality(graph, params.centrality);

  std::vector<TagId> order(n);
  std::iota(order.begin(), order.end(), TagId{0});
  std::sort(order.begin(), order.end(), [&](TagId a, TagId b) {
    if (centrality.score[a] != centrality.score[b]) return centrality.score[a] < centrality.score[b];
    if (net.frequency(a) != net.frequency(b)) return net.frequency(a) < net.frequency(b);
    return a > b;
  });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;

  std::vector<std::vector<TagId>> children(n);
  std::vector<Edge> edges;
  std::vector<double> score(n, 0.0);
  std::vector<std::size_t> stamp(n, 0);  // candidate marker, stamp = rank + 1
  std::vector<bool> own_side_ok(n, false);
  std::vector<TagId> candidates, stack;
  for (std::size_t r = 0; r < n; ++r) {
    const TagId i = order[r];
    const auto nb = net.neighbors(i);
    const auto w = net.weights(i);
    const std::size_t base = net.link_offset(i);
    candidates.clear();
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const TagId t = nb[k];
      if (!kept[base + k] || rank[t] <= r) continue;
      candidates.push_back(t);
      stamp[t] = r + 1;
      score[t] = z[base + k];
      own_side_ok[t] = z[base + k] > zt || majority(w[k], net.frequency(i));
    }
    if (candidates.empty()) continue;

    // Aggregate over the finished subtree of i.
    stack.assign(children[i].begin(), children[i].end());
    while (!stack.empty()) {
      const TagId d = stack.back();
      stack.pop_back();
      stack.insert(stack.end(), children[d].begin(), children[d].end());
      const auto dn = net.neighbors(d);
      const auto dw = net.weights(d);
      const std::size_t dbase = net.link_offset(d);
      for (std::size_t k = 0; k < dn.size(); ++k) {
        const TagId t = dn[k];
        if (stamp[t] != r + 1 || !own_side_ok[t]) continue;
        if (z[dbase + k] > zt || majority(dw[k], net.frequency(d))) score[t] += z[dbase + k];
      }
    }

    TagId best = candidates.front();
    for (TagId t : candidates) {
      if (score[t] != score[best]) {
        if (score[t] > score[best]) best = t;
        continue;
      }
      const std::uint64_t wt = net.weight(i, t), wb = net.weight(i, best);
      if (wt > wb || (wt == wb && t < best)) best = t;
    }
    children[best].push_back(i);
    edges.push_back({best, i});
  }

  AlgoBResult result{Hierarchy(net.symbols().names(), std::move(edges)), std::move(centrality.score), std::move(rank),
                     pruned.size()};
  if (params.force_single_root) {
    auto roots = result.hierarchy.roots();
    if (roots.size() > 1) {
      const TagId top = *std::max_element(roots.begin(), roots.end(),
                                          [&](TagId a, TagId b) { return result.rank[a] < result.rank[b]; });
      std::vector<Edge> joined(result.hierarchy.edges().begin(), result.hierarchy.edges().end());
      for (TagId r : roots) {
        if (r != top) joined.push_back({top, r});
      }
      result.hierarchy = Hierarchy(net.symbols().names(), std::move(joined));
    }
  }
  return result;
}

}  // namespace hiertags
