#include "hiertags/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "hiertags/error.hpp"

namespace hiertags {

double cosine_similarity(const CooccurrenceNetwork& net, TagId a, TagId b) {
  const std::uint64_t q = net.weight(a, b);
  if (q == 0) return 0.0;
  return static_cast<double>(q) / std::sqrt(static_cast<double>(net.frequency(a)) * static_cast<double>(net.frequency(b)));
}

namespace {

std::vector<double> closeness(const std::vector<std::vector<TagId>>& adj) {
  const std::size_t n = adj.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  std::vector<std::size_t> dist(n);
  std::vector<TagId> queue;
  queue.reserve(n);
  for (TagId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), SIZE_MAX);
    dist[s] = 0;
    queue.assign(1, s);
    std::size_t total = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const TagId u = queue[head];
      total += dist[u];
      for (TagId v : adj[u]) {
        if (dist[v] == SIZE_MAX) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    const double reached = static_cast<double>(queue.size() - 1);
    if (total > 0) out[s] = reached / static_cast<double>(total) * reached / static_cast<double>(n - 1);
  }
  return out;
}

std::string fresh_name(const SymbolTable& symbols) {
  std::string name = "<root>";
  while (symbols.find(name)) name = "<" + name + ">";
  return name;
}

}  // namespace

Hierarchy extract_heymann(const CooccurrenceNetwork& net, const HeymannParams& params) {
  if (!(params.similarity_threshold >= 0.0 && params.similarity_threshold <= 1.0)) {
    throw Error("similarity threshold must lie in [0, 1]");
  }
  const std::size_t n = net.tag_count();
  if (n == 0) throw Error("empty network");

  std::vector<std::vector<TagId>> adj(n);
  std::vector<double> score(n, 0.0);
  for (TagId i = 0; i < n; ++i) {
    for (TagId j : net.neighbors(i)) {
      const double s = cosine_similarity(net, i, j);
      if (s < params.similarity_threshold) continue;
      adj[i].push_back(j);
      score[i] += params.centrality == HeymannCentrality::degree ? 1.0 : s;
    }
  }
  if (params.centrality == HeymannCentrality::closeness) score = closeness(adj);

  std::vector<TagId> order(n);
  std::iota(order.begin(), order.end(), TagId{0});
  std::sort(order.begin(), order.end(), [&](TagId a, TagId b) {
    return std::tuple(score[a], net.frequency(a), b) > std::tuple(score[b], net.frequency(b), a);
  });

  const auto root = static_cast<TagId>(n);
  std::vector<bool> inserted(n, false);
  std::vector<Edge> edges;
  edges.reserve(n);
  for (TagId t : order) {
    TagId parent = root;
    double best = -1.0;
    for (TagId j : adj[t]) {
      if (!inserted[j]) continue;
      const double s = cosine_similarity(net, t, j);
      if (s > best || (s == best && j < parent)) {
        best = s;
        parent = j;
      }
    }
    edges.push_back({parent, t});
    inserted[t] = true;
  }

  std::vector<std::string> names = net.symbols().names();
  names.push_back(fresh_name(net.symbols()));
  return Hierarchy(std::move(names), std::move(edges), root);
}

Hierarchy extract_schmitz(const CooccurrenceNetwork& net, const SchmitzParams& params) {
  if (!(params.t_subsume > 0.0 && params.t_subsume <= 1.0)) throw Error("subsumption threshold must lie in (0, 1]");
  const std::size_t n = net.tag_count();
  if (n == 0) throw Error("empty network");

  // Candidate subsumptions; parents are strictly more frequent than children.
  std::vector<std::vector<TagId>> children(n);
  for (TagId x = 0; x < n; ++x) {
    const auto nb = net.neighbors(x);
    const auto w = net.weights(x);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const TagId y = nb[k];
      if (w[k] < params.min_cooccurrence) continue;
      const double q = static_cast<double>(w[k]);
      if (q / static_cast<double>(net.frequency(y)) >= params.t_subsume &&
          q / static_cast<double>(net.frequency(x)) < params.t_subsume) {
        children[x].push_back(y);
      }
    }
  }

  // Transitive reduction: x -> y is redundant when y is reachable from
  // another child of x.
  std::vector<std::size_t> mark(n, 0);
  std::vector<TagId> stack;
  std::vector<std::vector<TagId>> parents(n);
  for (TagId x = 0; x < n; ++x) {
    if (children[x].empty()) continue;
    const std::size_t stamp = x + 1;
    stack.clear();
    for (TagId c : children[x]) stack.insert(stack.end(), children[c].begin(), children[c].end());
    while (!stack.empty()) {
      const TagId u = stack.back();
      stack.pop_back();
      if (mark[u] == stamp) continue;
      mark[u] = stamp;
      stack.insert(stack.end(), children[u].begin(), children[u].end());
    }
    for (TagId c : children[x]) {
      if (mark[c] != stamp) parents[c].push_back(x);
    }
  }

  std::vector<Edge> edges;
  for (TagId y = 0; y < n; ++y) {
    if (parents[y].empty()) continue;
    const TagId best = *std::max_element(parents[y].begin(), parents[y].end(), [&](TagId a, TagId b) {
      return std::tuple(net.weight(a, y), net.frequency(a), b) < std::tuple(net.weight(b, y), net.frequency(b), a);
    });
    edges.push_back({best, y});
  }
  return Hierarchy(net.symbols().names(), std::move(edges));
}

Hierarchy extract_schmitz(const TagCorpus& corpus, const SchmitzParams& params) {
  return extract_schmitz(build_cooccurrence(corpus), params);
}

}  // namespace hiertags
