#include "hiertags/extract_a.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "hiertags/error.hpp"
#include "hiertags/stats.hpp"

namespace hiertags {

namespace {

// Per-link side tables aligned with the network's flat adjacency arrays.
struct ThresholdedLinks {
  std::vector<bool> kept;    // slot (i, k): link neighbors(i)[k] -> i survived at i
  std::vector<double> z;     // slot (i, k): z-score of the pair
  std::vector<double> kept_weight_total;
};

ThresholdedLinks threshold_links(const CooccurrenceNetwork& net, double omega) {
  const std::size_t n = net.tag_count();
  ThresholdedLinks out;
  out.kept.resize(net.link_count() * 2);
  out.z.resize(net.link_count() * 2);
  out.kept_weight_total.assign(n, 0.0);
  for (TagId i = 0; i < n; ++i) {
    const auto nb = net.neighbors(i);
    const auto w = net.weights(i);
    const std::size_t base = net.link_offset(i);
    const std::uint64_t strongest = w.empty() ? 0 : *std::max_element(w.begin(), w.end());
    for (std::size_t k = 0; k < nb.size(); ++k) {
      out.z[base + k] = z_score({net.object_count(), net.frequency(i), net.frequency(nb[k]), w[k]});
      if (static_cast<double>(w[k]) >= omega * static_cast<double>(strongest)) {
        out.kept[base + k] = true;
        out.kept_weight_total[i] += static_cast<double>(w[k]);
      }
    }
  }
  return out;
}

// Whether the link from `from` into `to` survived the threshold on `to`.
bool kept_into(const CooccurrenceNetwork& net, const ThresholdedLinks& links, TagId from, TagId to) {
  const auto nb = net.neighbors(to);
  auto it = std::lower_bound(nb.begin(), nb.end(), from);
  if (it == nb.end() || *it != from) return false;
  return links.kept[net.link_offset(to) + static_cast<std::size_t>(it - nb.begin())];
}

LocalForest select_parents(const CooccurrenceNetwork& net, const ThresholdedLinks& links) {
  const std::size_t n = net.tag_count();
  LocalForest forest;
  forest.parent.assign(n, std::nullopt);
  forest.entropy.assign(n, 0.0);
  std::vector<std::pair<double, TagId>> candidates;
  std::vector<double> incoming;
  for (TagId i = 0; i < n; ++i) {
    const auto nb = net.neighbors(i);
    const auto w = net.weights(i);
    const std::size_t base = net.link_offset(i);
    candidates.clear();
    incoming.clear();
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (!links.kept[base + k]) continue;
      candidates.emplace_back(links.z[base + k], nb[k]);
      incoming.push_back(static_cast<double>(w[k]));
    }
    forest.entropy[i] = in_link_entropy(incoming);
    // Descending z; equal z falls back to ascending identifier.
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (const auto& [z, j] : candidates) {
      if (!kept_into(net, links, i, j)) {
        forest.parent[i] = j;
        break;
      }
    }
    if (!forest.parent[i]) forest.local_roots.push_back(i);
  }
  return forest;
}

}  // namespace

LocalForest local_hierarchies(const CooccurrenceNetwork& network, const AlgoAParams& params) {
  if (!(params.omega >= 0.0 && params.omega <= 1.0)) throw Error("omega must be in [0, 1]");
  return select_parents(network, threshold_links(network, params.omega));
}

Hierarchy extract_a(const CooccurrenceNetwork& net, const AlgoAParams& params) {
  if (!(params.omega >= 0.0 && params.omega <= 1.0)) throw Error("omega must be in [0, 1]");
  const std::size_t n = net.tag_count();
  if (n == 0) throw Error("empty network");
  const ThresholdedLinks links = threshold_links(net, params.omega);
  LocalForest forest = select_parents(net, links);

  // component[t] = local root of the tree containing t
  constexpr TagId kUnset = ~TagId{0};
  std::vector<TagId> component(n, kUnset);
  std::vector<TagId> path;
  for (TagId t = 0; t < n; ++t) {
    TagId x = t;
    path.clear();
    while (component[x] == kUnset && forest.parent[x]) {
      path.push_back(x);
      x = *forest.parent[x];
    }
    const TagId root = component[x] == kUnset ? x : component[x];
    component[x] = root;
    for (TagId p : path) component[p] = root;
  }

  // Entropy first, then surviving incoming weight, frequency and identifier.
  auto more_central = [&](TagId a, TagId b) {
    return std::make_tuple(forest.entropy[a], links.kept_weight_total[a], net.frequency(a), b) >
           std::make_tuple(forest.entropy[b], links.kept_weight_total[b], net.frequency(b), a);
  };
  const auto& roots = forest.local_roots;
  const TagId global_root = *std::min_element(roots.begin(), roots.end(), more_central);

  std::vector<std::optional<TagId>> suggested(n);
  std::vector<std::pair<std::uint64_t, TagId>> partners;
  auto sorted_partners = [&](TagId r) {
    partners.clear();
    const auto nb = net.neighbors(r);
    const auto w = net.weights(r);
    for (std::size_t k = 0; k < nb.size(); ++k) partners.emplace_back(w[k], nb[k]);
    std::sort(partners.begin(), partners.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
  };
  for (TagId r : roots) {
    if (r == global_root) continue;
    sorted_partners(r);
    for (const auto& [w, t] : partners) {
      if (component[t] != r) {
        suggested[r] = t;
        break;
      }
    }
    if (!suggested[r]) suggested[r] = global_root;
  }

  // Follow root -> component(suggested parent) chains; clear every cycle.
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on current path, 2 done
  std::vector<TagId> looped;
  for (TagId r : roots) {
    path.clear();
    TagId x = r;
    while (state[x] == 0) {
      state[x] = 1;
      path.push_back(x);
      if (!suggested[x]) break;
      x = component[*suggested[x]];
    }
    if (state[x] == 1 && suggested[x]) {
      // x is on the current path and the walk returned to it: a cycle.
      auto it = std::find(path.begin(), path.end(), x);
      looped.insert(looped.end(), it, path.end());
    }
    for (TagId p : path) state[p] = 2;
  }
  for (TagId r : looped) suggested[r].reset();

  auto effective_parent = [&](TagId t) -> std::optional<TagId> {
    if (forest.parent[t]) return forest.parent[t];
    return suggested[t];
  };
  auto is_below = [&](TagId tag, TagId root) {
    for (std::optional<TagId> x = tag; x; x = effective_parent(*x)) {
      if (*x == root) return true;
    }
    return false;
  };
  std::sort(looped.begin(), looped.end(), more_central);
  for (TagId r : looped) {
    sorted_partners(r);
    for (const auto& [w, t] : partners) {
      if (!is_below(t, r)) {
        suggested[r] = t;
        break;
      }
    }
    if (!suggested[r]) suggested[r] = global_root;
  }

  std::vector<Edge> edges;
  edges.reserve(n ? n - 1 : 0);
  for (TagId t = 0; t < n; ++t) {
    if (auto p = effective_parent(t)) edges.push_back({*p, t});
  }
  return Hierarchy(net.symbols().names(), std::move(edges));
}

}  // namespace hiertags
