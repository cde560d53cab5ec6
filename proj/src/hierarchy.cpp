#include "hiertags/hierarchy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "hiertags/error.hpp"

namespace hiertags {

namespace {

void build_csr(std::size_t n, const std::vector<Edge>& edges, bool by_parent, std::vector<std::size_t>& offsets,
               std::vector<TagId>& items) {
  offsets.assign(n + 1, 0);
  for (const auto& e : edges) ++offsets[(by_parent ? e.parent : e.child) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  items.resize(edges.size());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  std::vector<Edge> sorted = edges;
  if (by_parent) std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.parent, a.child) < std::tie(b.parent, b.child);
    });
  for (const auto& e : sorted) {
    if (by_parent) items[fill[e.parent]++] = e.child;
    else items[fill[e.child]++] = e.parent;
  }
}

}  // namespace

Hierarchy::Hierarchy(std::vector<std::string> names, std::vector<Edge> edges, std::optional<TagId> synthetic_root)
    : symbols_(std::move(names)), edges_(std::move(edges)), synthetic_root_(synthetic_root) {
  const std::size_t n = symbols_.size();
  if (synthetic_root_ && *synthetic_root_ >= n) throw Error("synthetic root out of range");
  for (const auto& e : edges_) {
    if (e.parent >= n || e.child >= n) throw Error("edge refers to unknown tag");
    if (e.parent == e.child) throw Error("cycle: self-loop on '" + symbols_.name(e.parent) + "'");
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.child, a.parent) < std::tie(b.child, b.parent);
  });
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  build_csr(n, edges_, true, child_offsets_, child_);
  build_csr(n, edges_, false, parent_offsets_, parent_);
  if (topological_order().size() != n) throw Error("cycle detected in hierarchy");
}

std::vector<TagId> Hierarchy::roots() const {
  std::vector<TagId> out;
  for (TagId t = 0; t < tag_count(); ++t) {
    if (parents(t).empty()) out.push_back(t);
  }
  return out;
}

bool Hierarchy::is_forest() const {
  for (TagId t = 0; t < tag_count(); ++t) {
    if (parents(t).size() > 1) return false;
  }
  return true;
}

bool Hierarchy::is_tree() const { return is_forest() && roots().size() == 1; }

Hierarchy Hierarchy::without_synthetic_root() const {
  if (!synthetic_root_) return *this;
  const TagId drop = *synthetic_root_;
  std::vector<std::string> names;
  std::vector<TagId> remap(tag_count());
  for (TagId t = 0; t < tag_count(); ++t) {
    if (t == drop) continue;
    remap[t] = static_cast<TagId>(names.size());
    names.push_back(name(t));
  }
  std::vector<Edge> edges;
  for (const auto& e : edges_) {
    if (e.parent != drop && e.child != drop) edges.push_back({remap[e.parent], remap[e.child]});
  }
  return Hierarchy(std::move(names), std::move(edges));
}

std::vector<TagId> Hierarchy::topological_order() const {
  const std::size_t n = tag_count();
  std::vector<std::size_t> indegree(n);
  std::vector<TagId> order;
  order.reserve(n);
  for (TagId t = 0; t < n; ++t) {
    indegree[t] = parents(t).size();
    if (indegree[t] == 0) order.push_back(t);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (TagId c : children(order[head])) {
      if (--indegree[c] == 0) order.push_back(c);
    }
  }
  return order;
}

std::vector<std::size_t> Hierarchy::depths() const {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> depth(tag_count(), kUnset);
  std::deque<TagId> queue;
  for (TagId r : roots()) {
    depth[r] = 0;
    queue.push_back(r);
  }
  while (!queue.empty()) {
    const TagId t = queue.front();
    queue.pop_front();
    for (TagId c : children(t)) {
      if (depth[c] == kUnset) {
        depth[c] = depth[t] + 1;
        queue.push_back(c);
      }
    }
  }
  return depth;
}

bool Hierarchy::same_structure(const Hierarchy& other) const {
  if (tag_count() != other.tag_count() || edge_count() != other.edge_count()) return false;
  std::set<std::pair<std::string, std::string>> mine, theirs;
  for (const auto& e : edges_) mine.emplace(name(e.parent), name(e.child));
  for (const auto& e : other.edges_) theirs.emplace(other.name(e.parent), other.name(e.child));
  if (mine != theirs) return false;
  for (const auto& n : names()) {
    if (!other.find(n)) return false;
  }
  return true;
}

Hierarchy read_hierarchy(std::istream& in) {
  SymbolTable symbols;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      symbols.intern(line);
      continue;
    }
    if (line.find('\t', tab + 1) != std::string::npos) throw ParseError("expected 'parent<TAB>child'", line_no);
    const std::string_view parent(line.data(), tab);
    const std::string_view child(line.data() + tab + 1, line.size() - tab - 1);
    if (parent.empty() || child.empty()) throw ParseError("empty tag field", line_no);
    const TagId p = symbols.intern(parent);
    const TagId c = symbols.intern(child);
    edges.push_back({p, c});
  }
  if (in.bad()) throw Error("read failure");
  return Hierarchy(symbols.names(), std::move(edges));
}

Hierarchy load_hierarchy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return read_hierarchy(in);
}

void write_hierarchy(std::ostream& out, const Hierarchy& h) {
  std::vector<bool> seen(h.tag_count(), false);
  std::vector<TagId> stack;
  for (TagId r : h.roots()) {
    stack.push_back(r);
    while (!stack.empty()) {
      const TagId t = stack.back();
      stack.pop_back();
      if (seen[t]) continue;
      seen[t] = true;
      const auto ch = h.children(t);
      for (TagId c : ch) out << h.name(t) << '\t' << h.name(c) << '\n';
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
        if (!seen[*it]) stack.push_back(*it);
      }
    }
  }
  for (TagId t = 0; t < h.tag_count(); ++t) {
    if (h.children(t).empty() && h.parents(t).empty()) out << h.name(t) << '\n';
  }
}

void save_hierarchy(const Hierarchy& h, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_hierarchy(out, h);
  if (!out) throw Error("write failure on '" + path.string() + "'");
}

Hierarchy align(const Hierarchy& reference, const Hierarchy& other, bool pad_missing) {
  const std::size_t n = reference.tag_count();
  std::vector<TagId> remap(other.tag_count());
  std::vector<std::string> unknown;
  std::vector<bool> present(n, false);
  for (TagId t = 0; t < other.tag_count(); ++t) {
    if (auto id = reference.find(other.name(t))) {
      remap[t] = *id;
      present[*id] = true;
    } else {
      unknown.push_back(other.name(t));
    }
  }
  auto list = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size() && i < 10; ++i) s += (i ? ", '" : "'") + v[i] + "'";
    if (v.size() > 10) s += ", ... (" + std::to_string(v.size()) + " total)";
    return s;
  };
  if (!unknown.empty()) throw Error("tags missing from the exact hierarchy: " + list(unknown));
  if (!pad_missing) {
    std::vector<std::string> missing;
    for (TagId t = 0; t < n; ++t) {
      if (!present[t]) missing.push_back(reference.name(t));
    }
    if (!missing.empty()) throw Error("tags missing from the reconstructed hierarchy: " + list(missing));
  }
  std::vector<Edge> edges;
  edges.reserve(other.edge_count());
  for (const auto& e : other.edges()) edges.push_back({remap[e.parent], remap[e.child]});
  return Hierarchy(reference.names(), std::move(edges));
}

DescendantTable::DescendantTable(const Hierarchy& h)
    : words_((h.tag_count() + 63) / 64), bits_(words_ * h.tag_count(), 0), sizes_(h.tag_count(), 0) {
  const auto order = h.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const TagId t = *it;
    std::uint64_t* dst = bits_.data() + t * words_;
    for (TagId c : h.children(t)) {
      const std::uint64_t* src = bits_.data() + c * words_;
      for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
      dst[c >> 6] |= std::uint64_t{1} << (c & 63);
    }
    std::size_t count = 0;
    for (std::size_t w = 0; w < words_; ++w) count += static_cast<std::size_t>(std::popcount(dst[w]));
    sizes_[t] = count;
  }
}

std::size_t DescendantTable::intersection_size(TagId t, const DescendantTable& other) const {
  if (other.tag_count() != tag_count()) throw Error("descendant tables over different tag sets");
  const auto a = row(t);
  const auto b = other.row(t);
  std::size_t count = 0;
  for (std::size_t w = 0; w < words_; ++w) count += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  return count;
}

std::vector<TagId> DescendantTable::members(TagId t) const {
  std::vector<TagId> out;
  for (TagId j = 0; j < tag_count(); ++j) {
    if (contains(t, j)) out.push_back(j);
  }
  return out;
}

Hierarchy binary_tree(int levels) {
  if (levels < 1 || levels > 30) throw Error("binary tree levels must be in [1, 30]");
  const std::size_t n = (std::size_t{1} << levels) - 1;
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  std::vector<Edge> edges;
  for (std::size_t i = 2; i <= n; ++i) edges.push_back({static_cast<TagId>(i / 2 - 1), static_cast<TagId>(i - 1)});
  return Hierarchy(std::move(names), std::move(edges));
}

std::size_t rewire_count(double fraction, std::size_t links) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(links) + 0.5));
}

Hierarchy rewire(const Hierarchy& tree, double fraction, RewireOrder order, Rng& rng) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw Error("rewiring fraction must be in [0, 1]");
  if (!tree.is_tree()) throw Error("rewiring requires a single-rooted tree");
  const std::size_t n = tree.tag_count();
  std::vector<TagId> parent(n);
  std::vector<std::vector<TagId>> kids(n);
  std::vector<TagId> links;  // identified by child
  for (const auto& e : tree.edges()) {
    parent[e.child] = e.parent;
    kids[e.parent].push_back(e.child);
    links.push_back(e.child);
  }
  const auto depth = tree.depths();
  // Links at equal depth go in random order; the stable sorts keep it.
  rng.shuffle(links);
  switch (order) {
    case RewireOrder::top_first:
      std::stable_sort(links.begin(), links.end(), [&](TagId a, TagId b) { return depth[a] < depth[b]; });
      break;
    case RewireOrder::leaf_first:
      std::stable_sort(links.begin(), links.end(), [&](TagId a, TagId b) { return depth[a] > depth[b]; });
      break;
    case RewireOrder::random:
      break;
  }
  const std::size_t count = rewire_count(fraction, links.size());

  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t stamp = 0;
  std::vector<TagId> stack, allowed;
  for (std::size_t k = 0; k < count; ++k) {
    const TagId c = links[k];
    ++stamp;
    std::size_t blocked = 0;
    stack.assign(1, c);
    while (!stack.empty()) {
      const TagId t = stack.back();
      stack.pop_back();
      mark[t] = stamp;
      ++blocked;
      for (TagId x : kids[t]) stack.push_back(x);
    }
    TagId target;
    if (2 * blocked <= n) {
      do {
        target = static_cast<TagId>(rng.below(n));
      } while (mark[target] == stamp);
    } else {
      allowed.clear();
      for (TagId t = 0; t < n; ++t) {
        if (mark[t] != stamp) allowed.push_back(t);
      }
      target = allowed[rng.below(allowed.size())];
    }
    auto& old = kids[parent[c]];
    old.erase(std::find(old.begin(), old.end(), c));
    kids[target].push_back(c);
    parent[c] = target;
  }
  std::vector<Edge> edges;
  edges.reserve(links.size());
  for (TagId c : links) edges.push_back({parent[c], c});
  return Hierarchy(tree.names(), std::move(edges));
}

}  // namespace hiertags
