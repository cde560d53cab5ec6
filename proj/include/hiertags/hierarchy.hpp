#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hiertags/corpus.hpp"
#include "hiertags/random.hpp"

namespace hiertags {

struct Edge {
  TagId parent;
  TagId child;
  auto operator<=>(const Edge&) const = default;
};

/// Rooted DAG of tags; edges point from the more general tag to the more
/// specific one. Immutable once constructed.
class Hierarchy {
 public:
  /// Throws Error("cycle ...") if the edges contain a directed cycle.
  /// Duplicate edges are collapsed. `synthetic_root` marks a helper node that
  /// is not a real tag (see without_synthetic_root()).
  Hierarchy(std::vector<std::string> names, std::vector<Edge> edges, std::optional<TagId> synthetic_root = {});

  std::size_t tag_count() const noexcept { return symbols_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// Edges ordered by (child, parent).
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const TagId> children(TagId t) const {
    return {child_.data() + child_offsets_[t], child_.data() + child_offsets_[t + 1]};
  }
  std::span<const TagId> parents(TagId t) const {
    return {parent_.data() + parent_offsets_[t], parent_.data() + parent_offsets_[t + 1]};
  }

  std::vector<TagId> roots() const;
  /// Single root and every other tag has exactly one parent.
  bool is_tree() const;
  /// Every tag has at most one parent.
  bool is_forest() const;

  const std::string& name(TagId t) const { return symbols_.name(t); }
  const std::vector<std::string>& names() const noexcept { return symbols_.names(); }
  std::optional<TagId> find(std::string_view name) const { return symbols_.find(name); }

  std::optional<TagId> synthetic_root() const noexcept { return synthetic_root_; }
  /// Drops the synthetic root and its links; its children become roots.
  Hierarchy without_synthetic_root() const;

  /// Parents before children.
  std::vector<TagId> topological_order() const;
  /// Shortest distance from any root.
  std::vector<std::size_t> depths() const;

  /// Same tag names and same named edge set, regardless of identifiers.
  bool same_structure(const Hierarchy& other) const;

 private:
  SymbolTable symbols_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> child_offsets_, parent_offsets_;
  std::vector<TagId> child_, parent_;
  std::optional<TagId> synthetic_root_;
};

Hierarchy read_hierarchy(std::istream& in);
Hierarchy load_hierarchy(const std::filesystem::path& path);
/// "parent TAB child" lines in depth-first order, then bare lines for tags
/// without any link.
void write_hierarchy(std::ostream& out, const Hierarchy& h);
void save_hierarchy(const Hierarchy& h, const std::filesystem::path& path);

/// Re-expresses `other` over the identifiers of `reference`. Tags unknown to
/// `reference` always throw; tags of `reference` absent from `other` throw
/// unless `pad_missing`, in which case they are added as isolated tags.
Hierarchy align(const Hierarchy& reference, const Hierarchy& other, bool pad_missing = false);

/// Reachability sets D(i) (descendants, excluding i) as dense bitsets.
class DescendantTable {
 public:
  explicit DescendantTable(const Hierarchy& h);

  std::size_t tag_count() const noexcept { return sizes_.size(); }
  bool contains(TagId ancestor, TagId tag) const {
    return (row(ancestor)[tag >> 6] >> (tag & 63)) & 1u;
  }
  std::size_t size(TagId t) const { return sizes_[t]; }
  /// |D(t) ∩ D'(t)| where D' comes from `other` over the same identifiers.
  std::size_t intersection_size(TagId t, const DescendantTable& other) const;
  std::vector<TagId> members(TagId t) const;

 private:
  std::span<const std::uint64_t> row(TagId t) const { return {bits_.data() + t * words_, words_}; }
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::size_t> sizes_;
};

/// Full binary tree with 2^levels - 1 tags named by heap index ("1" is the root,
/// "2i" and "2i+1" are the children of "i").
Hierarchy binary_tree(int levels);

enum class RewireOrder { leaf_first, random, top_first };

/// round(f * links) with halves rounded up.
std::size_t rewire_count(double fraction, std::size_t links);

/// Moves round(f * M) links of a tree to random new parents. The links are
/// taken leaf-first (deepest child first), in random order, or top-first;
/// depth is measured on the input tree with ties broken by child identifier.
/// A rewired child keeps its subtree and receives a parent drawn uniformly
/// from the tags outside that subtree, so the result is again a tree.
Hierarchy rewire(const Hierarchy& tree, double fraction, RewireOrder order, Rng& rng);

}  // namespace hiertags
