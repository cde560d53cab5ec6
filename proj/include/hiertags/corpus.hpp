#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hiertags {

using TagId = std::uint32_t;

/// Interns tag strings to dense identifiers in order of first appearance.
class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(std::vector<std::string> names);

  TagId intern(std::string_view name);
  std::optional<TagId> find(std::string_view name) const;
  const std::string& name(TagId id) const { return names_[id]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
  };
  std::vector<std::string> names_;
  std::unordered_map<std::string, TagId, Hash, std::equal_to<>> index_;
};

/// Multiset of objects, each a non-empty duplicate-free set of tags.
///
/// Only tags that occur on at least one object are kept, numbered by first
/// appearance, so a corpus built in memory and the same corpus re-read from
/// its text form are identical.
class TagCorpus {
 public:
  /// `objects` hold indices into `names`. Duplicates inside one object are
  /// collapsed; an empty object throws.
  TagCorpus(std::span<const std::string> names, const std::vector<std::vector<TagId>>& objects);

  std::size_t object_count() const noexcept { return offsets_.size() - 1; }
  std::size_t tag_count() const noexcept { return frequency_.size(); }
  std::uint64_t frequency(TagId tag) const { return frequency_[tag]; }
  std::span<const std::uint64_t> frequencies() const noexcept { return frequency_; }

  /// Tags of object q in ascending identifier order.
  std::span<const TagId> object(std::size_t q) const {
    return {tags_.data() + offsets_[q], tags_.data() + offsets_[q + 1]};
  }

  const SymbolTable& symbols() const noexcept { return *symbols_; }
  std::shared_ptr<const SymbolTable> shared_symbols() const noexcept { return symbols_; }

 private:
  std::shared_ptr<const SymbolTable> symbols_;
  std::vector<std::size_t> offsets_;
  std::vector<TagId> tags_;
  std::vector<std::uint64_t> frequency_;
};

struct CorpusFormat {
  /// First TAB-separated field of every line is an object id and is skipped.
  bool with_ids = false;
};

TagCorpus read_corpus(std::istream& in, CorpusFormat format = {});
TagCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format = {});
void write_corpus(std::ostream& out, const TagCorpus& corpus);

/// Sorted (pair key, count) run; key = (low id << 32) | high id.
class PairCounts {
 public:
  static std::uint64_t key(TagId a, TagId b) noexcept {
    if (a > b) std::swap(a, b);
    return (std::uint64_t{a} << 32) | b;
  }
  static std::pair<TagId, TagId> unpack(std::uint64_t key) noexcept {
    return {static_cast<TagId>(key >> 32), static_cast<TagId>(key & 0xffffffffu)};
  }

  /// Counts pairs over objects [begin, end) of the corpus.
  static PairCounts count(const TagCorpus& corpus, std::size_t begin, std::size_t end);

  /// Commutative, associative sum of two counters.
  static PairCounts merge(const PairCounts& a, const PairCounts& b);

  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& entries() const noexcept { return entries_; }
  bool operator==(const PairCounts&) const = default;

 private:
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries_;
};

/// Sparse symmetric co-occurrence weights Q_ij plus the corpus marginals.
class CooccurrenceNetwork {
 public:
  CooccurrenceNetwork(std::shared_ptr<const SymbolTable> symbols, std::uint64_t object_count,
                      std::vector<std::uint64_t> frequency, const PairCounts& counts);

  std::size_t tag_count() const noexcept { return frequency_.size(); }
  std::uint64_t object_count() const noexcept { return object_count_; }
  std::uint64_t frequency(TagId tag) const { return frequency_[tag]; }
  std::span<const std::uint64_t> frequencies() const noexcept { return frequency_; }

  /// Co-occurring partners of `tag`, ascending by identifier.
  std::span<const TagId> neighbors(TagId tag) const {
    return {neighbor_.data() + offsets_[tag], neighbor_.data() + offsets_[tag + 1]};
  }
  /// Weights aligned with neighbors(tag).
  std::span<const std::uint64_t> weights(TagId tag) const {
    return {weight_.data() + offsets_[tag], weight_.data() + offsets_[tag + 1]};
  }
  /// Offset of tag's adjacency in the flat arrays (for per-link side tables).
  std::size_t link_offset(TagId tag) const { return offsets_[tag]; }

  /// Q_ij, 0 when the pair never co-occurs.
  std::uint64_t weight(TagId a, TagId b) const;

  /// Number of undirected links.
  std::size_t link_count() const noexcept { return neighbor_.size() / 2; }

  const SymbolTable& symbols() const noexcept { return *symbols_; }
  std::shared_ptr<const SymbolTable> shared_symbols() const noexcept { return symbols_; }

 private:
  std::shared_ptr<const SymbolTable> symbols_;
  std::uint64_t object_count_;
  std::vector<std::uint64_t> frequency_;
  std::vector<std::size_t> offsets_;
  std::vector<TagId> neighbor_;
  std::vector<std::uint64_t> weight_;
};

/// Counts co-occurrences over object shards in parallel; the result does not
/// depend on `threads`.
CooccurrenceNetwork build_cooccurrence(const TagCorpus& corpus, unsigned threads = 1);

}  // namespace hiertags
