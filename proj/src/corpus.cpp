#include "hiertags/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "hiertags/error.hpp"
#include "hiertags/parallel.hpp"

namespace hiertags {

SymbolTable::SymbolTable(std::vector<std::string> names) {
  for (auto& n : names) {
    if (find(n)) throw Error("duplicate tag name '" + n + "'");
    intern(n);
  }
}

TagId SymbolTable::intern(std::string_view name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  const auto id = static_cast<TagId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<TagId> SymbolTable::find(std::string_view name) const {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

TagCorpus::TagCorpus(std::span<const std::string> names, const std::vector<std::vector<TagId>>& objects) {
  if (objects.empty()) throw Error("zero objects");
  constexpr TagId kUnseen = ~TagId{0};
  std::vector<TagId> remap(names.size(), kUnseen);
  auto symbols = std::make_shared<SymbolTable>();
  offsets_.reserve(objects.size() + 1);
  offsets_.push_back(0);
  std::vector<TagId> scratch;
  for (const auto& obj : objects) {
    scratch.assign(obj.begin(), obj.end());
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    if (scratch.empty()) throw Error("object " + std::to_string(offsets_.size() - 1) + " has no tags");
    const std::size_t start = tags_.size();
    for (TagId t : scratch) {
      if (t >= names.size()) throw Error("tag identifier out of range");
      if (remap[t] == kUnseen) {
        remap[t] = symbols->intern(names[t]);
        frequency_.push_back(0);
      }
      tags_.push_back(remap[t]);
      ++frequency_[remap[t]];
    }
    std::sort(tags_.begin() + static_cast<std::ptrdiff_t>(start), tags_.end());
    offsets_.push_back(tags_.size());
  }
  symbols_ = std::move(symbols);
}

TagCorpus read_corpus(std::istream& in, CorpusFormat format) {
  SymbolTable symbols;
  std::vector<std::vector<TagId>> objects;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<TagId> obj;
    std::size_t pos = 0;
    bool first = true;
    while (true) {
      const std::size_t tab = line.find('\t', pos);
      const std::string_view field(line.data() + pos, (tab == std::string::npos ? line.size() : tab) - pos);
      if (!(first && format.with_ids)) {
        if (field.empty()) throw ParseError("empty tag field", line_no);
        obj.push_back(symbols.intern(field));
      }
      first = false;
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (obj.empty()) throw ParseError("object has no tags", line_no);
    objects.push_back(std::move(obj));
  }
  if (in.bad()) throw Error("read failure");
  if (objects.empty()) throw Error("zero objects");
  return TagCorpus(symbols.names(), objects);
}

TagCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return read_corpus(in, format);
}

void write_corpus(std::ostream& out, const TagCorpus& corpus) {
  const auto& sym = corpus.symbols();
  for (std::size_t q = 0; q < corpus.object_count(); ++q) {
    bool first = true;
    for (TagId t : corpus.object(q)) {
      if (!first) out << '\t';
      out << sym.name(t);
      first = false;
    }
    out << '\n';
  }
}

PairCounts PairCounts::count(const TagCorpus& corpus, std::size_t begin, std::size_t end) {
  std::vector<std::uint64_t> keys;
  for (std::size_t q = begin; q < end; ++q) {
    const auto tags = corpus.object(q);
    for (std::size_t i = 0; i < tags.size(); ++i) {
      for (std::size_t j = i + 1; j < tags.size(); ++j) keys.push_back(key(tags[i], tags[j]));
    }
  }
  std::sort(keys.begin(), keys.end());
  PairCounts out;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    out.entries_.emplace_back(keys[i], j - i);
    i = j;
  }
  return out;
}

PairCounts PairCounts::merge(const PairCounts& a, const PairCounts& b) {
  PairCounts out;
  out.entries_.reserve(a.entries_.size() + b.entries_.size());
  auto x = a.entries_.begin();
  auto y = b.entries_.begin();
  while (x != a.entries_.end() || y != b.entries_.end()) {
    if (y == b.entries_.end() || (x != a.entries_.end() && x->first < y->first)) {
      out.entries_.push_back(*x++);
    } else if (x == a.entries_.end() || y->first < x->first) {
      out.entries_.push_back(*y++);
    } else {
      out.entries_.emplace_back(x->first, x->second + y->second);
      ++x;
      ++y;
    }
  }
  return out;
}

CooccurrenceNetwork::CooccurrenceNetwork(std::shared_ptr<const SymbolTable> symbols, std::uint64_t object_count,
                                         std::vector<std::uint64_t> frequency, const PairCounts& counts)
    : symbols_(std::move(symbols)), object_count_(object_count), frequency_(std::move(frequency)) {
  const std::size_t n = frequency_.size();
  offsets_.assign(n + 1, 0);
  for (const auto& [k, c] : counts.entries()) {
    const auto [lo, hi] = PairCounts::unpack(k);
    if (hi >= n) throw Error("pair count refers to unknown tag");
    ++offsets_[lo + 1];
    ++offsets_[hi + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  neighbor_.resize(offsets_[n]);
  weight_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Entries are sorted by (low, high), so sequential filling leaves every
  // adjacency list in ascending neighbor order.
  for (const auto& [k, c] : counts.entries()) {
    const auto [lo, hi] = PairCounts::unpack(k);
    neighbor_[fill[lo]] = hi;
    weight_[fill[lo]++] = c;
    neighbor_[fill[hi]] = lo;
    weight_[fill[hi]++] = c;
  }
}

std::uint64_t CooccurrenceNetwork::weight(TagId a, TagId b) const {
  const auto nb = neighbors(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  if (it == nb.end() || *it != b) return 0;
  return weights(a)[static_cast<std::size_t>(it - nb.begin())];
}

CooccurrenceNetwork build_cooccurrence(const TagCorpus& corpus, unsigned threads) {
  constexpr std::size_t kShard = 1 << 15;
  const std::size_t q = corpus.object_count();
  const std::size_t shards = (q + kShard - 1) / kShard;
  std::vector<PairCounts> partial(shards);
  parallel_for(shards, threads, [&](std::size_t s) {
    partial[s] = PairCounts::count(corpus, s * kShard, std::min(q, (s + 1) * kShard));
  });
  // Pairwise tree reduction.
  for (std::size_t stride = 1; stride < shards; stride *= 2) {
    const std::size_t pairs = (shards + 2 * stride - 1) / (2 * stride);
    parallel_for(pairs, threads, [&](std::size_t p) {
      const std::size_t i = p * 2 * stride;
      if (i + stride < shards) {
        partial[i] = PairCounts::merge(partial[i], partial[i + stride]);
        partial[i + stride] = {};
      }
    });
  }
  PairCounts total = shards ? std::move(partial[0]) : PairCounts{};
  return CooccurrenceNetwork(corpus.shared_symbols(), q,
                             std::vector<std::uint64_t>(corpus.frequencies().begin(), corpus.frequencies().end()),
                             total);
}

}  // namespace hiertags
