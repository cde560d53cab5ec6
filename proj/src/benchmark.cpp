#include "hiertags/benchmark.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "hiertags/error.hpp"
#include "hiertags/parallel.hpp"
#include "hiertags/random.hpp"

namespace hiertags {

namespace {

constexpr std::size_t chunk_size = 4096;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = text.find(sep);
    out.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) return out;
    text.remove_prefix(pos + 1);
  }
}

template <class T>
T number(std::string_view text, std::string_view what) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw Error("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::string show(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

TagsPerObject TagsPerObject::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "poisson") {
    const auto mean = number<double>(parts[1], "Poisson mean");
    if (!(mean > 0.0)) throw Error("Poisson mean must be positive");
    return {Kind::poisson, mean};
  }
  if (parts.size() == 2 && parts[0] == "fixed") {
    const auto k = number<int>(parts[1], "tag count");
    if (k < 1) throw Error("tag count must be at least 1");
    return {Kind::fixed, static_cast<double>(k)};
  }
  throw Error("tags per object must be poisson:<mean> or fixed:<k>, got '" + std::string(text) + "'");
}

std::string TagsPerObject::str() const {
  return kind == Kind::poisson ? "poisson:" + show(value) : "fixed:" + show(value);
}

WalkLength WalkLength::parse(std::string_view text) {
  const auto parts = split(text, ':');
  WalkLength w;
  if (parts.size() == 3 && parts[0] == "uniform") {
    w = {number<int>(parts[1], "walk length"), number<int>(parts[2], "walk length")};
  } else if (parts.size() == 2 && parts[0] == "fixed") {
    w.min = w.max = number<int>(parts[1], "walk length");
  } else {
    throw Error("walk length must be uniform:<a>:<b> or fixed:<k>, got '" + std::string(text) + "'");
  }
  if (w.min < 1 || w.max < w.min) throw Error("walk lengths need 1 <= a <= b");
  return w;
}

std::string WalkLength::str() const { return "uniform:" + std::to_string(min) + ":" + std::to_string(max); }

FrequencyProfile FrequencyProfile::parse(std::string_view text) {
  FrequencyProfile p;
  if (text == "linear-depth") return p;
  const auto parts = split(text, ':');
  if (parts[0] == "power-law" && parts.size() <= 2) {
    p.kind = Kind::power_law;
    if (parts.size() == 2) p.exponent = number<double>(parts[1], "power-law exponent");
    if (!(p.exponent > 1.0) || !std::isfinite(p.exponent)) throw Error("power-law exponent must be greater than 1");
    return p;
  }
  if (parts[0] == "zipf" && parts.size() == 2) {
    p.kind = Kind::zipf;
    p.exponent = number<double>(parts[1], "zipf exponent");
    if (!(p.exponent >= 0.0) || !std::isfinite(p.exponent)) throw Error("zipf exponent must be non-negative");
    return p;
  }
  throw Error("unknown frequency profile '" + std::string(text) + "'");
}

FrequencyProfile FrequencyProfile::load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  FrequencyProfile p;
  p.kind = Kind::table;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto parts = split(line, '\t');
    if (parts.size() != 2 || parts[0].empty()) throw ParseError("expected 'tag TAB weight'", n);
    const auto w = number<double>(parts[1], "weight");
    if (!(w >= 0.0) || !std::isfinite(w)) throw ParseError("weight must be finite and non-negative", n);
    p.table.emplace(std::string(parts[0]), w);
  }
  return p;
}

std::string FrequencyProfile::str() const {
  switch (kind) {
    case Kind::linear_depth:
      return "linear-depth";
    case Kind::power_law:
      return "power-law:" + show(exponent);
    case Kind::zipf:
      return "zipf:" + show(exponent);
    case Kind::table:
      break;
  }
  return "table";
}

std::vector<double> frequency_profile(const Hierarchy& h, const FrequencyProfile& profile, std::uint64_t seed) {
  const std::size_t n = h.tag_count();
  std::vector<double> w(n);
  switch (profile.kind) {
    case FrequencyProfile::Kind::linear_depth: {
      const auto depth = h.depths();
      const std::size_t deepest = n ? *std::max_element(depth.begin(), depth.end()) : 0;
      for (std::size_t t = 0; t < n; ++t) w[t] = static_cast<double>(deepest - depth[t] + 1);
      break;
    }
    case FrequencyProfile::Kind::power_law:
    case FrequencyProfile::Kind::zipf: {
      // P(w) ~ w^-g has rank-ordered quantiles ~ rank^(-1 / (g - 1)).
      const double slope =
          profile.kind == FrequencyProfile::Kind::zipf ? profile.exponent : 1.0 / (profile.exponent - 1.0);
      std::vector<std::size_t> rank(n);
      std::iota(rank.begin(), rank.end(), std::size_t{1});
      Rng rng = Rng(seed).split(0);
      rng.shuffle(rank);
      for (std::size_t t = 0; t < n; ++t) w[t] = std::pow(static_cast<double>(rank[t]), -slope);
      break;
    }
    case FrequencyProfile::Kind::table: {
      std::vector<std::string> missing;
      for (TagId t = 0; t < n; ++t) {
        const auto it = profile.table.find(h.name(t));
        if (it == profile.table.end()) {
          missing.push_back(h.name(t));
        } else {
          w[t] = it->second;
        }
      }
      if (!missing.empty()) {
        throw Error("frequency table has no weight for tag '" + missing.front() + "'" +
                    (missing.size() > 1 ? " (and " + std::to_string(missing.size() - 1) + " more)" : ""));
      }
      break;
    }
  }
  return w;
}

TagCorpus generate(const Hierarchy& h, const BenchmarkConfig& config) {
  if (config.object_count < 1) throw Error("object count must be at least 1");
  if (!(config.p_rw >= 0.0 && config.p_rw <= 1.0)) throw Error("p_RW must lie in [0, 1]");
  if (config.walk.min < 1 || config.walk.max < config.walk.min) throw Error("walk lengths need 1 <= a <= b");
  if (h.tag_count() == 0) throw Error("empty hierarchy");

  const auto weights = frequency_profile(h, config.profile, config.seed);
  const DiscreteSampler pick(weights);

  // Undirected neighborhoods of the hierarchy.
  const std::size_t n = h.tag_count();
  std::vector<std::vector<TagId>> around(n);
  for (TagId t = 0; t < n; ++t) {
    around[t].assign(h.parents(t).begin(), h.parents(t).end());
    around[t].insert(around[t].end(), h.children(t).begin(), h.children(t).end());
  }

  const bool poisson = config.tags_per_object.kind == TagsPerObject::Kind::poisson;
  const double tags_value = config.tags_per_object.value;
  if (!(tags_value > 0.0) || (!poisson && tags_value < 1.0)) throw Error("invalid tags-per-object parameter");

  const std::size_t chunks = (config.object_count + chunk_size - 1) / chunk_size;
  std::vector<std::vector<std::vector<TagId>>> out(chunks);
  const Rng base(config.seed);
  parallel_for(chunks, config.threads, [&](std::size_t c) {
    Rng rng = base.split(1 + c);
    const std::size_t begin = c * chunk_size;
    const std::size_t end = std::min(config.object_count, begin + chunk_size);
    auto& objects = out[c];
    objects.reserve(end - begin);
    for (std::size_t q = begin; q < end; ++q) {
      std::vector<TagId> tags;
      const auto first = static_cast<TagId>(pick(rng));
      tags.push_back(first);
      std::uint64_t count = static_cast<std::uint64_t>(tags_value);
      if (poisson) {
        do {
          count = rng.poisson(tags_value);
        } while (count == 0);
      }
      for (std::uint64_t i = 2; i <= count; ++i) {
        if (rng.uniform() < config.p_rw) {
          TagId at = first;
          const auto steps = rng.between(config.walk.min, config.walk.max);
          for (std::int64_t s = 0; s < steps; ++s) {
            const auto& nb = around[at];
            if (!nb.empty()) at = nb[rng.below(nb.size())];
          }
          tags.push_back(at);
        } else {
          tags.push_back(static_cast<TagId>(pick(rng)));
        }
      }
      objects.push_back(std::move(tags));
    }
  });

  std::vector<std::vector<TagId>> objects;
  objects.reserve(config.object_count);
  for (auto& chunk : out) {
    for (auto& o : chunk) objects.push_back(std::move(o));
  }
  return TagCorpus(h.names(), objects);
}

}  // namespace hiertags
