#include "manifest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "hiertags/error.hpp"

namespace hiertags::cli {

void Manifest::set(std::string key, std::string value) {
  // Values are single-line by construction of the format.
  std::replace(value.begin(), value.end(), '\n', ' ');
  std::replace(value.begin(), value.end(), '\t', ' ');
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
  if (it != entries_.end()) {
    it->second = std::move(value);
  } else {
    entries_.emplace_back(std::move(key), std::move(value));
  }
}

std::optional<std::string> Manifest::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void Manifest::write(std::ostream& out) const {
  for (const auto& [k, v] : entries_) out << k << '\t' << v << '\n';
}

Manifest Manifest::read(std::istream& in) {
  Manifest m;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw ParseError("expected 'key TAB value'", n);
    m.set(line.substr(0, tab), line.substr(tab + 1));
  }
  return m;
}

Manifest Manifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest " + path);
  return read(in);
}

std::vector<std::string> Manifest::replay_args() const {
  const auto sub = get("subcommand");
  if (!sub || sub->empty()) throw Error("manifest has no subcommand");
  std::vector<std::string> args{*sub};
  for (const auto& [k, v] : entries_) {
    if (!k.starts_with("arg.")) continue;
    const std::string flag = "--" + k.substr(4);
    if (v == "true") {
      args.push_back(flag);
    } else if (v != "false" && !v.empty()) {
      args.push_back(flag);
      args.push_back(v);
    }
  }
  return args;
}

}  // namespace hiertags::cli
