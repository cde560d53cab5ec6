#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hiertags::cli {

/// Ordered "key TAB value" record of one run.
class Manifest {
 public:
  void set(std::string key, std::string value);
  std::optional<std::string> get(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

  void write(std::ostream& out) const;
  static Manifest read(std::istream& in);
  static Manifest load(const std::string& path);

  /// Command line that reproduces the run: the subcommand followed by every
  /// recorded "arg.<flag>" entry.
  std::vector<std::string> replay_args() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace hiertags::cli
