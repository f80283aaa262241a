#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace nonlocal::cli {

/// Bad flag combinations found after parsing; exit code 2 like parse errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Invocation {
  std::vector<std::string> argv;
  std::string config_text;  ///< verbatim --config file, empty if none
};

/// Results land in <dir>.partial-<pid> and are renamed into place on commit,
/// so a failed run never leaves a half-written output directory behind.
class OutputDir {
 public:
  OutputDir(const std::filesystem::path& target, bool force);
  ~OutputDir();
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;

  std::filesystem::path path(const std::string& name) const { return staging_ / name; }
  const std::filesystem::path& staging() const { return staging_; }
  /// Writes provenance.json (version, command line, effective options) and
  /// config_input.json when a config file was used.
  void write_provenance(const CLI::App& sub, const Invocation& inv) const;
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path staging_;
  bool force_;
  bool committed_ = false;
};

/// Expands `--config file.json` into flags placed right after the
/// subcommand, so flags given explicitly still win.
std::vector<std::string> expand_config(const std::vector<std::string>& args, std::string& config_text);

void register_commands(CLI::App& app, const Invocation& inv);

}  // namespace nonlocal::cli
