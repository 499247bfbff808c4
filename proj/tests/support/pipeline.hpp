#pragma once

// Drives the command-line verbs in-process to produce a workspace on disk.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace kgsim::testing {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args);

/// Unique directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// ingest, build-taxonomy, train both models, embed text with the built-in
/// provider and index all three tables, all under `out`. Throws on failure.
void build_fixture_workspace(const std::filesystem::path& out, std::uint64_t seed = 42);

/// Workspace built once per process with seed 42; removed at exit.
const std::filesystem::path& shared_fixture_workspace();

std::filesystem::path golden_path(const std::string& name);

std::string read_file(const std::filesystem::path& path);

}  // namespace kgsim::testing
