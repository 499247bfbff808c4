#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "kgsim/engine.hpp"
#include "kgsim/service/api.hpp"

namespace kgsim::service {

/// Server settings. File format is one `key = value` per line, `#` comments:
///
///   host = 0.0.0.0
///   port = 8080
///   workspace = out
///   graph = out/graph.tsv          # optional, defaults into workspace
///   transe = out/transe.tsv        # optional table overrides
///   complex = out/complex.tsv
///   text = out/text.tsv
///   default_k = 10
///   algorithms = class,transe,complex,text
///   neighbors_table = complex
///   index_metric = euclidean       # euclidean | cosine
///   index_mode = exact             # exact | partitioned
///   index_partitions = 16
///   index_probes = 1
///   seed = 42
///   subclass_prop = P279
///   instance_prop = P31
///   static_dir = ui/dist           # optional static assets for the web UI
///
/// KGSIM_PORT in the environment overrides the port.
struct ServiceConfig {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::filesystem::path workspace = "out";
  EngineOptions engine;
  ApiOptions api;
  std::optional<std::filesystem::path> static_dir;

  /// Throws ConfigError when the port is outside [1, 65535].
  void validate() const;
};

ServiceConfig load_service_config(const std::filesystem::path& path);
/// Applies one `key = value` setting. Throws ConfigError on unknown keys.
void apply_setting(ServiceConfig& config, const std::string& key, const std::string& value);
void apply_environment(ServiceConfig& config);

}  // namespace kgsim::service
