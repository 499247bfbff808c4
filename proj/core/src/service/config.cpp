#include "kgsim/service/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>

#include "kgsim/error.hpp"

namespace kgsim::service {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || end != value.data() + value.size()) {
    throw ConfigError("bad value for " + key + ": '" + value + "'");
  }
  return out;
}

std::vector<Algorithm> parse_algorithms(const std::string& value) {
  std::vector<Algorithm> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    if (comma == std::string::npos) comma = value.size();
    const auto name = trim(value.substr(start, comma - start));
    if (!name.empty()) out.push_back(parse_algorithm(name));
    start = comma + 1;
  }
  if (out.empty()) throw ConfigError("algorithms list is empty");
  return out;
}

}  // namespace

void ServiceConfig::validate() const {
  if (port < 1 || port > 65535) throw ConfigError("port must be in [1, 65535]");
  if (api.default_k == 0) throw ConfigError("default_k must be positive");
}

void apply_setting(ServiceConfig& config, const std::string& key, const std::string& value) {
  if (key == "host") {
    config.host = value;
  } else if (key == "port") {
    config.port = parse_number<int>(key, value);
  } else if (key == "workspace") {
    config.workspace = value;
  } else if (key == "graph") {
    config.engine.graph_path = value;
  } else if (key == "transe" || key == "complex" || key == "text") {
    config.engine.table_paths[parse_embedding_kind(key)] = value;
  } else if (key == "default_k") {
    config.api.default_k = parse_number<std::size_t>(key, value);
  } else if (key == "algorithms") {
    config.engine.algorithms = parse_algorithms(value);
    config.api.algorithms = config.engine.algorithms;
  } else if (key == "neighbors_table") {
    config.api.neighbors_table = parse_embedding_kind(value);
  } else if (key == "index_metric") {
    config.engine.index.metric = parse_metric(value);
  } else if (key == "index_mode") {
    config.engine.index.mode = parse_index_mode(value);
  } else if (key == "index_partitions") {
    config.engine.index.partitions = parse_number<std::size_t>(key, value);
  } else if (key == "index_probes") {
    config.engine.index.probes = parse_number<std::size_t>(key, value);
  } else if (key == "seed") {
    config.engine.index.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "subclass_prop") {
    config.engine.taxonomy.subclass_property = value;
  } else if (key == "instance_prop") {
    config.engine.taxonomy.instance_property = value;
  } else if (key == "static_dir") {
    config.static_dir = value;
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path.string());
  ServiceConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(path.string(), line_no, "expected key = value");
    apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

void apply_environment(ServiceConfig& config) {
  if (const char* port = std::getenv("KGSIM_PORT"); port && *port) {
    config.port = parse_number<int>("KGSIM_PORT", port);
  }
}

}  // namespace kgsim::service
