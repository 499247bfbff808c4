#include "kgsim/cli.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <vector>

#include <CLI11.hpp>

#include "kgsim/engine.hpp"
#include "kgsim/error.hpp"
#include "kgsim/lexicalize.hpp"
#include "kgsim/service/api.hpp"
#include "kgsim/service/config.hpp"
#include "kgsim/service/http_server.hpp"
#include "kgsim/text.hpp"
#include "kgsim/trainers.hpp"
#include "kgsim/vector_provider.hpp"

namespace kgsim::cli {
namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string out_dir = "out";
  std::string graph;
  std::string format = "tsv";
  bool json = false;
  std::uint64_t seed = 42;
  std::string subclass_prop = "P279";
  std::string instance_prop = "P31";

  bool as_json() const { return json || format == "json"; }
  WorkspaceLayout layout() const { return {out_dir}; }
  TaxonomyConfig taxonomy() const { return {subclass_prop, instance_prop}; }
  fs::path graph_path() const { return graph.empty() ? layout().graph() : fs::path(graph); }
};

struct Context {
  GlobalOptions global;
  std::ostream& out;
  std::ostream& err;
};

std::string fmt(std::optional<double> v) { return v ? format_double(*v) : "null"; }

GraphStore load_store(const Context& ctx) {
  GraphStore store;
  store.ingest_edges(ctx.global.graph_path());
  store.freeze();
  return store;
}

std::shared_ptr<const Engine> load_query_engine(const Context& ctx) {
  EngineOptions options;
  options.taxonomy = ctx.global.taxonomy();
  options.index.seed = ctx.global.seed;
  options.graph_path = ctx.global.graph_path();
  return std::make_shared<const Engine>(load_engine(ctx.global.layout(), options));
}

/// Prints an API response and maps HTTP-style failures to exit codes.
int emit(const Context& ctx, const service::ApiResponse& response) {
  if (response.status != 200) {
    ctx.err << response.body << '\n';
    return response.status == 400 ? kUsageError : kDataError;
  }
  ctx.out << response.body << '\n';
  return kOk;
}

// ---- verbs ---------------------------------------------------------------

struct IngestArgs {
  std::string input;
};

int do_ingest(const Context& ctx, const IngestArgs& args) {
  GraphStore store;
  const auto edges = store.ingest_edges(args.input);
  store.freeze();
  fs::create_directories(ctx.global.out_dir);
  store.write_edges(ctx.global.layout().graph());
  if (ctx.global.as_json()) {
    ctx.out << "{\"edges\": " << edges << ", \"nodes\": " << store.nodes().size()
            << ", \"labeled\": " << store.meta_count() << "}\n";
  } else {
    ctx.out << "edges\t" << edges << "\nnodes\t" << store.nodes().size() << "\nlabeled\t"
            << store.meta_count() << '\n';
  }
  return kOk;
}

int do_build_taxonomy(const Context& ctx) {
  const auto store = load_store(ctx);
  const auto tx = build_taxonomy(store, ctx.global.taxonomy());
  fs::create_directories(ctx.global.out_dir);
  tx.save(ctx.global.layout().taxonomy());
  std::size_t classes = 0;
  for (const auto& id : tx.ids()) {
    if (tx.ext(id) > 0) ++classes;
  }
  ctx.out << "nodes\t" << tx.node_count() << "\nclasses\t" << classes << '\n';
  return kOk;
}

struct TrainArgs {
  std::string model = "transe";
  TrainConfig config;
  std::string norm = "L2";
  bool loss_log = false;
};

int do_train(const Context& ctx, TrainArgs args) {
  const auto kind = parse_embedding_kind(args.model);
  if (kind == EmbeddingKind::text) throw ConfigError("text vectors are not trained; use ingest-vectors");
  args.config.seed = ctx.global.seed;
  if (args.norm == "L1" || args.norm == "l1") {
    args.config.norm = Norm::L1;
  } else if (args.norm == "L2" || args.norm == "l2") {
    args.config.norm = Norm::L2;
  } else {
    throw ConfigError("norm must be L1 or L2");
  }
  const auto store = load_store(ctx);
  const auto result = kind == EmbeddingKind::transe ? train_transe(store, args.config)
                                                    : train_complex(store, args.config);
  const auto layout = ctx.global.layout();
  fs::create_directories(ctx.global.out_dir);
  write_vectors(result.table.nodes(), layout.table(kind));
  write_vectors(result.table.relations(), layout.relations(kind));
  if (args.loss_log) {
    for (std::size_t e = 0; e < result.epoch_loss.size(); ++e) {
      ctx.out << "epoch\t" << e << '\t' << format_double(result.epoch_loss[e]) << '\n';
    }
  }
  ctx.out << "model\t" << args.model << "\nentities\t" << result.table.nodes().size()
          << "\nrelations\t" << result.table.relations().size() << "\nfirst_loss\t"
          << format_double(result.epoch_loss.front()) << "\nfinal_loss\t"
          << format_double(result.epoch_loss.back()) << '\n';
  return kOk;
}

struct LexicalizeArgs {
  std::vector<std::string> nodes;
  bool embed_builtin = false;
  std::size_t dim = 64;
};

int do_lexicalize(const Context& ctx, const LexicalizeArgs& args) {
  const auto store = load_store(ctx);
  const auto& nodes = args.nodes.empty() ? store.nodes() : args.nodes;
  if (args.embed_builtin) {
    const HashedTokenProvider provider(args.dim);
    const auto table = embed_nodes(store, provider, nodes);
    fs::create_directories(ctx.global.out_dir);
    write_vectors(table.nodes(), ctx.global.layout().table(EmbeddingKind::text));
    ctx.out << "nodes\t" << table.nodes().size() << "\ndim\t" << table.dim() << '\n';
    return kOk;
  }
  for (const auto& node : nodes) ctx.out << node << '\t' << lexicalize(store, node) << '\n';
  return kOk;
}

struct IngestVectorsArgs {
  std::string input;
  std::string kind = "text";
};

int do_ingest_vectors(const Context& ctx, const IngestVectorsArgs& args) {
  const auto kind = parse_embedding_kind(args.kind);
  const auto table = ingest_vectors(args.input, kind);
  fs::create_directories(ctx.global.out_dir);
  write_vectors(table.nodes(), ctx.global.layout().table(kind));
  ctx.out << "nodes\t" << table.nodes().size() << "\ndim\t" << table.dim() << '\n';
  return kOk;
}

struct BuildIndexArgs {
  std::string table = "complex";
  std::string metric = "euclidean";
  std::string mode = "exact";
  std::size_t partitions = 16;
  std::size_t probes = 1;
};

int do_build_index(const Context& ctx, const BuildIndexArgs& args) {
  const auto kind = parse_embedding_kind(args.table);
  const auto layout = ctx.global.layout();
  const auto table = ingest_vectors(layout.table(kind), kind);
  IndexConfig config;
  config.metric = parse_metric(args.metric);
  config.mode = parse_index_mode(args.mode);
  config.partitions = args.partitions;
  config.probes = args.probes;
  config.seed = ctx.global.seed;
  const auto index = KnnIndex::build(table, config);
  index.save(layout.index(kind));
  ctx.out << "table\t" << args.table << "\nnodes\t" << index.size() << "\npartitions\t"
          << index.partitions().size() << '\n';
  return kOk;
}

struct SimilarityArgs {
  std::string q1;
  std::vector<std::string> q2;
  bool explain = false;
};

int do_similarity(const Context& ctx, const SimilarityArgs& args) {
  const auto engine = load_query_engine(ctx);
  service::SimilarityApi api(engine, {});
  std::string q2;
  for (const auto& q : args.q2) q2 += (q2.empty() ? "" : ",") + q;
  service::QueryParams params{{"q1", args.q1}, {"q2", q2}};
  if (args.explain) params["explain"] = "1";
  if (ctx.global.as_json()) return emit(ctx, api.similarity(params));

  // TSV goes through the same validation as the endpoint.
  const auto response = api.similarity(params);
  if (response.status != 200) return emit(ctx, response);
  ctx.out << "qnode1\tqnode2";
  for (auto a : all_algorithms()) ctx.out << '\t' << to_string(a);
  ctx.out << '\n';
  std::vector<std::string> secondaries;
  for (const auto& q : args.q2) {
    std::size_t start = 0;
    while (start <= q.size()) {
      auto comma = q.find(',', start);
      if (comma == std::string::npos) comma = q.size();
      if (comma > start) secondaries.push_back(q.substr(start, comma - start));
      start = comma + 1;
    }
  }
  for (const auto& q : secondaries) {
    const auto report = compare(*engine, args.q1, q, all_algorithms(), args.explain);
    ctx.out << report.qnode1 << '\t' << report.qnode2;
    for (const auto& [algorithm, score] : report.scores) ctx.out << '\t' << fmt(score);
    ctx.out << '\n';
    for (const auto& p : report.shared_parents) {
      ctx.out << "#parent\t" << p.qnode << '\t' << format_double(p.idf) << '\t' << p.label << '\n';
    }
  }
  return kOk;
}

struct NeighborsArgs {
  std::string qnode;
  std::size_t k = 10;
  std::string table = "complex";
};

int do_neighbors(const Context& ctx, const NeighborsArgs& args) {
  const auto engine = load_query_engine(ctx);
  service::SimilarityApi api(engine, {});
  const service::QueryParams params{
      {"qnode", args.qnode}, {"k", std::to_string(args.k)}, {"table", args.table}};
  const auto response = api.nearest_neighbors(params);
  if (ctx.global.as_json() || response.status != 200) return emit(ctx, response);
  const auto* index = engine->index_for(parse_embedding_kind(args.table));
  ctx.out << "qnode\tscore\tlabel\n";
  for (const auto& hit : index->nearest_neighbors(args.qnode, args.k, engine->label_lookup())) {
    ctx.out << hit.qnode << '\t' << format_double(hit.score) << '\t' << hit.label << '\n';
  }
  return kOk;
}

struct SearchArgs {
  std::string query;
  std::size_t limit = 10;
};

int do_search(const Context& ctx, const SearchArgs& args) {
  // Search only needs the graph.
  auto engine = std::make_shared<Engine>();
  engine->store = std::make_shared<const GraphStore>(load_store(ctx));
  service::SimilarityApi api(engine, {});
  const service::QueryParams params{{"q", args.query}, {"limit", std::to_string(args.limit)}};
  if (ctx.global.as_json()) return emit(ctx, api.search(params));
  ctx.out << "qnode\tlabel\tdescription\n";
  for (const auto& hit : engine->store->search_labels(args.query, args.limit)) {
    ctx.out << hit.qnode << '\t' << hit.label << '\t' << hit.description << '\n';
  }
  return kOk;
}

struct ServeArgs {
  std::string config;
  int port = 0;
  std::string host;
};

int do_serve(const Context& ctx, const ServeArgs& args) {
  service::ServiceConfig config;
  if (!args.config.empty()) {
    config = service::load_service_config(args.config);
  } else {
    config.workspace = ctx.global.out_dir;
    config.engine.taxonomy = ctx.global.taxonomy();
    config.engine.index.seed = ctx.global.seed;
    if (!ctx.global.graph.empty()) config.engine.graph_path = ctx.global.graph;
  }
  service::apply_environment(config);
  if (args.port != 0) config.port = args.port;
  if (!args.host.empty()) config.host = args.host;
  config.validate();

  auto engine = std::make_shared<const Engine>(load_engine({config.workspace}, config.engine));
  auto api = std::make_shared<const service::SimilarityApi>(engine, config.api);
  service::HttpServer server(api, config.static_dir);
  const auto port = server.bind(config.host, config.port);
  ctx.err << "kgsim: serving " << config.workspace.string() << " on " << config.host << ':' << port
          << '\n';
  server.listen();
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Context ctx{{}, out, err};
  auto& g = ctx.global;

  CLI::App app{"Knowledge-graph node similarity: class, TransE, ComplEx and text metrics", "kgsim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", g.out_dir, "Artifact directory")->capture_default_str();
  app.add_option("--graph", g.graph, "Edge file (default: <out>/graph.tsv)");
  app.add_option("--format", g.format, "Query output format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  app.add_flag("--json", g.json, "Same as --format json");
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--subclass-prop", g.subclass_prop, "Subclass-of property id")->capture_default_str();
  app.add_option("--instance-prop", g.instance_prop, "Instance-of property id")->capture_default_str();

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Load an edge file into <out>/graph.tsv");
  ingest_cmd->add_option("input", ingest.input, "Edge file")->required();

  auto* taxonomy_cmd = app.add_subcommand("build-taxonomy", "Build <out>/taxonomy.bin");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train TransE or ComplEx embeddings");
  train_cmd->add_option("--model", train.model)->check(CLI::IsMember({"transe", "complex"}))->capture_default_str();
  train_cmd->add_option("--dim", train.config.dim)->capture_default_str();
  train_cmd->add_option("--epochs", train.config.epochs)->capture_default_str();
  train_cmd->add_option("--lr", train.config.learning_rate)->capture_default_str();
  train_cmd->add_option("--margin", train.config.margin)->capture_default_str();
  train_cmd->add_option("--negatives", train.config.negatives)->capture_default_str();
  train_cmd->add_option("--batch-size", train.config.batch_size)->capture_default_str();
  train_cmd->add_option("--regularization", train.config.regularization)->capture_default_str();
  train_cmd->add_option("--norm", train.norm, "TransE distance: L1 or L2")->capture_default_str();
  train_cmd->add_flag("--loss-log", train.loss_log, "Print every epoch's mean loss");

  LexicalizeArgs lex;
  auto* lex_cmd = app.add_subcommand("lexicalize", "Render nodes as sentences");
  lex_cmd->add_option("--qnode", lex.nodes, "Nodes to render (default: all)");
  lex_cmd->add_flag("--embed-builtin", lex.embed_builtin,
                    "Embed sentences with the hashed-token provider into <out>/text.tsv");
  lex_cmd->add_option("--dim", lex.dim, "Provider dimension")->capture_default_str();

  IngestVectorsArgs vectors;
  auto* vectors_cmd = app.add_subcommand("ingest-vectors", "Import an external vector file");
  vectors_cmd->add_option("input", vectors.input, "Vector file")->required();
  vectors_cmd->add_option("--kind", vectors.kind)
      ->check(CLI::IsMember({"transe", "complex", "text"}))
      ->capture_default_str();

  BuildIndexArgs index;
  auto* index_cmd = app.add_subcommand("build-index", "Build a nearest-neighbor index");
  index_cmd->add_option("--table", index.table)->check(CLI::IsMember({"transe", "complex", "text"}))->capture_default_str();
  index_cmd->add_option("--metric", index.metric)->check(CLI::IsMember({"euclidean", "cosine"}))->capture_default_str();
  index_cmd->add_option("--mode", index.mode)->check(CLI::IsMember({"exact", "partitioned"}))->capture_default_str();
  index_cmd->add_option("--partitions", index.partitions)->capture_default_str();
  index_cmd->add_option("--probes", index.probes)->capture_default_str();

  SimilarityArgs sim;
  auto* sim_cmd = app.add_subcommand("similarity", "Score q2 nodes against q1 with every metric");
  sim_cmd->add_option("--q1", sim.q1)->required();
  sim_cmd->add_option("--q2", sim.q2, "Comma-separated or repeated")->required();
  sim_cmd->add_flag("--explain", sim.explain, "Include shared parents");

  NeighborsArgs nn;
  auto* nn_cmd = app.add_subcommand("neighbors", "K nearest neighbors of a node");
  nn_cmd->add_option("--qnode", nn.qnode)->required();
  nn_cmd->add_option("--k", nn.k)->check(CLI::PositiveNumber)->capture_default_str();
  nn_cmd->add_option("--table", nn.table)->check(CLI::IsMember({"transe", "complex", "text"}))->capture_default_str();

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Label and alias prefix search");
  search_cmd->add_option("--q", search.query)->required();
  search_cmd->add_option("--limit", search.limit)->check(CLI::PositiveNumber)->capture_default_str();

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the REST service");
  serve_cmd->add_option("--config", serve.config, "key = value config file");
  serve_cmd->add_option("--port", serve.port)->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", serve.host);

  std::vector<const char*> argv{"kgsim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    app.exit(e, out, err);
    err << app.help();
    return kUsageError;
  }

  try {
    if (*ingest_cmd) return do_ingest(ctx, ingest);
    if (*taxonomy_cmd) return do_build_taxonomy(ctx);
    if (*train_cmd) return do_train(ctx, train);
    if (*lex_cmd) return do_lexicalize(ctx, lex);
    if (*vectors_cmd) return do_ingest_vectors(ctx, vectors);
    if (*index_cmd) return do_build_index(ctx, index);
    if (*sim_cmd) return do_similarity(ctx, sim);
    if (*nn_cmd) return do_neighbors(ctx, nn);
    if (*search_cmd) return do_search(ctx, search);
    if (*serve_cmd) return do_serve(ctx, serve);
  } catch (const std::exception& e) {
    err << "kgsim: " << e.what() << '\n';
    return kDataError;
  }
  err << app.help();
  return kUsageError;
}

}  // namespace kgsim::cli
