#include "kgsim/embedding_table.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include "kgsim/error.hpp"
#include "kgsim/random.hpp"
#include "kgsim/text.hpp"

namespace kgsim {

double Rng::normal() {
  double u1 = real();
  while (u1 <= 0.0) u1 = real();
  const double u2 = real();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::string_view to_string(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::transe: return "transe";
    case EmbeddingKind::complex: return "complex";
    case EmbeddingKind::text: return "text";
  }
  return "unknown";
}

EmbeddingKind parse_embedding_kind(std::string_view name) {
  if (name == "transe") return EmbeddingKind::transe;
  if (name == "complex") return EmbeddingKind::complex;
  if (name == "text") return EmbeddingKind::text;
  throw ConfigError("unknown embedding kind: " + std::string(name));
}

std::size_t storage_width(EmbeddingKind kind, std::size_t dim) {
  return kind == EmbeddingKind::complex ? 2 * dim : dim;
}

std::optional<std::size_t> VectorBlock::find(std::string_view id) const {
  const auto it = lookup_.find(std::string(id));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t VectorBlock::add(std::string id, std::span<const double> values) {
  if (values.size() != width_) {
    throw Error("vector for " + id + " has width " + std::to_string(values.size()) +
                ", expected " + std::to_string(width_));
  }
  const auto row = ids_.size();
  if (!lookup_.emplace(id, row).second) throw Error("duplicate vector id: " + id);
  ids_.push_back(std::move(id));
  data_.insert(data_.end(), values.begin(), values.end());
  return row;
}

EmbeddingTable::EmbeddingTable(EmbeddingKind kind, std::size_t dim)
    : kind_(kind), dim_(dim), nodes_(storage_width(kind, dim)), relations_(storage_width(kind, dim)) {
  if (dim == 0) throw ConfigError("embedding dimension must be positive");
}

std::span<const double> EmbeddingTable::vector(std::string_view node) const {
  const auto row = nodes_.find(node);
  if (!row) throw NotFoundError(std::string(node));
  return nodes_.row(*row);
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error("cosine of vectors with different widths");
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw UndefinedSimilarityError("cosine of a zero vector");
  // sqrt(x * x) == x exactly in IEEE arithmetic, so cosine(u, u) is exactly 1.
  const double c = dot / std::sqrt(uu * vv);
  return std::clamp(c, -1.0, 1.0);
}

double cosine(const EmbeddingTable& table, std::string_view a, std::string_view b) {
  return cosine(table.vector(a), table.vector(b));
}

namespace {

std::vector<double> parse_values(const std::vector<std::string_view>& fields,
                                 const std::string& source, std::size_t line_no) {
  std::vector<double> values;
  values.reserve(fields.size() - 1);
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const auto f = fields[i];
    double v = 0.0;
    const auto [end, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc{} || end != f.data() + f.size()) {
      throw ParseError(source, line_no, "bad number '" + std::string(f) + "'");
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace

EmbeddingTable ingest_vectors(const std::filesystem::path& path, EmbeddingKind kind) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open vector file: " + path.string());
  return ingest_vectors(in, kind, path.string());
}

EmbeddingTable ingest_vectors(std::istream& in, EmbeddingKind kind, const std::string& source) {
  std::optional<EmbeddingTable> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields[0].empty()) throw ParseError(source, line_no, "empty node id");
    if (fields.size() < 2) throw ParseError(source, line_no, "no vector values");
    auto values = parse_values(fields, source, line_no);
    if (!table) {
      if (kind == EmbeddingKind::complex && values.size() % 2 != 0) {
        throw ParseError(source, line_no, "complex vectors need an even number of reals");
      }
      const auto dim = kind == EmbeddingKind::complex ? values.size() / 2 : values.size();
      table.emplace(kind, dim);
    }
    if (values.size() != table->width()) {
      throw ParseError(source, line_no,
                       "dimension mismatch: expected " + std::to_string(table->width()) +
                           ", found " + std::to_string(values.size()));
    }
    const std::string id(fields[0]);
    if (table->contains(id)) throw ParseError(source, line_no, "duplicate node id " + id);
    table->nodes().add(id, values);
  }
  if (in.bad()) throw IoError("read failure: " + source);
  if (!table) throw ParseError(source, line_no, "vector file is empty");
  return std::move(*table);
}

void write_vectors(const VectorBlock& block, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write vector file: " + path.string());
  write_vectors(block, out);
  if (!out) throw IoError("write failure: " + path.string());
}

void write_vectors(const VectorBlock& block, std::ostream& out) {
  std::array<char, 40> buf{};
  for (std::size_t i = 0; i < block.size(); ++i) {
    out << block.ids()[i];
    for (double v : block.row(i)) {
      const auto [end, ec] =
          std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
      out << '\t';
      out.write(buf.data(), end - buf.data());
    }
    out << '\n';
  }
}

VectorBlock read_vector_block(const std::filesystem::path& path) {
  auto table = ingest_vectors(path, EmbeddingKind::text);
  return table.nodes();
}

}  // namespace kgsim
