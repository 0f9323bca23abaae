#include "hgpart/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hgpart/error.hpp"

namespace hgpart {
namespace {

/// Walks a text buffer line by line, skipping '%' comments and blank lines.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  /// Next non-comment, non-blank line; false at end of input.
  bool next(std::string_view& line) {
    while (pos_ < text_.size()) {
      const auto end = text_.find('\n', pos_);
      const auto stop = end == std::string_view::npos ? text_.size() : end;
      std::string_view raw = text_.substr(pos_, stop - pos_);
      pos_ = stop + 1;
      ++line_number_;
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      const auto first = raw.find_first_not_of(" \t");
      if (first == std::string_view::npos) continue;
      if (raw[first] == '%') continue;
      line = raw.substr(first);
      return true;
    }
    return false;
  }

  std::size_t line_number() const noexcept { return line_number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_number_ = 0;
};

std::vector<long long> parse_integers(std::string_view line, std::size_t line_number) {
  std::vector<long long> values;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc() ||
        (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t')) {
      throw ParseError(line_number, "expected an integer in \"" + std::string(line) + "\"");
    }
    values.push_back(value);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return values;
}

}  // namespace

Hypergraph parse_hmetis(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next(line)) throw ParseError(reader.line_number(), "missing header line");
  const auto header = parse_integers(line, reader.line_number());
  if (header.size() < 2 || header.size() > 3) {
    throw ParseError(reader.line_number(), "header must be \"m n\" or \"m n fmt\"");
  }
  const long long m = header[0];
  const long long n = header[1];
  const long long fmt = header.size() == 3 ? header[2] : 0;
  if (m < 0 || n < 0) throw ParseError(reader.line_number(), "negative edge or vertex count");
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11) {
    throw ParseError(reader.line_number(), "fmt must be one of 1, 10, 11");
  }
  const bool edge_weights = fmt == 1 || fmt == 11;
  const bool vertex_weights = fmt == 10 || fmt == 11;

  std::vector<Weight> ew(static_cast<std::size_t>(m), 1);
  std::vector<std::vector<VertexId>> pins(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    if (!reader.next(line)) {
      throw ParseError(reader.line_number(), "truncated file: expected " + std::to_string(m) +
                                                 " hyperedges, found " + std::to_string(e));
    }
    const auto values = parse_integers(line, reader.line_number());
    std::size_t first_pin = 0;
    if (edge_weights) {
      if (values.empty() || values[0] < 1) {
        throw ParseError(reader.line_number(), "hyperedge weight must be positive");
      }
      ew[e] = values[0];
      first_pin = 1;
    }
    if (values.size() <= first_pin) throw ParseError(reader.line_number(), "hyperedge has no pins");
    auto& list = pins[e];
    list.reserve(values.size() - first_pin);
    for (std::size_t i = first_pin; i < values.size(); ++i) {
      if (values[i] < 1 || values[i] > n) {
        throw ParseError(reader.line_number(), "pin " + std::to_string(values[i]) +
                                                   " outside [1, " + std::to_string(n) + "]");
      }
      list.push_back(static_cast<VertexId>(values[i] - 1));
    }
  }

  std::vector<Weight> vw(static_cast<std::size_t>(n), 1);
  if (vertex_weights) {
    for (long long v = 0; v < n; ++v) {
      if (!reader.next(line)) {
        throw ParseError(reader.line_number(), "truncated file: expected " + std::to_string(n) +
                                                   " vertex weights, found " + std::to_string(v));
      }
      const auto values = parse_integers(line, reader.line_number());
      if (values.size() != 1) throw ParseError(reader.line_number(), "expected one vertex weight");
      if (values[0] < 1) throw ParseError(reader.line_number(), "vertex weight must be positive");
      vw[v] = values[0];
    }
  }
  if (reader.next(line)) {
    throw ParseError(reader.line_number(), "unexpected trailing content");
  }
  return Hypergraph(std::move(vw), std::move(ew), pins);
}

Hypergraph read_hmetis(const std::filesystem::path& path) {
  return parse_hmetis(read_text_file(path));
}

std::string write_hmetis(const Hypergraph& h) {
  bool weighted_edges = false;
  for (Weight w : h.edge_weights()) weighted_edges |= w != 1;
  bool weighted_vertices = false;
  for (Weight w : h.vertex_weights()) weighted_vertices |= w != 1;

  std::ostringstream out;
  out << h.num_edges() << ' ' << h.num_vertices();
  if (weighted_edges || weighted_vertices) {
    out << ' ' << (weighted_vertices ? "1" : "") << (weighted_edges ? "1" : "0");
  }
  out << '\n';
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    bool first = true;
    if (weighted_edges) {
      out << h.edge_weight(e);
      first = false;
    }
    for (VertexId v : h.pins(e)) {
      if (!first) out << ' ';
      out << v + 1;
      first = false;
    }
    out << '\n';
  }
  if (weighted_vertices) {
    for (Weight w : h.vertex_weights()) out << w << '\n';
  }
  return out.str();
}

std::vector<BlockId> parse_partition(std::string_view text, std::size_t n, BlockId k) {
  LineReader reader(text);
  std::string_view line;
  std::vector<BlockId> assignment;
  assignment.reserve(n);
  while (reader.next(line)) {
    const auto values = parse_integers(line, reader.line_number());
    if (values.size() != 1) throw ParseError(reader.line_number(), "expected one block id");
    if (assignment.size() == n) {
      throw ParseError(reader.line_number(), "more than " + std::to_string(n) + " block ids");
    }
    if (values[0] < 0 || values[0] >= k) {
      throw ParseError(reader.line_number(), "block id " + std::to_string(values[0]) +
                                                 " outside [0, " + std::to_string(k) + ")");
    }
    assignment.push_back(static_cast<BlockId>(values[0]));
  }
  if (assignment.size() != n) {
    throw ParseError(reader.line_number(), "expected " + std::to_string(n) +
                                               " block ids, found " +
                                               std::to_string(assignment.size()));
  }
  return assignment;
}

std::vector<BlockId> read_partition(const std::filesystem::path& path, std::size_t n,
                                    BlockId k) {
  return parse_partition(read_text_file(path), n, k);
}

std::string write_partition(std::span<const BlockId> assignment) {
  std::string out;
  out.reserve(assignment.size() * 2);
  for (BlockId b : assignment) {
    out += std::to_string(b);
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace hgpart
