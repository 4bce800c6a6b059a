#include "graphdiff/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "graphdiff/errors.hpp"

namespace graphdiff {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<long long> parse_int(std::string_view token) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

class BatchParser {
 public:
  void feed(std::string_view raw, std::size_t line_no) {
    const bool blank = trim(raw).empty();
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);

    if (blank) {
      finish();
      return;
    }
    if (line.empty()) return;  // comment-only line

    if (line.starts_with("n=")) {
      finish();
      auto n = parse_int(trim(line.substr(2)));
      if (!n || *n < 1 || *n > 1'000'000) throw ParseError(line_no, "invalid node count '" + std::string(line) + "'");
      current_.emplace(static_cast<int>(*n));
      return;
    }
    if (!current_) throw ParseError(line_no, "edge line before 'n=' header");

    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) throw ParseError(line_no, "expected '<i> <j>', got '" + std::string(line) + "'");
    auto a = parse_int(trim(line.substr(0, space)));
    auto b = parse_int(trim(line.substr(space + 1)));
    if (!a || !b) throw ParseError(line_no, "expected two integers, got '" + std::string(line) + "'");
    const long long n = current_->node_count();
    if (*a < 0 || *b < 0 || *a >= n || *b >= n) {
      throw ParseError(line_no, "node index out of range for n=" + std::to_string(n));
    }
    if (*a == *b) throw ParseError(line_no, "self-loop on node " + std::to_string(*a));
    const int i = static_cast<int>(std::min(*a, *b));
    const int j = static_cast<int>(std::max(*a, *b));
    if (current_->has_edge(i, j)) {
      throw ParseError(line_no, "duplicate edge " + std::to_string(i) + " " + std::to_string(j));
    }
    current_->set_edge(i, j);
  }

  GraphBatch take() {
    finish();
    return std::move(batch_);
  }

 private:
  void finish() {
    if (current_) {
      batch_.push_back(std::move(*current_));
      current_.reset();
    }
  }

  GraphBatch batch_;
  std::optional<Graph> current_;
};

}  // namespace

GraphBatch read_graphs(std::istream& in) {
  BatchParser parser;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) parser.feed(line, ++line_no);
  return parser.take();
}

GraphBatch parse_graphs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_graphs(in);
}

GraphBatch read_graphs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_graphs(in);
}

void write_graphs(std::ostream& out, const GraphBatch& batch) {
  for (std::size_t g = 0; g < batch.size(); ++g) {
    if (g) out << '\n';
    out << "n=" << batch[g].node_count() << '\n';
    for (auto [i, j] : batch[g].edges()) out << i << ' ' << j << '\n';
  }
}

std::string format_graphs(const GraphBatch& batch) {
  std::ostringstream out;
  write_graphs(out, batch);
  return out.str();
}

void write_graphs(const GraphBatch& batch, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_graphs(out, batch);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string to_dot(const Graph& g, std::string_view name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (int v = 0; v < g.node_count(); ++v) out << "  " << v << ";\n";
  for (auto [i, j] : g.edges()) out << "  " << i << " -- " << j << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace graphdiff
