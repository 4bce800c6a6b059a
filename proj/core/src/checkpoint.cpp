#include "graphdiff/checkpoint.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_map>

#include "graphdiff/errors.hpp"

namespace graphdiff {

namespace {

constexpr std::string_view kMagic = "graphdiff-checkpoint 1";
constexpr std::array<std::string_view, 3> kGroups = {"param", "adam_m", "adam_v"};

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void put_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> bytes{};
  for (auto& b : bytes) {
    b = static_cast<char>(bits & 0xff);
    bits >>= 8;
  }
  out.write(bytes.data(), bytes.size());
}

double get_le(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) throw ParseError(0, "checkpoint payload truncated");
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | bytes[static_cast<std::size_t>(i)];
  return std::bit_cast<double>(bits);
}

// Parses "key=value key=value" after a leading keyword.
std::unordered_map<std::string, std::string> parse_fields(const std::string& line, std::string_view keyword,
                                                          std::size_t line_no) {
  std::istringstream in(line);
  std::string word;
  in >> word;
  if (word != keyword) throw ParseError(line_no, "expected '" + std::string(keyword) + "' line");
  std::unordered_map<std::string, std::string> fields;
  while (in >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected key=value, got '" + word + "'");
    fields[word.substr(0, eq)] = word.substr(eq + 1);
  }
  return fields;
}

const std::string& field(const std::unordered_map<std::string, std::string>& fields, const std::string& key,
                         std::size_t line_no) {
  auto it = fields.find(key);
  if (it == fields.end()) throw ParseError(line_no, "missing field '" + key + "'");
  return it->second;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) throw ParseError(line_no, "bad number '" + text + "'");
  return value;
}

double parse_double(const std::string& text, std::size_t line_no) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  return parse_number<double>(text, line_no);
}

}  // namespace

void write_checkpoint(std::ostream& out, const Checkpoint& ck) {
  if (ck.schedule == ScheduleKind::custom) throw std::invalid_argument("checkpoints support linear and cosine schedules only");
  const auto& params = ck.state.params;
  const auto& cfg = params.config();
  out << kMagic << '\n';
  out << "config depth=" << cfg.depth << " hidden=" << cfg.hidden << " steps=" << ck.steps
      << " schedule=" << to_string(ck.schedule) << " loss=" << to_string(ck.loss) << '\n';
  const double best = ck.state.best_loss;
  out << "state step=" << ck.state.step << " epoch=" << ck.state.epoch << " seed=" << ck.seed
      << " best_loss=" << (std::isinf(best) && best > 0 ? std::string("inf") : format_double(best)) << '\n';
  out << "node_counts";
  for (auto [n, count] : ck.node_counts) out << ' ' << n << ':' << count;
  out << '\n';
  for (auto group : kGroups) {
    for (const auto& spec : params.tensors()) {
      out << "tensor " << group << '/' << spec.name << " f64 " << spec.rows << ' ' << spec.cols << '\n';
    }
  }
  out << "end\n";

  const std::array<std::span<const double>, 3> data = {params.values(), ck.state.moment1, ck.state.moment2};
  for (auto values : data) {
    if (values.size() != params.size()) throw std::invalid_argument("checkpoint: moment size mismatch");
    for (double v : values) put_le(out, v);
  }
}

void write_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_checkpoint(out, checkpoint);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Checkpoint read_checkpoint(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> const std::string& {
    if (!std::getline(in, line)) throw ParseError(line_no + 1, "unexpected end of checkpoint header");
    ++line_no;
    return line;
  };

  if (next_line() != kMagic) throw ParseError(line_no, "not a graphdiff checkpoint");

  const auto config = parse_fields(next_line(), "config", line_no);
  MiniPpgnConfig model;
  model.depth = parse_number<int>(field(config, "depth", line_no), line_no);
  model.hidden = parse_number<int>(field(config, "hidden", line_no), line_no);
  const int steps = parse_number<int>(field(config, "steps", line_no), line_no);
  ScheduleKind schedule{};
  LossKind loss{};
  try {
    schedule = parse_schedule_kind(field(config, "schedule", line_no));
    loss = parse_loss_kind(field(config, "loss", line_no));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
  if (model.depth < 1 || model.hidden < 1 || steps < 1) throw ParseError(line_no, "invalid model or schedule size");

  const auto state_fields = parse_fields(next_line(), "state", line_no);
  Checkpoint ck{TrainState(MiniPpgnParams(model)), schedule, steps, loss, 0, {}};
  ck.state.step = parse_number<std::uint64_t>(field(state_fields, "step", line_no), line_no);
  ck.state.epoch = parse_number<int>(field(state_fields, "epoch", line_no), line_no);
  ck.seed = parse_number<std::uint64_t>(field(state_fields, "seed", line_no), line_no);
  ck.state.best_loss = parse_double(field(state_fields, "best_loss", line_no), line_no);

  {
    std::istringstream counts(next_line());
    std::string word;
    counts >> word;
    if (word != "node_counts") throw ParseError(line_no, "expected 'node_counts' line");
    while (counts >> word) {
      const auto colon = word.find(':');
      if (colon == std::string::npos) throw ParseError(line_no, "expected n:count, got '" + word + "'");
      ck.node_counts[parse_number<int>(word.substr(0, colon), line_no)] =
          parse_number<int>(word.substr(colon + 1), line_no);
    }
  }

  const auto& params = ck.state.params;
  for (auto group : kGroups) {
    for (const auto& spec : params.tensors()) {
      std::istringstream tensor(next_line());
      std::string keyword, name, dtype;
      int rows = 0, cols = 0;
      tensor >> keyword >> name >> dtype >> rows >> cols;
      const std::string expected = std::string(group) + "/" + spec.name;
      if (keyword != "tensor" || name != expected) {
        throw ParseError(line_no, "expected tensor '" + expected + "', got '" + line + "'");
      }
      if (dtype != "f64") throw ParseError(line_no, "unsupported dtype '" + dtype + "'");
      if (rows != spec.rows || cols != spec.cols) throw ParseError(line_no, "shape mismatch for " + expected);
    }
  }
  if (next_line() != "end") throw ParseError(line_no, "expected 'end'");

  for (double& v : ck.state.params.values()) v = get_le(in);
  for (double& v : ck.state.moment1) v = get_le(in);
  for (double& v : ck.state.moment2) v = get_le(in);
  return ck;
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_checkpoint(in);
}

}  // namespace graphdiff
