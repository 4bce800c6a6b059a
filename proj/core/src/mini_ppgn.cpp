#include "graphdiff/mini_ppgn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "graphdiff/errors.hpp"

namespace graphdiff {

namespace {

using Mat = Eigen::MatrixXd;

// Tensor indices in creation order: per block m1 (4), m2 (4), skip (4), norm (2); then head (4).
constexpr std::size_t kPerBlock = 14;
constexpr std::size_t kM1 = 0;
constexpr std::size_t kM2 = 4;
constexpr std::size_t kSkip = 8;
constexpr std::size_t kNormScale = 12;
constexpr std::size_t kNormOffset = 13;

std::size_t block_base(int k) { return kPerBlock * static_cast<std::size_t>(k); }
std::size_t head_base(const MiniPpgnConfig& c) { return block_base(c.depth); }

struct MlpCache {
  Mat in;
  Mat z1;
  Mat h1;
  Mat z2;
  Mat out;
};

struct BlockTrace {
  MlpCache m1;
  MlpCache m2;
  MlpCache skip;
  Mat xhat;
  Eigen::VectorXd inv_std;
};

Mat silu(const Mat& z) { return (z.array() / (1.0 + (-z.array()).exp())).matrix(); }

Mat silu_grad(const Mat& z) {
  const Eigen::ArrayXXd s = 1.0 / (1.0 + (-z.array()).exp());
  return (s * (1.0 + z.array() * (1.0 - s))).matrix();
}

void require_finite(const Mat& m, const std::string& where) {
  if (!m.allFinite()) throw NumericError("mini_ppgn: non-finite values in " + where);
}

std::string block_name(int k) { return "block" + std::to_string(k); }

class Network {
 public:
  explicit Network(const MiniPpgnParams& params) : params_(params), specs_(params.tensors()) {}

  Eigen::Map<const Mat> weight(std::size_t index) const { return params_.matrix(specs_[index]); }

  void mlp_forward(std::size_t base, Mat in, bool activate_out, MlpCache& c) const {
    c.in = std::move(in);
    c.z1 = c.in * weight(base);
    c.z1.rowwise() += weight(base + 1).row(0);
    c.h1 = silu(c.z1);
    c.z2 = c.h1 * weight(base + 2);
    c.z2.rowwise() += weight(base + 3).row(0);
    c.out = activate_out ? silu(c.z2) : c.z2;
  }

  Mat mlp_backward(std::size_t base, const MlpCache& c, const Mat& d_out, bool activate_out,
                   std::span<double> grad) const {
    const Mat dz2 = activate_out ? Mat(d_out.cwiseProduct(silu_grad(c.z2))) : d_out;
    grad_map(grad, base + 2).noalias() += c.h1.transpose() * dz2;
    grad_map(grad, base + 3) += dz2.colwise().sum();
    const Mat dz1 = (dz2 * weight(base + 2).transpose()).cwiseProduct(silu_grad(c.z1));
    grad_map(grad, base).noalias() += c.in.transpose() * dz1;
    grad_map(grad, base + 1) += dz1.colwise().sum();
    return dz1 * weight(base).transpose();
  }

  Eigen::Map<Mat> grad_map(std::span<double> grad, std::size_t index) const {
    const auto& s = specs_[index];
    return {grad.data() + s.offset, s.rows, s.cols};
  }

 private:
  const MiniPpgnParams& params_;
  const std::vector<TensorSpec>& specs_;
};

}  // namespace

struct MiniPpgnTrace {
  int n = 0;
  std::vector<BlockTrace> blocks;
  Mat concat;
  MlpCache head;
};

void MiniPpgnTraceDeleter::operator()(MiniPpgnTrace* trace) const noexcept { delete trace; }

MiniPpgnParams::MiniPpgnParams(MiniPpgnConfig config) : config_(config) {
  if (config.depth < 1 || config.hidden < 1) throw std::invalid_argument("MiniPPGN needs depth >= 1 and hidden >= 1");
  std::size_t offset = 0;
  auto add = [&](std::string name, int rows, int cols) {
    tensors_.push_back(TensorSpec{std::move(name), rows, cols, offset});
    offset += tensors_.back().size();
  };
  auto add_mlp = [&](const std::string& prefix, int in, int hidden, int out) {
    add(prefix + ".0.weight", in, hidden);
    add(prefix + ".0.bias", 1, hidden);
    add(prefix + ".1.weight", hidden, out);
    add(prefix + ".1.bias", 1, out);
  };
  const int h = config.hidden;
  for (int k = 0; k < config.depth; ++k) {
    const int in = k == 0 ? MiniPpgnConfig::input_channels : h;
    const auto prefix = block_name(k);
    add_mlp(prefix + ".m1", in, h, h);
    add_mlp(prefix + ".m2", in, h, h);
    add_mlp(prefix + ".skip", in + h, h, h);
    add(prefix + ".norm.scale", 1, h);
    add(prefix + ".norm.offset", 1, h);
  }
  add_mlp("head", config.depth * h, h, 1);
  values_.assign(offset, 0.0);
}

MiniPpgnParams MiniPpgnParams::initialized(MiniPpgnConfig config, Rng& rng) {
  MiniPpgnParams params(config);
  // Fan-in of a bias is the fan-in of the weight created just before it.
  int fan_in = 1;
  for (const auto& spec : params.tensors_) {
    auto values = params.matrix(spec);
    if (spec.name.ends_with(".norm.scale")) {
      values.setOnes();
      continue;
    }
    if (spec.name.ends_with(".norm.offset")) continue;
    if (spec.name.ends_with(".weight")) fan_in = spec.rows;
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      for (Eigen::Index r = 0; r < values.rows(); ++r) values(r, c) = (2.0 * uniform01(rng) - 1.0) * bound;
    }
  }
  return params;
}

const TensorSpec& MiniPpgnParams::tensor(std::string_view name) const {
  for (const auto& spec : tensors_) {
    if (spec.name == name) return spec;
  }
  throw std::out_of_range("no tensor named '" + std::string(name) + "'");
}

DenoiserOutput mini_ppgn_forward(const MiniPpgnParams& params, const Graph& a_t, double beta_bar_t,
                                 MiniPpgnTracePtr* trace_out) {
  for (const auto& spec : params.tensors()) {
    if (!params.matrix(spec).allFinite()) throw NumericError("mini_ppgn: non-finite values in parameter " + spec.name);
  }
  if (!std::isfinite(beta_bar_t)) throw NumericError("mini_ppgn: non-finite noise level");

  const auto& config = params.config();
  const int n = a_t.node_count();
  const Eigen::Index positions = static_cast<Eigen::Index>(n) * n;
  const int h = config.hidden;
  Network net(params);

  MiniPpgnTracePtr trace(new MiniPpgnTrace);
  trace->n = n;
  trace->blocks.resize(static_cast<std::size_t>(config.depth));

  // Position (i, j) lives in row i + j * n, so each channel column maps onto a
  // column-major n x n matrix.
  Mat x = Mat::Zero(positions, MiniPpgnConfig::input_channels);
  for (auto [i, j] : a_t.edges()) {
    x(i + j * n, 0) = 1.0;
    x(j + i * n, 0) = 1.0;
  }
  for (int i = 0; i < n; ++i) x(i + i * n, 1) = beta_bar_t;

  trace->concat.resize(positions, static_cast<Eigen::Index>(config.depth) * h);
  for (int k = 0; k < config.depth; ++k) {
    auto& bt = trace->blocks[static_cast<std::size_t>(k)];
    const std::size_t base = block_base(k);
    const Eigen::Index in_channels = x.cols();

    net.mlp_forward(base + kM1, x, true, bt.m1);
    net.mlp_forward(base + kM2, x, true, bt.m2);

    Mat skip_in(positions, in_channels + h);
    skip_in.leftCols(in_channels) = x;
    for (int c = 0; c < h; ++c) {
      Eigen::Map<const Mat> a(bt.m1.out.col(c).data(), n, n);
      Eigen::Map<const Mat> b(bt.m2.out.col(c).data(), n, n);
      Eigen::Map<Mat> prod(skip_in.col(in_channels + c).data(), n, n);
      prod.noalias() = a * b;
    }
    require_finite(skip_in, block_name(k) + " matrix product");

    net.mlp_forward(base + kSkip, std::move(skip_in), true, bt.skip);

    const auto scale = net.weight(base + kNormScale);
    const auto offset = net.weight(base + kNormOffset);
    const Eigen::RowVectorXd mean = bt.skip.out.colwise().mean();
    bt.xhat = bt.skip.out.rowwise() - mean;
    const Eigen::RowVectorXd var = bt.xhat.colwise().squaredNorm() / static_cast<double>(positions);
    bt.inv_std = (var.array() + MiniPpgnConfig::norm_epsilon).rsqrt().transpose();
    bt.xhat = bt.xhat * bt.inv_std.asDiagonal();
    x = bt.xhat * scale.row(0).transpose().asDiagonal();
    x.rowwise() += offset.row(0);
    require_finite(x, block_name(k) + " instance norm");

    trace->concat.middleCols(static_cast<Eigen::Index>(k) * h, h) = x;
  }

  net.mlp_forward(head_base(config), trace->concat, false, trace->head);
  require_finite(trace->head.out, "output head");

  const auto& full = trace->head.out;
  std::vector<double> logits(a_t.pair_count());
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) logits[k] = 0.5 * (full(i + j * n, 0) + full(j + i * n, 0));
  }
  if (trace_out) *trace_out = std::move(trace);
  return DenoiserOutput::from_logits(std::move(logits));
}

std::vector<double> mini_ppgn_backward(const MiniPpgnParams& params, const MiniPpgnTrace& trace,
                                       std::span<const double> dlogits) {
  const auto& config = params.config();
  const int n = trace.n;
  const Eigen::Index positions = static_cast<Eigen::Index>(n) * n;
  const int h = config.hidden;
  if (dlogits.size() != pair_count(n)) throw std::invalid_argument("mini_ppgn_backward: gradient length mismatch");
  for (double g : dlogits) {
    if (!std::isfinite(g)) throw NumericError("mini_ppgn: non-finite upstream gradient");
  }

  Network net(params);
  std::vector<double> grad(params.size(), 0.0);

  Mat d_full = Mat::Zero(positions, 1);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) {
      d_full(i + j * n, 0) += 0.5 * dlogits[k];
      d_full(j + i * n, 0) += 0.5 * dlogits[k];
    }
  }

  const Mat d_concat = net.mlp_backward(head_base(config), trace.head, d_full, false, grad);

  Mat d_x;  // gradient flowing into the output of block b from block b + 1
  for (int b = config.depth - 1; b >= 0; --b) {
    const auto& bt = trace.blocks[static_cast<std::size_t>(b)];
    const std::size_t base = block_base(b);

    Mat d_y = d_concat.middleCols(static_cast<Eigen::Index>(b) * h, h);
    if (d_x.size()) d_y += d_x;

    // Instance norm.
    const auto scale = net.weight(base + kNormScale);
    net.grad_map(grad, base + kNormScale) += d_y.cwiseProduct(bt.xhat).colwise().sum();
    net.grad_map(grad, base + kNormOffset) += d_y.colwise().sum();
    const Mat d_xhat = d_y * scale.row(0).transpose().asDiagonal();
    const double count = static_cast<double>(positions);
    const Eigen::RowVectorXd sum_d = d_xhat.colwise().sum();
    const Eigen::RowVectorXd sum_dx = d_xhat.cwiseProduct(bt.xhat).colwise().sum();
    Mat d_skip_out = (d_xhat * count).rowwise() - sum_d;
    d_skip_out -= bt.xhat * sum_dx.transpose().asDiagonal();
    d_skip_out = d_skip_out * (bt.inv_std / count).asDiagonal();

    const Mat d_skip_in = net.mlp_backward(base + kSkip, bt.skip, d_skip_out, true, grad);
    const Eigen::Index in_channels = bt.m1.in.cols();

    Mat d_m1(positions, h);
    Mat d_m2(positions, h);
    for (int c = 0; c < h; ++c) {
      Eigen::Map<const Mat> a(bt.m1.out.col(c).data(), n, n);
      Eigen::Map<const Mat> bm(bt.m2.out.col(c).data(), n, n);
      Eigen::Map<const Mat> d_prod(d_skip_in.col(in_channels + c).data(), n, n);
      Eigen::Map<Mat>(d_m1.col(c).data(), n, n).noalias() = d_prod * bm.transpose();
      Eigen::Map<Mat>(d_m2.col(c).data(), n, n).noalias() = a.transpose() * d_prod;
    }

    Mat d_in = d_skip_in.leftCols(in_channels);
    d_in += net.mlp_backward(base + kM1, bt.m1, d_m1, true, grad);
    d_in += net.mlp_backward(base + kM2, bt.m2, d_m2, true, grad);
    d_x = std::move(d_in);
  }

  for (const auto& spec : params.tensors()) {
    for (std::size_t k = spec.offset; k < spec.offset + spec.size(); ++k) {
      if (!std::isfinite(grad[k])) throw NumericError("mini_ppgn: non-finite gradient for " + spec.name);
    }
  }
  return grad;
}

std::vector<double> mini_ppgn_backward(const MiniPpgnParams& params, const Graph& a_t, double beta_bar_t,
                                       std::span<const double> dlogits) {
  MiniPpgnTracePtr trace;
  mini_ppgn_forward(params, a_t, beta_bar_t, &trace);
  return mini_ppgn_backward(params, *trace, dlogits);
}

}  // namespace graphdiff
