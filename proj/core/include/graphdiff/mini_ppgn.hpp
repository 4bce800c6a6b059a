#pragma once

#include <Eigen/Core>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphdiff/denoiser.hpp"
#include "graphdiff/random.hpp"

namespace graphdiff {

/// Size of a MiniPPGN: `depth` blocks of `hidden` channels each.
struct MiniPpgnConfig {
  int depth = 6;
  int hidden = 16;

  static constexpr int input_channels = 2;
  static constexpr double norm_epsilon = 1e-5;

  friend bool operator==(const MiniPpgnConfig&, const MiniPpgnConfig&) = default;
};

/// Named slice of the flat parameter vector, stored column-major (rows x cols).
struct TensorSpec {
  std::string name;
  int rows = 0;
  int cols = 0;
  std::size_t offset = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols); }
};

/// Parameters of a MiniPPGN held in one flat vector.
///
/// Tensor naming: block<k>.{m1,m2,skip}.{0,1}.{weight,bias}, block<k>.norm.{scale,offset},
/// head.{0,1}.{weight,bias}. Linear weights are (in x out).
class MiniPpgnParams {
 public:
  /// All tensors zero.
  explicit MiniPpgnParams(MiniPpgnConfig config);

  /// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights and biases; norm scale 1, offset 0.
  static MiniPpgnParams initialized(MiniPpgnConfig config, Rng& rng);

  const MiniPpgnConfig& config() const noexcept { return config_; }
  const std::vector<TensorSpec>& tensors() const noexcept { return tensors_; }
  const TensorSpec& tensor(std::string_view name) const;

  std::size_t size() const noexcept { return values_.size(); }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  Eigen::Map<Eigen::MatrixXd> matrix(const TensorSpec& spec) {
    return {values_.data() + spec.offset, spec.rows, spec.cols};
  }
  Eigen::Map<const Eigen::MatrixXd> matrix(const TensorSpec& spec) const {
    return {values_.data() + spec.offset, spec.rows, spec.cols};
  }

 private:
  MiniPpgnConfig config_;
  std::vector<TensorSpec> tensors_;
  std::vector<double> values_;
};

/// Intermediate activations kept by a forward pass for the backward pass.
struct MiniPpgnTrace;

struct MiniPpgnTraceDeleter {
  void operator()(MiniPpgnTrace* trace) const noexcept;
};
using MiniPpgnTracePtr = std::unique_ptr<MiniPpgnTrace, MiniPpgnTraceDeleter>;

/// Forward pass on one graph.
///
/// Input channels: the dense adjacency of a_t and beta_bar_t on the diagonal.
/// Each block applies two per-position MLPs, multiplies their outputs as n x n
/// matrices channel by channel, feeds [input, product] through a third MLP and
/// instance-normalizes the result. The outputs of all blocks are concatenated
/// and mapped to one logit per position by the head; logits are symmetrized as
/// (L + L^T) / 2 and returned for the upper triangle.
///
/// Throws NumericError naming the layer if a non-finite value appears.
DenoiserOutput mini_ppgn_forward(const MiniPpgnParams& params, const Graph& a_t, double beta_bar_t,
                                 MiniPpgnTracePtr* trace = nullptr);

/// Gradient of a scalar loss with respect to every parameter, given the loss
/// gradient at the upper-triangle logits. Same layout as params.values().
std::vector<double> mini_ppgn_backward(const MiniPpgnParams& params, const MiniPpgnTrace& trace,
                                       std::span<const double> dlogits);

/// Convenience overload that reruns the forward pass.
std::vector<double> mini_ppgn_backward(const MiniPpgnParams& params, const Graph& a_t, double beta_bar_t,
                                       std::span<const double> dlogits);

/// MiniPPGN conditioned on beta_bar_t of its schedule.
class PpgnDenoiser final : public Denoiser {
 public:
  PpgnDenoiser(MiniPpgnParams params, NoiseSchedule schedule)
      : params_(std::move(params)), schedule_(std::move(schedule)) {}

  const NoiseSchedule& schedule() const override { return schedule_; }
  DenoiserOutput predict(const Graph& a_t, int t) const override {
    return mini_ppgn_forward(params_, a_t, schedule_.beta_bar(t));
  }

  const MiniPpgnParams& params() const noexcept { return params_; }

 private:
  MiniPpgnParams params_;
  NoiseSchedule schedule_;
};

}  // namespace graphdiff
