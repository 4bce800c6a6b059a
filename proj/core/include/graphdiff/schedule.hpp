#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace graphdiff {

enum class ScheduleKind { linear, cosine, custom };

std::string_view to_string(ScheduleKind kind) noexcept;
/// Accepts "linear" or "cosine"; throws std::invalid_argument otherwise.
ScheduleKind parse_schedule_kind(std::string_view name);

/// Per-step flip probabilities beta_t = (bb_{t-1} - bb_t) / (2 bb_{t-1} - 1), t = 1..T,
/// from cumulative flip probabilities bb_0..bb_T.
///
/// Throws std::domain_error if some bb_{t-1}, t <= T, equals 1/2 (only the final
/// entry may reach pure noise) and std::invalid_argument for fewer than two entries.
std::vector<double> beta_from_beta_bar(std::span<const double> beta_bar);

/// Cumulative flip probability after the given steps: 1/2 - 1/2 * prod(1 - 2 beta_i).
double beta_bar_from_betas(std::span<const double> betas);

/// Edge-flip noise schedule over T steps.
///
/// The cumulative flip probabilities beta_bar(0..T) are the primary
/// parameterization; the single-step flips beta(1..T) are derived from them.
/// Every schedule has beta_bar(0) = 0, non-decreasing beta_bar within [0, 1/2],
/// and no intermediate beta_bar equal to 1/2. The built-in linear and cosine
/// schedules are additionally strictly increasing and end at exactly 1/2.
class NoiseSchedule {
 public:
  static NoiseSchedule linear(int steps);
  static NoiseSchedule cosine(int steps);
  static NoiseSchedule from_beta_bar(std::vector<double> beta_bar);
  static NoiseSchedule make(ScheduleKind kind, int steps);

  ScheduleKind kind() const noexcept { return kind_; }
  int steps() const noexcept { return static_cast<int>(beta_.size()); }

  /// Cumulative flip probability, 0 <= t <= T.
  double beta_bar(int t) const;
  /// Single-step flip probability, 1 <= t <= T.
  double beta(int t) const;

  std::span<const double> beta_bars() const noexcept { return beta_bar_; }
  /// beta_1..beta_T; element 0 holds beta_1.
  std::span<const double> betas() const noexcept { return beta_; }

  /// beta_bar(T) == 1/2, so the chain ends at the Bernoulli(1/2) prior.
  bool reaches_pure_noise() const noexcept { return beta_bar_.back() == 0.5; }

  friend bool operator==(const NoiseSchedule&, const NoiseSchedule&) = default;

 private:
  NoiseSchedule(ScheduleKind kind, std::vector<double> beta_bar);

  ScheduleKind kind_;
  std::vector<double> beta_bar_;
  std::vector<double> beta_;
};

}  // namespace graphdiff
