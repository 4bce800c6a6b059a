#include "graphdiff/schedule.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace graphdiff {

std::string_view to_string(ScheduleKind kind) noexcept {
  switch (kind) {
    case ScheduleKind::linear:
      return "linear";
    case ScheduleKind::cosine:
      return "cosine";
    case ScheduleKind::custom:
      return "custom";
  }
  return "custom";
}

ScheduleKind parse_schedule_kind(std::string_view name) {
  if (name == "linear") return ScheduleKind::linear;
  if (name == "cosine") return ScheduleKind::cosine;
  throw std::invalid_argument("unknown schedule '" + std::string(name) + "' (expected linear or cosine)");
}

std::vector<double> beta_from_beta_bar(std::span<const double> beta_bar) {
  if (beta_bar.size() < 2) throw std::invalid_argument("beta_bar needs at least two entries");
  std::vector<double> beta(beta_bar.size() - 1);
  for (std::size_t t = 1; t < beta_bar.size(); ++t) {
    const double prev = beta_bar[t - 1];
    const double denom = 2.0 * prev - 1.0;
    if (denom == 0.0) {
      throw std::domain_error("beta_bar reaches 1/2 at intermediate step " + std::to_string(t - 1) +
                              "; the step after it is singular");
    }
    beta[t - 1] = (prev - beta_bar[t]) / denom;
  }
  return beta;
}

double beta_bar_from_betas(std::span<const double> betas) {
  double keep = 1.0;
  for (double b : betas) keep *= 1.0 - 2.0 * b;
  return 0.5 - 0.5 * keep;
}

NoiseSchedule::NoiseSchedule(ScheduleKind kind, std::vector<double> beta_bar) : kind_(kind), beta_bar_(std::move(beta_bar)) {
  if (beta_bar_.size() < 2) throw std::invalid_argument("schedule needs T >= 1");
  if (beta_bar_.front() != 0.0) throw std::invalid_argument("beta_bar(0) must be 0");
  for (std::size_t t = 0; t < beta_bar_.size(); ++t) {
    const double v = beta_bar_[t];
    if (!(v >= 0.0 && v <= 0.5)) {
      throw std::invalid_argument("beta_bar(" + std::to_string(t) + ") = " + std::to_string(v) + " outside [0, 1/2]");
    }
    if (t > 0 && v < beta_bar_[t - 1]) {
      throw std::invalid_argument("beta_bar decreases at step " + std::to_string(t));
    }
  }
  beta_ = beta_from_beta_bar(beta_bar_);
}

NoiseSchedule NoiseSchedule::linear(int steps) {
  if (steps < 1) throw std::invalid_argument("linear schedule needs T >= 1");
  std::vector<double> bb(static_cast<std::size_t>(steps) + 1);
  for (int t = 0; t <= steps; ++t) bb[static_cast<std::size_t>(t)] = 0.5 * static_cast<double>(t) / steps;
  return NoiseSchedule(ScheduleKind::linear, std::move(bb));
}

NoiseSchedule NoiseSchedule::cosine(int steps) {
  if (steps < 1) throw std::invalid_argument("cosine schedule needs T >= 1");
  auto ramp = [steps](int t) {
    const double c = std::cos(std::numbers::pi * static_cast<double>(t) / (2.0 * steps));
    return 1.0 - c * c;
  };
  const double top = ramp(steps);
  std::vector<double> bb(static_cast<std::size_t>(steps) + 1);
  for (int t = 1; t < steps; ++t) bb[static_cast<std::size_t>(t)] = 0.5 * ramp(t) / top;
  bb.front() = 0.0;
  bb.back() = 0.5;
  return NoiseSchedule(ScheduleKind::cosine, std::move(bb));
}

NoiseSchedule NoiseSchedule::from_beta_bar(std::vector<double> beta_bar) {
  return NoiseSchedule(ScheduleKind::custom, std::move(beta_bar));
}

NoiseSchedule NoiseSchedule::make(ScheduleKind kind, int steps) {
  switch (kind) {
    case ScheduleKind::linear:
      return linear(steps);
    case ScheduleKind::cosine:
      return cosine(steps);
    case ScheduleKind::custom:
      break;
  }
  throw std::invalid_argument("custom schedules are built from explicit beta_bar values");
}

double NoiseSchedule::beta_bar(int t) const {
  if (t < 0 || t > steps()) throw std::out_of_range("beta_bar: t=" + std::to_string(t) + " outside [0, T]");
  return beta_bar_[static_cast<std::size_t>(t)];
}

double NoiseSchedule::beta(int t) const {
  if (t < 1 || t > steps()) throw std::out_of_range("beta: t=" + std::to_string(t) + " outside [1, T]");
  return beta_[static_cast<std::size_t>(t - 1)];
}

}  // namespace graphdiff
