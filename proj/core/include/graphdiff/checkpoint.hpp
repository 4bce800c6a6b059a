#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>

#include "graphdiff/training.hpp"

namespace graphdiff {

// Checkpoint layout: a text header, then raw little-endian float64 values.
//
//   graphdiff-checkpoint 1
//   config depth=<d> hidden=<h> steps=<T> schedule=<linear|cosine> loss=<vb|simple>
//   state step=<k> epoch=<e> seed=<s> best_loss=<x>
//   node_counts <n>:<count> ...
//   tensor <group>/<name> f64 <rows> <cols>
//   ...
//   end
//   <values of every tensor in header order, column-major>
//
// Groups are `param`, `adam_m` and `adam_v`, each listing every MiniPPGN tensor.

struct Checkpoint {
  TrainState state;
  ScheduleKind schedule = ScheduleKind::linear;
  int steps = 32;
  LossKind loss = LossKind::simple;
  std::uint64_t seed = 0;
  /// Training-set node count histogram, used to pick n at sampling time.
  std::map<int, int> node_counts;
};

void write_checkpoint(std::ostream& out, const Checkpoint& checkpoint);
void write_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);

/// Throws ParseError on a malformed header or truncated payload.
Checkpoint read_checkpoint(std::istream& in);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace graphdiff
