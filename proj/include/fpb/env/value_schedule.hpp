#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpb/rng.hpp"

namespace fpb {

// Deterministic block-decreasing context schedule: the horizon splits into
// `blocks` consecutive blocks of floor(T/blocks) rounds (the last block absorbs
// any remainder) and block m plays context blocks+1-m, so contexts run from
// `blocks` down to 1. blocks == T gives the strictly decreasing schedule.
int block_context(long long t, int blocks, long long horizon);

// Per-round bidder values v_t in [0,1]. Schedules own their RNG stream — the
// iid kind never consumes auction randomness — and are rewound by reset(seed).
class ValueSchedule {
 public:
  enum class Kind { kIidUniform, kConstant, kDecreasingBlocks, kExplicit, kFile };

  static ValueSchedule iid_uniform();
  static ValueSchedule constant(double v);
  static ValueSchedule decreasing_blocks(int blocks, long long horizon);
  static ValueSchedule explicit_list(std::vector<double> values);
  static ValueSchedule from_file(const std::string& path);

  // Tokens: iid_uniform | constant:<v> | decreasing | blocks:<M> |
  // explicit:<v1,v2,...> | file:<path>. `decreasing` is blocks:<T>.
  static ValueSchedule parse(const std::string& spec, long long horizon);

  Kind kind() const { return kind_; }
  std::string spec_string() const;

  void reset(std::uint64_t seed);
  double next();  // value for rounds 1, 2, ... since the last reset

 private:
  ValueSchedule() = default;

  Kind kind_ = Kind::kIidUniform;
  double constant_ = 0.0;
  int blocks_ = 1;
  long long horizon_ = 0;
  std::vector<double> values_;
  std::string path_;
  Rng rng_;
  long long t_ = 0;
};

}  // namespace fpb
