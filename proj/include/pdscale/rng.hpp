// pdscale - scaled primal-dual solvers for linearly constrained convex programs
// Copyright 2026 pdscale contributors
// Licensed under Apache 2.0
#pragma once

#include <cstdint>
#include <random>

namespace pdscale {

// Deterministic random source for experiment generation.
//
// Engine: std::mt19937_64, whose output sequence is pinned bit-for-bit by the
// C++ standard, seeded through one SplitMix64 step to decorrelate small seeds.
// Distributions are hand-rolled on top of explicit 53-bit uniforms because the
// standard library distribution adapters are implementation-defined and would
// break cross-platform reproducibility.
//
// Stream splitting: stream(id) derives an independent child generator with
// seed = splitmix64(root_seed XOR (0x9E3779B97F4A7C15 * (id + 1))).  Child
// streams are used so that, e.g., adding noise draws never shifts the matrix
// draws of the same instance.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static std::uint64_t splitmix64(std::uint64_t z);

  // Independent child generator for substream `id` (documented above).
  Rng stream(std::uint64_t id) const;

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53 random bits.
  double uniform();

  // Standard normal via Box-Muller; the paired draw is cached.
  double normal();

  // Uniform integer on [0, bound); bound >= 1.  Fixed-point multiply, no
  // rejection loop, so consumption of engine output is data-independent.
  std::uint64_t integer(std::uint64_t bound);

 private:
  std::uint64_t root_seed_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pdscale
