#pragma once

// Fixed-seed low-discrepancy sample points (Halton, bases 2, 3, 5).

#include <array>
#include <cstdint>
#include <vector>

#include "blmp/superfield.hpp"

namespace blmp {

struct Box {
  std::array<double, 3> lo{-3.0, -3.0, -3.0};
  std::array<double, 3> hi{3.0, 3.0, 3.0};
};

inline constexpr int kDefaultSamples = 100;

/// Seed 0 gives the plain sequence; other seeds apply a random shift modulo 1.
std::vector<Point> sample_points(const Box& box, int count = kDefaultSamples, std::uint64_t seed = 0);

/// Radical inverse of i in the given base.
double halton(std::uint64_t i, unsigned base);

}  // namespace blmp
