#include "blmp/sampling.hpp"

#include <cmath>
#include <random>

namespace blmp {

double halton(std::uint64_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

std::vector<Point> sample_points(const Box& box, int count, std::uint64_t seed) {
  std::array<double, 3> shift{0.0, 0.0, 0.0};
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& s : shift) s = u(rng);
  }
  static constexpr unsigned bases[3] = {2, 3, 5};
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int n = 1; n <= count; ++n) {
    std::array<double, 3> c{};
    for (int d = 0; d < 3; ++d) {
      double v = halton(static_cast<std::uint64_t>(n), bases[d]) + shift[d];
      v -= std::floor(v);
      c[d] = box.lo[d] + v * (box.hi[d] - box.lo[d]);
    }
    pts.push_back({c[0], c[1], c[2]});
  }
  return pts;
}

}  // namespace blmp
