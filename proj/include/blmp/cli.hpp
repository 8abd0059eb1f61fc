#pragma once

// Command implementations behind the blmp executable. Each returns the
// process exit code: 0 pass, 1 verification failure, 2 parse error,
// 3 degenerate grid (more than half of the points skipped).

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blmp/bell.hpp"
#include "blmp/descriptor.hpp"

namespace blmp {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDegenerate = 3;

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;  // 1: fixed at lo
  bool swept() const { return n > 1; }
};

/// Axes x, y, t in that order.
struct GridSpec {
  std::array<AxisRange, 3> axes;
};

/// "x=a:b:n,y=a:b:n" sweeps and "t=2" fixes. Axes not mentioned are fixed at
/// 0; with no sweep at all, x = -5:5:101. Throws DescriptorError.
GridSpec parse_grid(const std::string& grid, const std::string& fix = "");

struct RunConfig {
  std::vector<Descriptor> descriptors;
  GridSpec grid;
  bool grid_given = false;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  int points = kDefaultSamples;
  bool with_points = false;
};

/// A single descriptor object, an array of them, or {"descriptors": [...]}.
std::vector<Descriptor> parse_descriptor_list(const Json& j);

/// Header "x,y,t,u_re,u_im" for classical families and "x,y,t,phi[<monomial>]_re,..."
/// for super families. Rows run with x fastest, then y, then t; values use 17
/// significant digits and skipped points are written as nan.
int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// One JSON report per line.
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// "3x", "x,y,t", "2x,t", "0", optionally followed by ";(kx,ky)".
BellOrder parse_bell_order(const std::string& s);

/// kind: Y (Bell), B (binary Bell) or P.
int cmd_bell(const std::string& kind, const std::vector<std::string>& orders, std::ostream& out, std::ostream& err);

int cmd_backlund(const BacklundRun& run, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace blmp
