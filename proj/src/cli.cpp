#include "blmp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

namespace blmp {

namespace {

[[noreturn]] void fail(const std::string& what) { throw DescriptorError(what); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

double number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail("bad number '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) fail("bad number '" + s + "'");
  return v;
}

int axis_index(const std::string& name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "t") return 2;
  fail("unknown axis '" + name + "'");
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Box box_of(const RunConfig& cfg) {
  Box b;
  if (!cfg.grid_given) return b;
  for (int i = 0; i < 3; ++i) {
    const AxisRange& a = cfg.grid.axes[static_cast<std::size_t>(i)];
    b.lo[static_cast<std::size_t>(i)] = a.lo;
    b.hi[static_cast<std::size_t>(i)] = a.swept() ? a.hi : a.lo;
  }
  return b;
}

double coordinate(const AxisRange& a, int i) { return a.swept() ? a.lo + (a.hi - a.lo) * i / (a.n - 1) : a.lo; }

}  // namespace

GridSpec parse_grid(const std::string& grid, const std::string& fix) {
  GridSpec g;
  bool any = false;
  std::array<bool, 3> seen{};
  auto mark = [&](int i) {
    if (seen[static_cast<std::size_t>(i)]) fail("axis given twice");
    seen[static_cast<std::size_t>(i)] = true;
  };
  for (const std::string& item : split(grid, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) fail("grid entry '" + item + "' needs axis=a:b:n");
    int i = axis_index(item.substr(0, eq));
    auto parts = split(item.substr(eq + 1), ':');
    if (parts.size() != 3) fail("grid entry '" + item + "' needs axis=a:b:n");
    AxisRange a{number(parts[0]), number(parts[1]), 0};
    double n = number(parts[2]);
    if (n != std::floor(n) || n < 2) fail("grid resolution must be an integer >= 2");
    a.n = static_cast<int>(n);
    mark(i);
    g.axes[static_cast<std::size_t>(i)] = a;
    any = true;
  }
  for (const std::string& item : split(fix, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) fail("fix entry '" + item + "' needs axis=value");
    int i = axis_index(item.substr(0, eq));
    mark(i);
    double v = number(item.substr(eq + 1));
    g.axes[static_cast<std::size_t>(i)] = {v, v, 1};
  }
  if (!any && !seen[0]) g.axes[0] = {-5.0, 5.0, 101};
  return g;
}

std::vector<Descriptor> parse_descriptor_list(const Json& j) {
  std::vector<Descriptor> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(parse_descriptor(e));
  } else if (j.is_object() && j.contains("descriptors")) {
    if (j.size() != 1 || !j["descriptors"].is_array()) fail("'descriptors' must be the only key and an array");
    for (const auto& e : j["descriptors"]) out.push_back(parse_descriptor(e));
  } else {
    out.push_back(parse_descriptor(j));
  }
  return out;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.descriptors.size() != 1) {
    err << "generate needs exactly one descriptor\n";
    return kExitParse;
  }
  BuiltSolution s;
  try {
    s = build(cfg.descriptors[0]);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitFail;
  }

  std::vector<std::string> cols;
  std::vector<Mask> masks;
  if (s.field) {
    cols = {"u"};
  } else {
    for (Mask m = 0; m < (Mask{1} << s.gens->size()); ++m) {
      masks.push_back(m);
      cols.push_back("phi[" + s.gens->label(m) + "]");
    }
  }

  const auto& ax = cfg.grid.axes;
  const int nx = ax[0].n, ny = ax[1].n, nt = ax[2].n;
  const int rows = ny * nt;  // one row of the output block per (y, t)
  std::vector<std::vector<Complex>> values(static_cast<std::size_t>(rows) * nx);
  std::vector<int> skipped(static_cast<std::size_t>(rows), 0);

  auto work = [&](int first, int stride) {
    ScopedDivisionFloor guard(kSingularFloor);
    for (int r = first; r < rows; r += stride) {
      const int iy = r % ny, it = r / ny;
      for (int ix = 0; ix < nx; ++ix) {
        Point p{coordinate(ax[0], ix), coordinate(ax[1], iy), coordinate(ax[2], it)};
        auto& v = values[static_cast<std::size_t>(r) * nx + ix];
        try {
          if (s.field) {
            v = {s.field->u(p, {0, 0, 0}).value()};
          } else {
            GrassmannJet g = s.phi(p, {0, 0, 0}).value();
            for (Mask m : masks) v.push_back(g.component(m) ? g.component(m)->value() : Complex(0.0));
          }
        } catch (const SingularPoint&) {
          ++skipped[static_cast<std::size_t>(r)];
        } catch (const DivisionNearSingularity&) {
          ++skipped[static_cast<std::size_t>(r)];
        } catch (const DegenerateWronskian&) {
          ++skipped[static_cast<std::size_t>(r)];
        }
      }
    }
  };
  const int threads = std::max(1, std::min<int>(rows, static_cast<int>(std::thread::hardware_concurrency())));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(work, i, threads);
  work(0, threads);
  for (auto& t : pool) t.join();

  out << "x,y,t";
  for (const auto& c : cols) out << "," << c << "_re," << c << "_im";
  out << "\n";
  int total_skipped = 0;
  for (int r = 0; r < rows; ++r) {
    total_skipped += skipped[static_cast<std::size_t>(r)];
    for (int ix = 0; ix < nx; ++ix) {
      const auto& v = values[static_cast<std::size_t>(r) * nx + ix];
      out << fmt(coordinate(ax[0], ix)) << "," << fmt(coordinate(ax[1], r % ny)) << "," << fmt(coordinate(ax[2], r / ny));
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (v.empty()) {
          out << ",nan,nan";
        } else {
          out << "," << fmt(v[c].real()) << "," << fmt(v[c].imag());
        }
      }
      out << "\n";
    }
  }
  const int total = rows * nx;
  if (2 * total_skipped > total) {
    err << total_skipped << " of " << total << " points skipped\n";
    return kExitDegenerate;
  }
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  VerifyOptions o;
  o.box = box_of(cfg);
  o.count = cfg.points;
  o.seed = cfg.seed;
  o.tol = cfg.tol;
  bool ok = true;
  for (const Descriptor& d : cfg.descriptors) {
    std::vector<Check> checks;
    try {
      checks = verify(build(d), o);
    } catch (const Error& e) {
      out << Json{{"descriptor", to_json(d)}, {"error", e.what()}, {"passed", false}}.dump() << "\n";
      err << e.what() << "\n";
      ok = false;
      continue;
    }
    for (const Check& c : checks) {
      out << check_to_json(c, d, cfg.with_points).dump() << "\n";
      ok = ok && c.passed();
    }
  }
  return ok ? kExitPass : kExitFail;
}

BellOrder parse_bell_order(const std::string& s) {
  BellOrder o;
  std::string body = s, odd;
  if (auto semi = s.find(';'); semi != std::string::npos) {
    body = s.substr(0, semi);
    odd = s.substr(semi + 1);
  }
  if (body != "0") {
    auto parts = split(body, ',');
    if (parts.empty()) fail("empty Bell order");
    for (const std::string& p : parts) {
      const char axis = p.back();
      const std::string count = p.substr(0, p.size() - 1);
      int n = 1;
      if (!count.empty()) {
        double v = number(count);
        if (v != std::floor(v) || v < 1) fail("bad Bell order '" + p + "'");
        n = static_cast<int>(v);
      }
      int* slot = axis == 'x' ? &o.lx : axis == 'y' ? &o.ly : axis == 't' ? &o.lt : nullptr;
      if (!slot) fail("bad Bell order '" + p + "'");
      *slot += n;
    }
  }
  if (!odd.empty()) {
    if (odd.front() == '(' && odd.back() == ')') odd = odd.substr(1, odd.size() - 2);
    auto k = split(odd, ',');
    if (k.size() != 2 || (k[0] != "0" && k[0] != "1") || (k[1] != "0" && k[1] != "1"))
      fail("odd orders must be (kx,ky) with entries 0 or 1");
    o.kx = k[0] == "1";
    o.ky = k[1] == "1";
  }
  return o;
}

int cmd_bell(const std::string& kind, const std::vector<std::string>& orders, std::ostream& out, std::ostream& err) {
  if (kind != "Y" && kind != "B" && kind != "P") {
    err << "kind must be Y, B or P\n";
    return kExitParse;
  }
  std::vector<BellOrder> parsed;
  try {
    for (const auto& s : orders) parsed.push_back(parse_bell_order(s));
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitParse;
  }
  try {
    for (const BellOrder& o : parsed) {
      BellPolynomial p = kind == "P" ? bell_p_polynomial(o) : bell_generate(o);
      if (kind == "B") p = bell_binary(p);
      out << render(kind[0], o, p) << "\n";
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitFail;
  }
  return kExitPass;
}

int cmd_backlund(const BacklundRun& run, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto pts = sample_points(box_of(cfg), cfg.points, cfg.seed);
  const double tol = cfg.tol.value_or(1e-9);
  try {
    PropositionReport r = run_backlund(run, pts, tol);
    Json j = proposition_to_json(r);
    j["run"] = to_json(run);
    j["tolerance"] = tol;
    out << j.dump() << "\n";
    return r.relations_hold && r.grading_ok && r.implication_holds() ? kExitPass : kExitFail;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace blmp
