#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "blmp/cli.hpp"

using namespace blmp;

namespace {

std::vector<Json> every_family() {
  return {
      {{"family", "rational_similarity"}, {"params", {{"n", 3}, {"q", {{"kind", "sin"}, {"a", 0.5}}}}}},
      {{"family", "n_soliton"}, {"params", {{"kappa", {0.5, {1.0, 0.2}}}}}},
      {{"family", "negaton2"}, {"params", {{"gamma", 1.5}}}},
      {{"family", "positon2"}, {"params", Json::object()}},
      {{"family", "complexiton"}, {"params", {{"eta", {1.0, 1.0}}}}},
      {{"family", "complexiton_displayed"}, {"params", Json::object()}},
      {{"family", "rational_soliton"}, {"params", {{"gamma", 0.7}, {"q", "identity"}}}},
      {{"family", "rational_positon"}, {"params", {{"m", {{"kind", "poly"}, {"coeffs", {0.0, 1.0}}}}}}},
      {{"family", "traveling_wave"}, {"params", {{"a", 0.9}, {"alpha", 0.2}, {"m", {{"kind", "exp"}, {"a", 0.3}}}}}},
      {{"family", "kink"}, {"params", {{"a", 0.8}}}},
      {{"family", "constant"}, {"params", {{"value", 2.5}}}},
      {{"family", "super_soliton"}, {"params", {{"kappa", {0.7, 1.3}}, {"rho", {0.9, -0.4}}}}},
      {{"family", "superpartner"},
       {"params", {{"d1", 2}, {"d2", 1}, {"beta", {0.4, 1.1, -0.6}}, {"m", {{"kind", "poly"}, {"coeffs", {0.2, 0.5, -0.3}}}}}}},
  };
}

Descriptor desc(const Json& j) { return parse_descriptor(j); }

RunConfig one(const Json& j, const std::string& grid, const std::string& fix = "") {
  RunConfig c;
  c.descriptors = {desc(j)};
  c.grid = parse_grid(grid, fix);
  c.grid_given = true;
  return c;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& s) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("descriptors round-trip through their canonical form") {
  REQUIRE(every_family().size() == descriptor_families().size());
  for (const Json& j : every_family()) {
    Descriptor d = desc(j);
    INFO(d.family);
    Json out = to_json(d);
    CHECK(parse_descriptor(out) == d);
    CHECK(parse_descriptor(Json::parse(out.dump())) == d);
    CHECK(to_json(parse_descriptor(out)) == out);
  }
}

TEST_CASE("descriptor defaults and values") {
  auto d = desc({{"family", "positon2"}});
  CHECK(d.params["gamma"] == 1.0);
  CHECK(d.params["q"] == Json{{"kind", "identity"}});
  CHECK(d.params["m"] == Json{{"kind", "zero"}});
  CHECK(complex_from_json(Json::array({1.0, -2.0})) == Complex(1.0, -2.0));
  CHECK(complex_to_json(Complex(3.0, 0.0)) == 3.0);
  auto f = function_from_json(Json{{"kind", "poly"}, {"coeffs", {1.0, 0.0, 2.0}}});
  CHECK(f(2.0) == Complex(9.0));
  CHECK(function_to_json(f) == Json{{"kind", "poly"}, {"coeffs", {1.0, 0.0, 2.0}}});
}

TEST_CASE("descriptor parse errors") {
  for (const char* bad : {R"({"family":"nope"})", R"({"family":"n_soliton"})", R"({"family":"n_soliton","params":{"kappa":[1],"x":1}})",
                          R"({"family":"rational_similarity","params":{"n":1.5}})", R"({"family":"kink","params":{"a":"one"}})",
                          R"({"family":"kink","params":{"m":{"kind":"cosh"}}})", R"({"family":"kink","extra":1})",
                          R"({"family":"superpartner","params":{"beta":[1,2]}})", R"([1])"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_descriptor_list(Json::parse(bad)), DescriptorError);
  }
  CHECK(parse_descriptor_list(Json::array()).empty());
  CHECK(parse_descriptor_list(Json{{"descriptors", Json::array()}}).empty());
}

TEST_CASE("built families match the direct constructors") {
  auto pts = sample_points({}, 10, 3);
  auto built = build(desc({{"family", "n_soliton"}, {"params", {{"kappa", {0.5, 1.0}}}}}));
  auto direct = n_soliton({{0.5, 1.0}});
  for (const Point& p : pts) CHECK(built.field->u(p, {1, 1, 1}).value() == direct.u(p, {1, 1, 1}).value());

  auto sp = build(desc(every_family().back()));
  REQUIRE(sp.partner);
  CHECK(sp.partner->beta2 == Complex(1.1));
  CHECK(sp.gens->names() == std::vector<std::string>{"theta", "zeta"});
}

TEST_CASE("classical suite passes") {
  auto suite = classical_suite();
  CHECK(suite.size() >= 10);
  for (const Descriptor& d : suite) {
    for (const Check& c : verify(build(d))) {
      INFO(d.family << " " << c.report.max_rel);
      CHECK(c.passed());
      CHECK(c.report.evaluated >= 95);
    }
  }
}

TEST_CASE("verify reports and exit codes") {
  RunConfig cfg;
  std::ostringstream out, err;
  CHECK(cmd_verify(cfg, out, err) == kExitPass);
  CHECK(out.str().empty());

  cfg.descriptors = {desc({{"family", "super_soliton"},
                           {"params", {{"kappa", {0.7}}, {"rho", {0.9}}, {"omega", {-0.343 + 0.1}}, {"enforce_dispersion", false}}}})};
  CHECK(cmd_verify(cfg, out, err) == kExitFail);
  std::istringstream lines(out.str());
  std::string line;
  double worst = 0.0;
  while (std::getline(lines, line)) {
    Json j = Json::parse(line);
    CHECK_FALSE(j["passed"].get<bool>());
    worst = std::max(worst, j["max_rel"].get<double>());
    // the descriptor in a report parses back to the one that produced it
    CHECK(parse_descriptor(j["descriptor"]) == cfg.descriptors[0]);
  }
  CHECK(worst > 1e-3);

  // dispersion enforced: construction fails, reported as a failure
  cfg.descriptors = {desc({{"family", "super_soliton"}, {"params", {{"kappa", {0.7}}, {"rho", {0.9}}, {"omega", {-0.243}}}}})};
  std::ostringstream o2;
  CHECK(cmd_verify(cfg, o2, err) == kExitFail);
  CHECK(Json::parse(o2.str()).contains("error"));

  cfg.descriptors = {desc(every_family()[11]), desc(every_family()[12])};
  std::ostringstream o3;
  CHECK(cmd_verify(cfg, o3, err) == kExitPass);
}

TEST_CASE("report JSON schema") {
  auto d = desc({{"family", "kink"}});
  auto checks = verify(build(d), {Box{}, 20, 1, 1e-9});
  REQUIRE(checks.size() == 1);
  Json j = check_to_json(checks[0], d, true);
  for (const char* k : {"equation", "max_abs", "max_rel", "evaluated", "skipped", "components", "descriptor", "check",
                        "tolerance", "min_evaluated", "passed", "points"})
    CHECK(j.contains(k));
  CHECK(j["equation"] == "blmp");
  CHECK(j["points"].size() == 20);
  CHECK(j["min_evaluated"] == 19);
  CHECK_FALSE(report_to_json(checks[0].report).contains("points"));
}

TEST_CASE("grid parsing") {
  auto g = parse_grid("x=-1:1:5,y=0:2:3", "t=2");
  CHECK(g.axes[0].n == 5);
  CHECK(g.axes[1].hi == 2.0);
  CHECK(g.axes[2].lo == 2.0);
  CHECK_FALSE(g.axes[2].swept());
  auto d = parse_grid("", "");
  CHECK(d.axes[0].n == 101);
  CHECK(d.axes[1].n == 1);
  for (const char* bad : {"x=0:1:1", "x=0:1", "q=0:1:3", "x=0:1:3,x=0:1:3", "x=a:1:3", "x=0:inf:3", "x=0:1:2.5"})
    CHECK_THROWS_AS(parse_grid(bad), DescriptorError);
  CHECK_THROWS_AS(parse_grid("x=0:1:3", "x=2"), DescriptorError);
}

TEST_CASE("generate writes a deterministic CSV") {
  auto cfg = one({{"family", "n_soliton"}, {"params", {{"kappa", {0.5, 1.0}}}}}, "x=-10:10:7,y=-10:10:5", "t=20");
  std::ostringstream a, b, err;
  CHECK(cmd_generate(cfg, a, err) == kExitPass);
  CHECK(cmd_generate(cfg, b, err) == kExitPass);
  CHECK(a.str() == b.str());
  auto rows = csv_rows(a.str());
  REQUIRE(rows.size() == 1 + 35);
  CHECK(rows[0] == std::vector<std::string>{"x", "y", "t", "u_re", "u_im"});
  CHECK(rows[1][0] == "-10");
  CHECK(rows[2][0] == "-6.6666666666666661");  // 17 significant digits
  CHECK(rows[8][1] == "-5");  // x runs fastest
  auto direct = n_soliton({{0.5, 1.0}});
  for (std::size_t r = 1; r < rows.size(); ++r) {
    Point p{std::stod(rows[r][0]), std::stod(rows[r][1]), std::stod(rows[r][2])};
    CHECK(p.t == 20.0);
    // 17 significant digits reproduce the double exactly
    CHECK(std::stod(rows[r][3]) == direct.u(p, {0, 0, 0}).value().real());
  }
}

TEST_CASE("generate examples") {
  std::ostringstream err;
  std::ostringstream c;
  CHECK(cmd_generate(one({{"family", "constant"}, {"params", {{"value", 2.5}}}}, "x=0:1:3,y=0:1:2"), c, err) == kExitPass);
  for (const auto& row : csv_rows(c.str()))
    if (row[0] != "x") CHECK((row[3] == "2.5" && row[4] == "0"));

  std::ostringstream cx;
  CHECK(cmd_generate(one({{"family", "complexiton"}, {"params", {{"eta", {1.0, 1.0}}}}}, "x=-3:3:40,y=-3:3:5", "t=2"), cx, err) ==
        kExitPass);
  double im = 0.0;
  for (const auto& row : csv_rows(cx.str()))
    if (row[0] != "x") im = std::max(im, std::abs(std::stod(row[4])));
  CHECK(im <= 1e-10);

  std::ostringstream sp;
  CHECK(cmd_generate(one(every_family()[11], "x=0:1:2"), sp, err) == kExitPass);
  CHECK(csv_rows(sp.str())[0].size() == 3 + 2 * 8);
  CHECK(csv_rows(sp.str())[0][5] == "phi[theta]_re");

  std::ostringstream sing;
  CHECK(cmd_generate(one({{"family", "rational_similarity"}, {"params", {{"n", 2}}}}, "x=0:0:4", "y=0,t=0"), sing, err) ==
        kExitDegenerate);
  CHECK(csv_rows(sing.str())[1][3] == "nan");
}

TEST_CASE("Bell orders and rendering") {
  auto o = parse_bell_order("2x,y,t;(0,1)");
  CHECK((o.lx == 2 && o.ly == 1 && o.lt == 1 && o.kx == 0 && o.ky == 1));
  CHECK(parse_bell_order("0").total() == 0);
  for (const char* bad : {"3q", "x;(2,0)", "", "-1x", "x;(0)"}) CHECK_THROWS_AS(parse_bell_order(bad), DescriptorError);

  std::ostringstream out, err;
  CHECK(cmd_bell("Y", {"3x", "0"}, out, err) == kExitPass);
  CHECK(cmd_bell("P", {"x", "3x;(0,1)"}, out, err) == kExitPass);
  CHECK(out.str() ==
        "Y[3x;(0,0)] = A_xxx + 3 A_x A_xx + A_x^3\nY[0;(0,0)] = 1\nP[x;(0,0)] = 0\n"
        "P[3x;(0,1)] = D_y w_xxx + 3 w_xx D_y w_x\n");
  CHECK(cmd_bell("Z", {"x"}, out, err) == kExitParse);
  CHECK(cmd_bell("Y", {"7x"}, out, err) == kExitFail);
}

TEST_CASE("Backlund run descriptors") {
  Json j = Json::parse(R"({"seed":{"tau":{"constant":1},"mu":{"constant":1}},
    "candidate":{"tau":{"constant":1.5,"terms":[{"coeff":0.7,"kappa":0.8,"rho":-0.45,"odd":"zeta"}]},
                 "mu":{"constant":1.5,"terms":[{"coeff":-0.7,"kappa":0.8,"rho":-0.45,"odd":"zeta"}]}},
    "alpha":1,"beta":-0.8})");
  BacklundRun run = parse_backlund(j);
  CHECK(to_json(parse_backlund(to_json(run))) == to_json(run));
  CHECK(backlund_generators(run)->names() == std::vector<std::string>{"theta", "gamma", "zeta"});

  RunConfig cfg;
  cfg.grid = parse_grid("x=-1:1:2,y=-1:1:2,t=-1:1:2");
  cfg.grid_given = true;
  cfg.points = 40;
  std::ostringstream out, err;
  CHECK(cmd_backlund(run, cfg, out, err) == kExitPass);
  Json r = Json::parse(out.str());
  CHECK(r["relations"]["x"]["max_rel"].get<double>() <= 1e-12);
  CHECK(r["grading_ok"].get<bool>());

  run.beta = 0.0;
  std::ostringstream o2;
  CHECK(cmd_backlund(run, cfg, o2, err) == kExitFail);

  for (const char* bad : {R"({"seed":{}})", R"({"seed":{"tau":{},"mu":{}},"candidate":{"tau":{"terms":[{"odd":"theta"}]},"mu":{}}})",
                          R"({"seed":{"tau":{},"mu":{}},"candidate":{"tau":{},"mu":{}},"delta":1})"})
    CHECK_THROWS_AS(parse_backlund(Json::parse(bad)), DescriptorError);
}
