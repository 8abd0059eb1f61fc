#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "blmp/cli.hpp"

using namespace blmp;

namespace {

struct Inputs {
  std::string config, family, params, grid, fix, out, suite;
  double tol = 0.0;
  std::uint64_t seed = 0;
  int points = kDefaultSamples;
  bool with_points = false;
};

void add_common(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--config", in.config, "JSON file");
  cmd->add_option("--params", in.params, "JSON parameters");
  cmd->add_option("--grid", in.grid, "x=a:b:n,y=a:b:n");
  cmd->add_option("--fix", in.fix, "t=2");
  cmd->add_option("--tol", in.tol, "tolerance override");
  cmd->add_option("--seed", in.seed, "sample point seed");
  cmd->add_option("--points", in.points, "sample points")->check(CLI::PositiveNumber);
  cmd->add_option("--out", in.out, "output path (default stdout)");
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DescriptorError("cannot read '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw DescriptorError(path + ": " + e.what());
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw DescriptorError(e.what());
  }
}

RunConfig make_config(const Inputs& in, bool need_descriptors) {
  RunConfig cfg;
  cfg.grid = parse_grid(in.grid, in.fix);
  cfg.grid_given = !in.grid.empty() || !in.fix.empty();
  if (in.tol > 0.0) cfg.tol = in.tol;
  cfg.seed = in.seed;
  cfg.points = in.points;
  cfg.with_points = in.with_points;
  if (!need_descriptors) return cfg;
  if (!in.suite.empty()) {
    if (in.suite != "classical") throw DescriptorError("unknown suite '" + in.suite + "'");
    cfg.descriptors = classical_suite();
  }
  if (!in.config.empty()) {
    auto more = parse_descriptor_list(read_json_file(in.config));
    cfg.descriptors.insert(cfg.descriptors.end(), more.begin(), more.end());
  }
  if (!in.family.empty()) {
    Json d{{"family", in.family}, {"params", in.params.empty() ? Json::object() : parse_json(in.params)}};
    cfg.descriptors.push_back(parse_descriptor(d));
  } else if (!in.params.empty()) {
    throw DescriptorError("--params needs --family");
  }
  if (in.suite.empty() && in.config.empty() && in.family.empty())
    throw DescriptorError("give --config, --family or --suite");
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BLMP solution families and residual checks"};
  app.require_subcommand(1);
  Inputs in;

  auto* gen = app.add_subcommand("generate", "CSV grid of a solution");
  add_common(gen, in);
  gen->add_option("--family", in.family, "family tag");

  auto* ver = app.add_subcommand("verify", "JSON residual reports");
  add_common(ver, in);
  ver->add_option("--family", in.family, "family tag");
  ver->add_option("--suite", in.suite, "built-in suite: classical");
  ver->add_flag("--with-points", in.with_points, "include sample points in reports");

  std::string kind;
  std::vector<std::string> orders;
  auto* bell = app.add_subcommand("bell", "render Bell polynomials");
  bell->add_option("kind", kind, "Y, B or P")->required();
  bell->add_option("orders", orders, "3x, x,y,t, 2x;(0,1), ...")->required();

  auto* back = app.add_subcommand("backlund", "four-relation check of a seed and candidate pair");
  add_common(back, in);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*bell) return cmd_bell(kind, orders, std::cout, std::cerr);

    RunConfig cfg;
    BacklundRun run;
    if (*back) {
      cfg = make_config(in, false);
      if (in.config.empty() == in.params.empty()) throw DescriptorError("give exactly one of --config and --params");
      run = parse_backlund(in.config.empty() ? parse_json(in.params) : read_json_file(in.config));
    } else {
      cfg = make_config(in, true);
    }

    std::ofstream file;
    if (!in.out.empty()) {
      file.open(in.out);
      if (!file) throw DescriptorError("cannot write '" + in.out + "'");
    }
    std::ostream& out = in.out.empty() ? std::cout : file;
    if (*gen) return cmd_generate(cfg, out, std::cerr);
    if (*ver) return cmd_verify(cfg, out, std::cerr);
    return cmd_backlund(run, cfg, out, std::cerr);
  } catch (const DescriptorError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }
}
