#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "shg2d/cli.hpp"
#include "shg2d/errors.hpp"

int main(int argc, char** argv) {
  using namespace shg2d::cli;

  CLI::App app{"Quasi-static second-harmonic generation from 2D particles"};
  app.require_subcommand(1, 1);

  RunRequest req;
  std::string out_path;
  int grid_n = 0;
  std::string format;

  for (const char* name : {"analytic", "solve", "compare", "scan", "symmetry"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", req.config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_path, "Output file (stdout when omitted)");
    sub->add_option("--grid-n", grid_n, "Boundary nodes, overrides the config");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  req.command = *parse_subcommand(app.get_subcommands().front()->get_name());
  if (!out_path.empty()) req.out = out_path;
  if (grid_n != 0) req.grid_n = grid_n;
  if (!format.empty()) req.format = parse_format(format);
  try {
    req.threads = threads_from_env();
  } catch (const shg2d::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return run(req, std::cout, std::cerr);
}
