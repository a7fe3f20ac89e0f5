// Command line front end over the C library interface.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rectstokes.h"

namespace {

struct CliOptions {
  std::vector<int> levels;
  std::string element = "plate12";
  std::string format = "csv";
  std::string out;
  double tol = 1e-10;
  int quad_assembly = 5;
  int quad_error = 10;
};

void add_common(CLI::App* cmd, CliOptions& o, bool with_element) {
  cmd->add_option("--levels", o.levels,
                  "Mesh subdivisions per level, e.g. 4,8,16,32,64")
      ->delimiter(',');
  if (with_element)
    cmd->add_option("--element", o.element, "Plate element")
        ->check(CLI::IsMember({"plate12", "adini"}));
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "table"}));
  cmd->add_option("--out", o.out, "Write output to a file instead of stdout");
  cmd->add_option("--tol", o.tol, "Solver residual tolerance");
  cmd->add_option("--quad-assembly", o.quad_assembly,
                  "Gauss points per axis for the bilinear forms");
  cmd->add_option("--quad-error", o.quad_error,
                  "Gauss points per axis for loads and error norms");
}

int exit_code(rs_status st) {
  switch (st) {
    case RS_OK: return 0;
    case RS_ERR_INVALID_ARGUMENT: return 1;
    case RS_ERR_SOLVER: return 2;
    case RS_ERR_VERIFICATION: return 3;
    case RS_ERR_INTERNAL: return 2;
  }
  return 2;
}

int run(const CliOptions& o,
        rs_status (*runner)(const rs_options*, rs_study**),
        bool check_passed) {
  rs_options opts;
  rs_options_init(&opts);
  if (!o.levels.empty()) {
    opts.levels = o.levels.data();
    opts.level_count = static_cast<int>(o.levels.size());
  }
  opts.element = (o.element == "adini") ? RS_ELEMENT_ADINI : RS_ELEMENT_PLATE12;
  opts.tol = o.tol;
  opts.quad_assembly = o.quad_assembly;
  opts.quad_error = o.quad_error;

  rs_study* study = nullptr;
  const rs_status st = runner(&opts, &study);
  if (st != RS_OK) {
    std::fprintf(stderr, "error: %s: %s\n", rs_status_message(st),
                 rs_last_error());
    return exit_code(st);
  }

  const rs_format fmt = (o.format == "table") ? RS_FORMAT_TABLE : RS_FORMAT_CSV;
  const size_t len = rs_study_render(study, fmt, nullptr, 0);
  std::string text(len + 1, '\0');
  rs_study_render(study, fmt, text.data(), text.size());
  text.resize(len);

  int rc = 0;
  if (check_passed && !rs_study_passed(study)) rc = exit_code(RS_ERR_VERIFICATION);
  rs_study_destroy(study);

  if (!o.out.empty()) {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      std::fprintf(stderr, "error: cannot open '%s' for writing\n",
                   o.out.c_str());
      return 1;
    }
    file << text;
  } else {
    std::cout << text;
  }
  return rc;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonconforming plate/Stokes refinement studies on uniform "
               "rectangular meshes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rs_version());

  CliOptions bih, sto, cpx;
  CLI::App* c_bih = app.add_subcommand(
      "biharmonic", "Clamped plate convergence study");
  add_common(c_bih, bih, true);
  CLI::App* c_sto = app.add_subcommand(
      "stokes", "Stokes convergence study with pressure postprocessing");
  add_common(c_sto, sto, false);
  CLI::App* c_cpx = app.add_subcommand(
      "complex-check", "Structural checks of the discrete complex");
  add_common(c_cpx, cpx, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (c_bih->parsed()) return run(bih, rs_run_biharmonic, false);
  if (c_sto->parsed()) return run(sto, rs_run_stokes, false);
  return run(cpx, rs_run_complex_check, true);
}
