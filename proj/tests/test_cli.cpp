// Black-box checks of the command line tool; the binary path arrives as
// argv[1] so the test stays independent of the build layout.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-cli>\n";
    return 2;
  }
  const std::string cli = std::string("'") + argv[1] + "'";

  const RunResult bih = run(cli + " biharmonic --levels 2,4");
  check(bih.status == 0, "biharmonic exits 0");
  check(starts_with(bih.out, "n,dofs,err_h2,rate_h2,err_h1,rate_h1,err_l2,rate_l2\n"),
        "biharmonic csv header");
  check(bih.out.find("\n4,57,") != std::string::npos, "second level row");

  const RunResult again = run(cli + " biharmonic --levels 2,4");
  check(again.status == 0 && again.out == bih.out, "byte-identical reruns");

  const RunResult table = run(cli + " biharmonic --levels 2,4 --format table");
  check(table.status == 0, "table format exits 0");
  check(table.out != bih.out && table.out.find("err_h2") != std::string::npos,
        "table format differs but carries the columns");

  const std::string tmp =
      "/tmp/rectstokes_cli_" + std::to_string(getpid()) + ".csv";
  const RunResult to_file =
      run(cli + " biharmonic --levels 2,4 --out " + tmp);
  check(to_file.status == 0 && to_file.out.empty(), "--out silences stdout");
  {
    std::ifstream in(tmp, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    check(ss.str() == bih.out, "--out writes the stdout bytes");
  }
  std::remove(tmp.c_str());

  const RunResult adini = run(cli + " biharmonic --levels 2 --element adini");
  check(adini.status == 0 && adini.out.find("\n2,3,") != std::string::npos,
        "adini element row");

  const RunResult stokes = run(cli + " stokes --levels 2");
  check(stokes.status == 0, "stokes exits 0");
  check(starts_with(stokes.out, "n,dofs,err_h1_u"), "stokes csv header");

  const RunResult cpx = run(cli + " complex-check --levels 1,2");
  check(cpx.status == 0, "complex-check exits 0 when all levels pass");
  check(cpx.out.find("pass") != std::string::npos, "pass column present");

  const RunResult version = run(cli + " --version");
  check(version.status == 0 && version.out.find("0.1.0") != std::string::npos,
        "--version");
  check(run(cli + " --help").status == 0, "--help exits 0");

  check(run(cli).status == 1, "missing subcommand exits 1");
  check(run(cli + " frobnicate").status == 1, "unknown subcommand exits 1");
  check(run(cli + " biharmonic --element bogus").status == 1,
        "unknown element exits 1");
  check(run(cli + " biharmonic --levels 4,2").status == 1,
        "decreasing levels exit 1");
  check(run(cli + " stokes --levels 2 --quad-error 99").status == 1,
        "out-of-range quadrature exits 1");
  check(run(cli + " biharmonic --levels 2 --tol 1e-30").status == 2,
        "unreachable tolerance exits 2");

  if (g_failures == 0) {
    std::cout << "cli_tests: all checks passed\n";
    return 0;
  }
  std::cerr << "cli_tests: " << g_failures << " failures\n";
  return 1;
}
