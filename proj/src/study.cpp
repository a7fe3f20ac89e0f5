#include "rectstokes/study.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace rectstokes {

namespace {

std::string format_cell(const Column& col, const std::optional<double>& v,
                        bool table) {
  if (!v) return "";
  char buf[48];
  if (col.kind == ColumnKind::integer)
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(*v)));
  else if (table && col.name.rfind("rate", 0) == 0)
    std::snprintf(buf, sizeof buf, "%.2f", *v);
  else if (table)
    std::snprintf(buf, sizeof buf, "%.3e", *v);
  else
    std::snprintf(buf, sizeof buf, "%.5e", *v);
  return buf;
}

std::optional<double> rate(const std::optional<double>& prev_err, double err,
                           double prev_h, double h) {
  if (!prev_err || !(*prev_err > 0.0) || !(err > 0.0)) return std::nullopt;
  return std::log(*prev_err / err) / std::log(prev_h / h);
}

} // namespace

void validate_config(const RunConfig& config) {
  if (!(config.domain.x_max > config.domain.x_min) ||
      !(config.domain.y_max > config.domain.y_min))
    throw Error(ErrorCode::invalid_argument, "study: degenerate domain");
  if (config.levels.empty())
    throw Error(ErrorCode::invalid_argument, "study: no refinement levels");
  int prev = 0;
  for (int n : config.levels) {
    if (n < 1)
      throw Error(ErrorCode::invalid_argument, "study: level must be positive");
    if (n <= prev)
      throw Error(ErrorCode::invalid_argument,
                  "study: levels must be strictly increasing");
    prev = n;
  }
  if (config.element != ElementFamily::plate12 &&
      config.element != ElementFamily::adini)
    throw Error(ErrorCode::invalid_argument,
                "study: element must be plate12 or adini");
  if (!(config.tol > 0.0))
    throw Error(ErrorCode::invalid_argument, "study: tolerance must be positive");
  if (config.quad_assembly < 1 || config.quad_assembly > 20 ||
      config.quad_error < 1 || config.quad_error > 20)
    throw Error(ErrorCode::invalid_argument,
                "study: quadrature orders must lie in [1,20]");
}

Study run_biharmonic_study(const RunConfig& config) {
  validate_config(config);
  const ScalarCase exact = make_plate_case(config.domain);
  const Space space =
      config.element == ElementFamily::adini ? Space::Adini : Space::Wh;

  Study s;
  s.columns = {{"n", ColumnKind::integer},      {"dofs", ColumnKind::integer},
               {"err_h2", ColumnKind::real},    {"rate_h2", ColumnKind::real},
               {"err_h1", ColumnKind::real},    {"rate_h1", ColumnKind::real},
               {"err_l2", ColumnKind::real},    {"rate_l2", ColumnKind::real}};

  std::optional<double> p2, p1, p0;
  double prev_h = 0.0;
  for (int n : config.levels) {
    const Mesh mesh = build_uniform_mesh(config.domain, n, n);
    const DofMap map = build_dofmap(mesh, space);
    const FEField u = solve_biharmonic(mesh, map, exact.load, nullptr,
                                       config.tol, config.quad_assembly,
                                       config.quad_error);
    const double e2 = broken_error(mesh, u, exact, 2, config.quad_error);
    const double e1 = broken_error(mesh, u, exact, 1, config.quad_error);
    const double e0 = broken_error(mesh, u, exact, 0, config.quad_error);
    s.rows.push_back({double(n), double(map.free_count),
                      e2, rate(p2, e2, prev_h, mesh.h),
                      e1, rate(p1, e1, prev_h, mesh.h),
                      e0, rate(p0, e0, prev_h, mesh.h)});
    p2 = e2;
    p1 = e1;
    p0 = e0;
    prev_h = mesh.h;
  }
  return s;
}

Study run_stokes_study(const RunConfig& config) {
  validate_config(config);
  const StokesCase exact = make_stokes_case(config.domain);

  Study s;
  s.columns = {{"n", ColumnKind::integer},
               {"dofs", ColumnKind::integer},
               {"err_h1_u", ColumnKind::real},
               {"rate_h1_u", ColumnKind::real},
               {"err_l2_u", ColumnKind::real},
               {"rate_l2_u", ColumnKind::real},
               {"err_l2_p", ColumnKind::real},
               {"rate_l2_p", ColumnKind::real},
               {"err_l2_pstar", ColumnKind::real},
               {"rate_l2_pstar", ColumnKind::real},
               {"div_residual", ColumnKind::real}};

  std::optional<double> p1, p0, pp, ps;
  double prev_h = 0.0;
  for (int n : config.levels) {
    const Mesh mesh = build_uniform_mesh(config.domain, n, n);
    const DofMap vh = build_dofmap(mesh, Space::Vh);
    const DofMap ph = build_dofmap(mesh, Space::Ph);
    const StokesSolution sol =
        solve_stokes(mesh, vh, ph, exact.load, config.tol,
                     config.quad_assembly, config.quad_error);
    const double e1 = broken_error(mesh, sol.velocity, exact, 1, config.quad_error);
    const double e0 = broken_error(mesh, sol.velocity, exact, 0, config.quad_error);
    const double ep = pressure_error(mesh, sol.pressure, exact, config.quad_error);
    const P1Field pstar = postprocess_pressure(mesh, sol.velocity, sol.pressure,
                                               exact.load, config.quad_error);
    const double es = pressure_error(mesh, pstar, exact, config.quad_error);
    const double div = divergence_residual(mesh, sol.velocity);
    s.rows.push_back({double(n), double(vh.free_count + ph.free_count),
                      e1, rate(p1, e1, prev_h, mesh.h),
                      e0, rate(p0, e0, prev_h, mesh.h),
                      ep, rate(pp, ep, prev_h, mesh.h),
                      es, rate(ps, es, prev_h, mesh.h),
                      div});
    p1 = e1;
    p0 = e0;
    pp = ep;
    ps = es;
    prev_h = mesh.h;
  }
  return s;
}

Study run_complex_study(const RunConfig& config) {
  validate_config(config);

  Study s;
  s.columns = {{"n", ColumnKind::integer},
               {"dim_wh", ColumnKind::integer},
               {"dim_vh", ColumnKind::integer},
               {"dim_ph", ColumnKind::integer},
               {"dim_identity", ColumnKind::integer},
               {"div_rank", ColumnKind::integer},
               {"div_rank_expected", ColumnKind::integer},
               {"div_nullity", ColumnKind::integer},
               {"curl_nullity", ColumnKind::integer},
               {"divcurl_defect", ColumnKind::real},
               {"commute_div_defect", ColumnKind::real},
               {"commute_curl_defect", ColumnKind::real},
               {"pass", ColumnKind::integer}};

  for (int n : config.levels) {
    const Mesh mesh = build_uniform_mesh(config.domain, n, n);
    const ComplexReport r = verify_complex(mesh, config.tol, config.quad_error);
    const bool ok = r.passed();
    s.passed = s.passed && ok;
    s.rows.push_back({double(n), double(r.dim_wh), double(r.dim_vh),
                      double(r.dim_ph), double(r.dim_identity_ok ? 1 : 0),
                      double(r.div_rank), double(r.div_rank_expected),
                      double(r.div_nullity), double(r.curl_nullity),
                      r.divcurl_defect, r.commute_div_defect,
                      r.commute_curl_defect, double(ok ? 1 : 0)});
  }
  return s;
}

std::string render_csv(const Study& study) {
  std::string out;
  for (std::size_t c = 0; c < study.columns.size(); ++c) {
    if (c) out += ',';
    out += study.columns[c].name;
  }
  out += '\n';
  for (const auto& row : study.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_cell(study.columns[c], row[c], false);
    }
    out += '\n';
  }
  return out;
}

std::string render_table(const Study& study) {
  const std::size_t ncol = study.columns.size();
  std::vector<std::vector<std::string>> cells;
  cells.push_back({});
  for (const Column& col : study.columns) cells.back().push_back(col.name);
  for (const auto& row : study.rows) {
    cells.push_back({});
    for (std::size_t c = 0; c < ncol; ++c)
      cells.back().push_back(format_cell(study.columns[c], row[c], true));
  }

  std::vector<std::size_t> width(ncol, 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < ncol; ++c)
      width[c] = std::max(width[c], row[c].size());

  std::string out;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < ncol; ++c) {
      if (c) out += "  ";
      out.append(width[c] - row[c].size(), ' ');
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

Study parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> current;
  std::string token;
  for (const char ch : text) {
    if (ch == ',') {
      current.push_back(token);
      token.clear();
    } else if (ch == '\n') {
      current.push_back(token);
      token.clear();
      lines.push_back(current);
      current.clear();
    } else {
      token += ch;
    }
  }
  if (!token.empty() || !current.empty()) {
    current.push_back(token);
    lines.push_back(current);
  }
  if (lines.empty())
    throw Error(ErrorCode::invalid_argument, "study: empty csv");

  Study s;
  for (const std::string& name : lines[0])
    s.columns.push_back({name, ColumnKind::integer});

  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (lines[r].size() != s.columns.size())
      throw Error(ErrorCode::invalid_argument, "study: ragged csv row");
    std::vector<std::optional<double>> row;
    for (std::size_t c = 0; c < lines[r].size(); ++c) {
      const std::string& cell = lines[r][c];
      if (cell.empty()) {
        row.push_back(std::nullopt);
        continue;
      }
      if (cell.find_first_of(".eE") != std::string::npos)
        s.columns[c].kind = ColumnKind::real;
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0')
        throw Error(ErrorCode::invalid_argument,
                    "study: unparsable csv cell '" + cell + "'");
      row.push_back(v);
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

} // namespace rectstokes
