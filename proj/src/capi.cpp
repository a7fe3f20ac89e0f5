#include "rectstokes.h"

#include <cstring>
#include <string>

#include "rectstokes/study.hpp"

struct rs_study {
  rectstokes::Study impl;
};

namespace {

thread_local std::string g_last_error;

rs_status status_from(const rectstokes::Error& e) {
  switch (e.code()) {
    case rectstokes::ErrorCode::invalid_argument:
      return RS_ERR_INVALID_ARGUMENT;
    case rectstokes::ErrorCode::solver_failure:
      return RS_ERR_SOLVER;
    case rectstokes::ErrorCode::verification_failure:
      return RS_ERR_VERIFICATION;
    case rectstokes::ErrorCode::element_failure:
      return RS_ERR_INTERNAL;
  }
  return RS_ERR_INTERNAL;
}

rs_status config_from(const rs_options* opts, rectstokes::RunConfig& config) {
  if (!opts) {
    g_last_error = "null options";
    return RS_ERR_INVALID_ARGUMENT;
  }
  config.domain = {opts->x_min, opts->x_max, opts->y_min, opts->y_max};
  if (opts->level_count > 0) {
    if (!opts->levels) {
      g_last_error = "null level list with nonzero count";
      return RS_ERR_INVALID_ARGUMENT;
    }
    config.levels.assign(opts->levels, opts->levels + opts->level_count);
  }
  switch (opts->element) {
    case RS_ELEMENT_PLATE12:
      config.element = rectstokes::ElementFamily::plate12;
      break;
    case RS_ELEMENT_ADINI:
      config.element = rectstokes::ElementFamily::adini;
      break;
    default:
      g_last_error = "unknown element";
      return RS_ERR_INVALID_ARGUMENT;
  }
  config.tol = opts->tol;
  config.quad_assembly = opts->quad_assembly;
  config.quad_error = opts->quad_error;
  return RS_OK;
}

template <class Runner>
rs_status run_study(const rs_options* opts, rs_study** out, Runner runner) {
  if (!out) {
    g_last_error = "null output handle";
    return RS_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  rectstokes::RunConfig config;
  const rs_status st = config_from(opts, config);
  if (st != RS_OK) return st;
  try {
    auto study = new rs_study{runner(config)};
    *out = study;
    return RS_OK;
  } catch (const rectstokes::Error& e) {
    g_last_error = e.what();
    return status_from(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RS_ERR_INTERNAL;
  }
}

} // namespace

extern "C" {

void rs_options_init(rs_options* opts) {
  if (!opts) return;
  opts->x_min = 0.0;
  opts->x_max = 2.0;
  opts->y_min = 0.0;
  opts->y_max = 1.0;
  opts->levels = nullptr;
  opts->level_count = 0;
  opts->element = RS_ELEMENT_PLATE12;
  opts->tol = 1e-10;
  opts->quad_assembly = 5;
  opts->quad_error = 10;
}

rs_status rs_run_biharmonic(const rs_options* opts, rs_study** out) {
  return run_study(opts, out, rectstokes::run_biharmonic_study);
}

rs_status rs_run_stokes(const rs_options* opts, rs_study** out) {
  return run_study(opts, out, rectstokes::run_stokes_study);
}

rs_status rs_run_complex_check(const rs_options* opts, rs_study** out) {
  return run_study(opts, out, rectstokes::run_complex_study);
}

void rs_study_destroy(rs_study* study) { delete study; }

int rs_study_row_count(const rs_study* study) {
  return study ? static_cast<int>(study->impl.rows.size()) : 0;
}

int rs_study_column_count(const rs_study* study) {
  return study ? static_cast<int>(study->impl.columns.size()) : 0;
}

const char* rs_study_column_name(const rs_study* study, int col) {
  if (!study || col < 0 || col >= rs_study_column_count(study)) return nullptr;
  return study->impl.columns[col].name.c_str();
}

int rs_study_value(const rs_study* study, int row, int col, double* out) {
  if (!study || !out) return 0;
  if (row < 0 || row >= rs_study_row_count(study)) return 0;
  if (col < 0 || col >= rs_study_column_count(study)) return 0;
  const auto& cell = study->impl.rows[row][col];
  if (!cell) return 0;
  *out = *cell;
  return 1;
}

int rs_study_passed(const rs_study* study) {
  return study && study->impl.passed ? 1 : 0;
}

size_t rs_study_render(const rs_study* study, rs_format format, char* buf,
                       size_t cap) {
  if (!study) return 0;
  std::string text;
  try {
    text = (format == RS_FORMAT_TABLE) ? rectstokes::render_table(study->impl)
                                       : rectstokes::render_csv(study->impl);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return 0;
  }
  if (buf && cap > 0) {
    const size_t n = (text.size() < cap - 1) ? text.size() : cap - 1;
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return text.size();
}

const char* rs_status_message(rs_status status) {
  switch (status) {
    case RS_OK: return "ok";
    case RS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RS_ERR_SOLVER: return "solver failure";
    case RS_ERR_VERIFICATION: return "verification failure";
    case RS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rs_last_error(void) { return g_last_error.c_str(); }

const char* rs_version(void) { return "0.1.0"; }

} // extern "C"
