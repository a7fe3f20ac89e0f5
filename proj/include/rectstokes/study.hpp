#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rectstokes/analysis.hpp"

namespace rectstokes {

/// Shared configuration of a refinement study on n x n meshes.
struct RunConfig {
  Domain domain{};
  std::vector<int> levels{4, 8, 16, 32, 64};
  ElementFamily element = ElementFamily::plate12; // plate12 or adini
  double tol = 1e-10;
  int quad_assembly = 5;
  int quad_error = 10;
};

void validate_config(const RunConfig& config);

enum class ColumnKind { integer, real };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::real;
};

/// Rectangular result set; empty cells mark undefined values (rates on
/// the first level).  Runs are deterministic functions of the config.
struct Study {
  std::vector<Column> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  bool passed = true;
};

/// Columns: n, dofs, then (error, rate) pairs for the broken H2, H1, L2
/// distances of the plate solution.
Study run_biharmonic_study(const RunConfig& config);

/// Columns: n, dofs, (error, rate) pairs for the velocity broken H1 and
/// L2 distances, the pressure L2 distance, and the postprocessed
/// pressure L2 distance, then the maximal cell divergence.
Study run_stokes_study(const RunConfig& config);

/// One row per level with space dimensions, rank/nullity checks of the
/// dof-level divergence and curl maps, composition and commutation
/// defects, and a pass flag; `passed` aggregates all rows.
Study run_complex_study(const RunConfig& config);

/// Scientific notation with 6 significant digits; integers plain; empty
/// cells stay empty.  Parsing then rendering reproduces the bytes.
std::string render_csv(const Study& study);
Study parse_csv(const std::string& text);

/// Fixed-width aligned view of the same rows (rates shown to 2 decimals).
std::string render_table(const Study& study);

} // namespace rectstokes
