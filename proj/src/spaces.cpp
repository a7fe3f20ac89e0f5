#include "rectstokes/spaces.hpp"

#include <string>
#include <vector>

#include "rectstokes/quadrature.hpp"

namespace rectstokes {

namespace {

// Dense per-entity lookup of the global ids of one dof kind; -1 where
// eliminated or absent.
std::vector<int> ids_by_kind(const DofMap& map, DofKind kind, int entity_count) {
  std::vector<int> ids(entity_count, -1);
  for (int g = 0; g < map.free_count; ++g)
    if (map.kinds[g] == kind) ids[map.entities[g]] = g;
  return ids;
}

bool signed_kind(DofKind kind) {
  return kind == DofKind::edge_normal_deriv_mean ||
         kind == DofKind::edge_normal_mean ||
         kind == DofKind::edge_normal_moment ||
         kind == DofKind::edge_tangential_mean;
}

} // namespace

ElementFamily space_family(Space space) {
  switch (space) {
    case Space::Wh: return ElementFamily::plate12;
    case Space::Vh: return ElementFamily::velocity12;
    case Space::Ph: return ElementFamily::pressure_p0;
    case Space::Adini: return ElementFamily::adini;
  }
  throw Error(ErrorCode::invalid_argument, "spaces: unknown space");
}

DofMap build_dofmap(const Mesh& mesh, Space space) {
  DofMap map;
  map.space = space;
  const ElementFamily family = space_family(space);
  map.local_count = dof_count(family);
  map.cell_to_global.assign(mesh.cell_count(), {});
  map.cell_signs.assign(mesh.cell_count(), {});
  for (auto& row : map.cell_to_global) row.fill(-1);
  for (auto& row : map.cell_signs) row.fill(1);

  const auto push = [&](DofKind kind, int entity) {
    map.kinds.push_back(kind);
    map.entities.push_back(entity);
    return map.free_count++;
  };

  // Global numbering is blocked by kind, entities in mesh order.
  std::vector<int> vertex_id(mesh.vertex_count(), -1);
  std::vector<int> edge_id_a(mesh.edge_count(), -1);
  std::vector<int> edge_id_b(mesh.edge_count(), -1);
  std::vector<int> edge_id_c(mesh.edge_count(), -1);

  switch (space) {
    case Space::Wh: {
      for (int v = 0; v < mesh.vertex_count(); ++v)
        if (!mesh.vertex_boundary[v]) vertex_id[v] = push(DofKind::vertex_value, v);
      for (int e = 0; e < mesh.edge_count(); ++e)
        if (!mesh.edges[e].boundary) edge_id_a[e] = push(DofKind::edge_mean, e);
      for (int e = 0; e < mesh.edge_count(); ++e)
        if (!mesh.edges[e].boundary)
          edge_id_b[e] = push(DofKind::edge_normal_deriv_mean, e);
      break;
    }
    case Space::Vh: {
      for (int e = 0; e < mesh.edge_count(); ++e)
        if (!mesh.edges[e].boundary)
          edge_id_a[e] = push(DofKind::edge_normal_mean, e);
      for (int e = 0; e < mesh.edge_count(); ++e)
        if (!mesh.edges[e].boundary)
          edge_id_b[e] = push(DofKind::edge_normal_moment, e);
      for (int e = 0; e < mesh.edge_count(); ++e)
        if (!mesh.edges[e].boundary)
          edge_id_c[e] = push(DofKind::edge_tangential_mean, e);
      break;
    }
    case Space::Ph: {
      for (int c = 0; c < mesh.cell_count(); ++c) push(DofKind::cell_mean, c);
      break;
    }
    case Space::Adini: {
      for (int v = 0; v < mesh.vertex_count(); ++v)
        if (!mesh.vertex_boundary[v]) {
          vertex_id[v] = push(DofKind::vertex_value, v);
          push(DofKind::vertex_grad_x, v);
          push(DofKind::vertex_grad_y, v);
        }
      break;
    }
  }

  const auto& table = dof_table(family);
  for (int c = 0; c < mesh.cell_count(); ++c) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      const DofDescriptor d = table[j];
      int gid = -1;
      int sign = 1;
      switch (d.kind) {
        case DofKind::vertex_value:
          gid = vertex_id[mesh.cells[c][d.entity]];
          break;
        case DofKind::vertex_grad_x:
          gid = vertex_id[mesh.cells[c][d.entity]];
          if (gid >= 0) gid += 1;
          break;
        case DofKind::vertex_grad_y:
          gid = vertex_id[mesh.cells[c][d.entity]];
          if (gid >= 0) gid += 2;
          break;
        case DofKind::edge_mean:
          gid = edge_id_a[mesh.cell_edges[c][d.entity]];
          break;
        case DofKind::edge_normal_deriv_mean:
          gid = edge_id_b[mesh.cell_edges[c][d.entity]];
          sign = Mesh::outward_sign(d.entity);
          break;
        case DofKind::edge_normal_mean:
          gid = edge_id_a[mesh.cell_edges[c][d.entity]];
          sign = Mesh::outward_sign(d.entity);
          break;
        case DofKind::edge_normal_moment:
          gid = edge_id_b[mesh.cell_edges[c][d.entity]];
          sign = Mesh::outward_sign(d.entity);
          break;
        case DofKind::edge_tangential_mean:
          gid = edge_id_c[mesh.cell_edges[c][d.entity]];
          sign = Mesh::outward_sign(d.entity);
          break;
        case DofKind::cell_mean:
          gid = c;
          break;
        default:
          throw Error(ErrorCode::invalid_argument, "spaces: unexpected dof kind");
      }
      map.cell_to_global[c][j] = gid;
      map.cell_signs[c][j] = static_cast<signed char>(sign);
    }
  }
  return map;
}

void gather_cell_coeffs(const DofMap& map, const FEField& field, int cell,
                        double* out) {
  for (int j = 0; j < map.local_count; ++j) {
    const int g = map.cell_to_global[cell][j];
    out[j] = (g < 0) ? 0.0 : map.cell_signs[cell][j] * field.coeff[g];
  }
}

FEField interpolate_scalar(const Mesh& mesh, const DofMap& map,
                           const ScalarFunction& u, int edge_m) {
  if (map.space != Space::Wh && map.space != Space::Adini)
    throw Error(ErrorCode::invalid_argument,
                "spaces: scalar interpolation needs Wh or Adini");
  if (!u.value || !u.gradient)
    throw Error(ErrorCode::invalid_argument,
                "spaces: scalar interpolation needs value and gradient");

  FEField f;
  f.map = &map;
  f.coeff.assign(map.free_count, 0.0);
  for (int g = 0; g < map.free_count; ++g) {
    switch (map.kinds[g]) {
      case DofKind::vertex_value:
        f.coeff[g] = u.value(mesh.vertices[map.entities[g]]);
        break;
      case DofKind::vertex_grad_x:
        f.coeff[g] = u.gradient(mesh.vertices[map.entities[g]]).x;
        break;
      case DofKind::vertex_grad_y:
        f.coeff[g] = u.gradient(mesh.vertices[map.entities[g]]).y;
        break;
      case DofKind::edge_mean: {
        const EdgeRule r = edge_rule(mesh, map.entities[g], edge_m);
        double acc = 0.0;
        for (int k = 0; k < r.size(); ++k)
          acc += r.w[k] * u.value({r.x[k], r.y[k]});
        f.coeff[g] = acc;
        break;
      }
      case DofKind::edge_normal_deriv_mean: {
        const int e = map.entities[g];
        const Vec2 n = mesh.edge_normal(e);
        const EdgeRule r = edge_rule(mesh, e, edge_m);
        double acc = 0.0;
        for (int k = 0; k < r.size(); ++k) {
          const Vec2 gr = u.gradient({r.x[k], r.y[k]});
          acc += r.w[k] * (gr.x * n.x + gr.y * n.y);
        }
        f.coeff[g] = acc;
        break;
      }
      default:
        throw Error(ErrorCode::invalid_argument, "spaces: unexpected dof kind");
    }
  }
  return f;
}

FEField interpolate_velocity(const Mesh& mesh, const DofMap& map,
                             const VectorFunction& v, int edge_m) {
  if (map.space != Space::Vh)
    throw Error(ErrorCode::invalid_argument,
                "spaces: velocity interpolation needs Vh");
  if (!v.value)
    throw Error(ErrorCode::invalid_argument,
                "spaces: velocity interpolation needs a value callback");

  FEField f;
  f.map = &map;
  f.coeff.assign(map.free_count, 0.0);
  for (int g = 0; g < map.free_count; ++g) {
    const int e = map.entities[g];
    const Vec2 n = mesh.edge_normal(e);
    const Vec2 t = mesh.edge_tangent(e);
    const Vec2 a = mesh.vertices[mesh.edges[e].v0];
    const Vec2 b = mesh.vertices[mesh.edges[e].v1];
    const double len = mesh.edge_length(e);
    const EdgeRule r = edge_rule(mesh, e, edge_m);
    double acc = 0.0;
    for (int k = 0; k < r.size(); ++k) {
      const Vec2 w = v.value({r.x[k], r.y[k]});
      switch (map.kinds[g]) {
        case DofKind::edge_normal_mean:
          acc += r.w[k] * (w.x * n.x + w.y * n.y);
          break;
        case DofKind::edge_normal_moment: {
          // xi is the scaled arc coordinate, -1 at v0 and +1 at v1.
          const double xi =
              (2.0 * (r.x[k] - a.x + r.y[k] - a.y) - (b.x - a.x + b.y - a.y)) /
              len;
          acc += r.w[k] * (w.x * n.x + w.y * n.y) * xi;
          break;
        }
        case DofKind::edge_tangential_mean:
          acc += r.w[k] * (w.x * t.x + w.y * t.y);
          break;
        default:
          throw Error(ErrorCode::invalid_argument, "spaces: unexpected dof kind");
      }
    }
    f.coeff[g] = acc;
  }
  return f;
}

FEField project_pressure(const Mesh& mesh, const DofMap& map,
                         const std::function<double(Vec2)>& q, int cell_m) {
  if (map.space != Space::Ph)
    throw Error(ErrorCode::invalid_argument,
                "spaces: pressure projection needs Ph");
  if (!q)
    throw Error(ErrorCode::invalid_argument,
                "spaces: pressure projection needs a value callback");

  FEField f;
  f.map = &map;
  f.coeff.assign(map.free_count, 0.0);
  const double area_cell = mesh.hx * mesh.hy;
  double mean = 0.0;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const CellRule r = cell_rule(mesh, c, cell_m, cell_m);
    double acc = 0.0;
    for (int k = 0; k < r.size(); ++k) acc += r.w[k] * q({r.x[k], r.y[k]});
    f.coeff[c] = acc / area_cell;
    mean += acc;
  }
  mean /= mesh.domain.width() * mesh.domain.height();
  for (double& v : f.coeff) v -= mean;
  return f;
}

Eigen::SparseMatrix<double> curl_dof_matrix(const Mesh& mesh, const DofMap& wh,
                                            const DofMap& vh) {
  if (wh.space != Space::Wh || vh.space != Space::Vh)
    throw Error(ErrorCode::invalid_argument, "spaces: curl map needs Wh, Vh");

  const auto w_vertex = ids_by_kind(wh, DofKind::vertex_value, mesh.vertex_count());
  const auto w_mean = ids_by_kind(wh, DofKind::edge_mean, mesh.edge_count());
  const auto w_nderiv =
      ids_by_kind(wh, DofKind::edge_normal_deriv_mean, mesh.edge_count());
  const auto v_flux = ids_by_kind(vh, DofKind::edge_normal_mean, mesh.edge_count());
  const auto v_moment =
      ids_by_kind(vh, DofKind::edge_normal_moment, mesh.edge_count());
  const auto v_tang =
      ids_by_kind(vh, DofKind::edge_tangential_mean, mesh.edge_count());

  std::vector<Eigen::Triplet<double>> trip;
  const auto add = [&](int row, int col, double v) {
    if (row >= 0 && col >= 0) trip.emplace_back(row, col, v);
  };

  for (int e = 0; e < mesh.edge_count(); ++e) {
    if (mesh.edges[e].boundary) continue;
    const int p0 = w_vertex[mesh.edges[e].v0];
    const int p1 = w_vertex[mesh.edges[e].v1];
    const double len = mesh.edge_length(e);
    if (mesh.edges[e].axis == EdgeAxis::horizontal) {
      // t_E = (-1,0): the tangential walk runs v1 -> v0.
      add(v_flux[e], p0, 1.0);
      add(v_flux[e], p1, -1.0);
      add(v_moment[e], p0, -1.0);
      add(v_moment[e], p1, -1.0);
      add(v_moment[e], w_mean[e], 2.0 / len);
    } else {
      add(v_flux[e], p0, -1.0);
      add(v_flux[e], p1, 1.0);
      add(v_moment[e], p0, 1.0);
      add(v_moment[e], p1, 1.0);
      add(v_moment[e], w_mean[e], -2.0 / len);
    }
    add(v_tang[e], w_nderiv[e], -1.0);
  }

  Eigen::SparseMatrix<double> C(vh.free_count, wh.free_count);
  C.setFromTriplets(trip.begin(), trip.end());
  return C;
}

Eigen::SparseMatrix<double> divergence_dof_matrix(const Mesh& mesh,
                                                  const DofMap& vh) {
  if (vh.space != Space::Vh)
    throw Error(ErrorCode::invalid_argument, "spaces: divergence map needs Vh");
  const auto& table = dof_table(ElementFamily::velocity12);
  const double inv_area = 1.0 / (mesh.hx * mesh.hy);

  std::vector<Eigen::Triplet<double>> trip;
  for (int c = 0; c < mesh.cell_count(); ++c)
    for (std::size_t j = 0; j < table.size(); ++j) {
      if (table[j].kind != DofKind::edge_normal_mean) continue;
      const int g = vh.cell_to_global[c][j];
      if (g >= 0) trip.emplace_back(c, g, vh.cell_signs[c][j] * inv_area);
    }

  Eigen::SparseMatrix<double> D(mesh.cell_count(), vh.free_count);
  D.setFromTriplets(trip.begin(), trip.end());
  return D;
}

FEField curl_field(const Mesh& mesh, const DofMap& wh, const FEField& w,
                   const DofMap& vh) {
  const Eigen::SparseMatrix<double> C = curl_dof_matrix(mesh, wh, vh);
  const Eigen::Map<const Eigen::VectorXd> wv(w.coeff.data(),
                                             static_cast<int>(w.coeff.size()));
  const Eigen::VectorXd cv = C * wv;
  FEField f;
  f.map = &vh;
  f.coeff.assign(cv.data(), cv.data() + cv.size());
  return f;
}

Vec2 eval_field(const Mesh& mesh, const FEField& field, int cell, Vec2 p,
                int ax, int ay) {
  const DofMap& map = *field.map;
  const ElementBasis basis = nodal_basis(mesh, cell, space_family(map.space));
  const CellGeometry g = cell_geometry(mesh, cell);
  std::vector<double> local(map.local_count);
  gather_cell_coeffs(map, field, cell, local.data());
  const Eigen::MatrixXd vals = eval_basis(basis, g, p, ax, ay);
  Vec2 out;
  for (int j = 0; j < map.local_count; ++j) {
    out.x += local[j] * vals(0, j);
    if (vals.rows() > 1) out.y += local[j] * vals(1, j);
  }
  return out;
}

} // namespace rectstokes
