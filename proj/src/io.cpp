#include "steerkit/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "steerkit/error.hpp"

namespace steerkit::io {

namespace {

Json matrix_part(const ComplexMatrix& m, bool imag) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(imag ? m(r, c).imag() : m(r, c).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json complex_json(const ComplexMatrix& m) { return {{"re", matrix_part(m, false)}, {"im", matrix_part(m, true)}}; }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw InvalidArgument(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

ComplexMatrix read_matrix(const Json& re, const Json& im, int dim) {
  ComplexMatrix m(dim, dim);
  if (!re.is_array() || !im.is_array() || re.size() != static_cast<std::size_t>(dim) ||
      im.size() != static_cast<std::size_t>(dim)) {
    throw InvalidArgument("matrix must have " + std::to_string(dim) + " rows");
  }
  for (int r = 0; r < dim; ++r) {
    const Json& rr = re[static_cast<std::size_t>(r)];
    const Json& ir = im[static_cast<std::size_t>(r)];
    if (!rr.is_array() || !ir.is_array() || rr.size() != static_cast<std::size_t>(dim) ||
        ir.size() != static_cast<std::size_t>(dim)) {
      throw InvalidArgument("matrix must have " + std::to_string(dim) + " columns");
    }
    for (int c = 0; c < dim; ++c) {
      const Json& a = rr[static_cast<std::size_t>(c)];
      const Json& b = ir[static_cast<std::size_t>(c)];
      if (!a.is_number() || !b.is_number()) throw InvalidArgument("matrix entries must be numbers");
      m(r, c) = Complex(a.get<double>(), b.get<double>());
    }
  }
  return m;
}

int read_count(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InvalidArgument(std::string("'") + name + "' must be a positive integer");
  }
  return static_cast<int>(v.get<long long>());
}

}  // namespace

Json to_json(const Assemblage& a) {
  Json members = Json::array();
  for (int x = 0; x < a.n_inputs(); ++x) {
    Json row = Json::array();
    for (int o = 0; o < a.n_outcomes(); ++o) row.push_back(complex_json(a.member(x, o).matrix()));
    members.push_back(std::move(row));
  }
  return {{"n_inputs", a.n_inputs()},
          {"n_outcomes", a.n_outcomes()},
          {"input_weights", a.input_weights()},
          {"members", std::move(members)}};
}

Assemblage assemblage_from_json(const Json& j, Normalization norm) {
  const int n_x = read_count(j, "n_inputs");
  const int n_a = read_count(j, "n_outcomes");
  std::vector<double> weights;
  if (j.contains("input_weights")) {
    const Json& w = j.at("input_weights");
    if (!w.is_array()) throw InvalidArgument("'input_weights' must be an array");
    for (const auto& v : w) {
      if (!v.is_number()) throw InvalidArgument("'input_weights' entries must be numbers");
      weights.push_back(v.get<double>());
    }
  }
  const Json& members = field(j, "members");
  if (!members.is_array() || members.size() != static_cast<std::size_t>(n_x)) {
    throw InvalidArgument("'members' must list n_inputs rows");
  }
  std::vector<std::vector<HermitianMatrix>> out;
  for (const auto& row : members) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n_a)) {
      throw InvalidArgument("each 'members' row must list n_outcomes matrices");
    }
    std::vector<HermitianMatrix> r;
    for (const auto& m : row) r.emplace_back(read_matrix(field(m, "re"), field(m, "im"), 2));
    out.push_back(std::move(r));
  }
  return Assemblage(std::move(out), std::move(weights), norm);
}

Json to_json(const TwoQubitState& rho) {
  Json j = complex_json(rho.matrix().matrix());
  j["dim"] = 4;
  return j;
}

TwoQubitState state_from_json(const Json& j) {
  const Json& dim = field(j, "dim");
  if (!dim.is_number_integer() || dim.get<long long>() != 4) {
    throw InvalidArgument("state file: 'dim' must be 4");
  }
  return TwoQubitState(HermitianMatrix(read_matrix(field(j, "re"), field(j, "im"), 4)));
}

TwoQubitState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open state file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("state file '" + path + "' is not valid JSON: " + e.what());
  }
  try {
    return state_from_json(j);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument("state file '" + path + "': " + e.what());
  }
}

Json to_json(const Ellipsoid& e) {
  Json orientation = Json::array();
  for (int r = 0; r < 3; ++r) {
    orientation.push_back({e.orientation(r, 0), e.orientation(r, 1), e.orientation(r, 2)});
  }
  return {{"center", {e.center.x, e.center.y, e.center.z}},
          {"semiaxes", {e.semiaxes[0], e.semiaxes[1], e.semiaxes[2]}},
          {"orientation", std::move(orientation)},
          {"volume", ellipsoid_volume(e)}};
}

Json witness_summary(const VolumeWitness& w, std::uint64_t seed, int n_samples) {
  return {{"seed", seed},
          {"n_samples", n_samples},
          {"v_lhs", w.v_lhs},
          {"v_qse", w.v_qse},
          {"delta", w.delta},
          {"convergence_gap", w.convergence_gap}};
}

void write_point_cloud(std::ostream& out, const PointCloud& cloud) {
  char buf[128];
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const auto& p = cloud.points[i];
    std::snprintf(buf, sizeof buf, "%d %.17g %.17g %.17g\n", cloud.triad_ids[i], p.x, p.y, p.z);
    out << buf;
  }
}

}  // namespace steerkit::io
