#include "excursion/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace excursion {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<Vec2> parse_ring(const json& arr, const char* what) {
  if (!arr.is_array()) throw std::runtime_error(std::string(what) + " must be an array of [x,y] pairs");
  std::vector<Vec2> pts;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2) {
      throw std::runtime_error(std::string(what) + " entries must be [x,y] pairs");
    }
    pts.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return pts;
}

}  // namespace

Geometry parse_geometry(const std::string& json_text) {
  const json j = json::parse(json_text);
  if (j.contains("polygon")) {
    return Polygon2D(parse_ring(j.at("polygon"), "polygon"));
  }
  if (j.contains("composite")) {
    const json& c = j.at("composite");
    Polygon2D outer(parse_ring(c.at("outer"), "composite.outer"));
    std::vector<Disk> disks;
    if (c.contains("disks")) {
      for (const auto& d : c.at("disks")) {
        const auto& ctr = d.at("c");
        if (!ctr.is_array() || ctr.size() != 2) {
          throw std::runtime_error("composite disk center must be [x,y]");
        }
        disks.push_back({{ctr[0].get<double>(), ctr[1].get<double>()}, d.at("r").get<double>()});
      }
    }
    return CompositeRegion2D(std::move(outer), std::move(disks));
  }
  if (j.contains("vertices") && j.contains("faces")) {
    std::vector<Vec3> verts;
    for (const auto& v : j.at("vertices")) {
      if (!v.is_array() || v.size() != 3) {
        throw std::runtime_error("polyhedron vertices must be [x,y,z] triples");
      }
      verts.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
    }
    std::vector<std::vector<int>> faces;
    for (const auto& f : j.at("faces")) {
      faces.push_back(f.get<std::vector<int>>());
    }
    return Polyhedron3D(std::move(verts), std::move(faces));
  }
  throw std::runtime_error(
      "unrecognized geometry: expected 'polygon', 'composite', or 'vertices'+'faces'");
}

Geometry load_geometry(const std::string& path) { return parse_geometry(slurp(path)); }

QuadFormProblem parse_quadform(const std::string& json_text) {
  const json j = json::parse(json_text);
  const auto mat = [&](const char* key) {
    const json& m = j.at(key);
    const Eigen::Index n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto& row = m[static_cast<std::size_t>(r)];
      if (static_cast<Eigen::Index>(row.size()) != n) {
        throw std::runtime_error(std::string(key) + " must be a square matrix");
      }
      for (Eigen::Index c = 0; c < n; ++c) out(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return out;
  };
  Eigen::MatrixXd sigma = mat("sigma");
  Eigen::MatrixXd A = mat("A");
  const auto& bj = j.at("b");
  Eigen::VectorXd b(static_cast<Eigen::Index>(bj.size()));
  for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = bj[static_cast<std::size_t>(i)].get<double>();
  return QuadFormProblem(std::move(sigma), std::move(A), std::move(b), j.at("c0").get<double>());
}

QuadFormProblem load_quadform(const std::string& path) { return parse_quadform(slurp(path)); }

}  // namespace excursion
