#pragma once

#include <string>
#include <variant>

#include "excursion/geom2d.hpp"
#include "excursion/geom3d.hpp"
#include "excursion/quadform.hpp"

namespace excursion {

using Geometry = std::variant<Polygon2D, CompositeRegion2D, Polyhedron3D>;

/// Accepted schemas:
///   {"polygon": [[x,y], ...]}
///   {"composite": {"outer": [[x,y], ...], "disks": [{"c":[x,y], "r": r}, ...]}}
///   {"vertices": [[x,y,z], ...], "faces": [[i,j,k,...], ...]}   (0-based)
Geometry parse_geometry(const std::string& json_text);
Geometry load_geometry(const std::string& path);

/// {"sigma": [[...]], "A": [[...]], "b": [...], "c0": x}
QuadFormProblem parse_quadform(const std::string& json_text);
QuadFormProblem load_quadform(const std::string& path);

}  // namespace excursion
