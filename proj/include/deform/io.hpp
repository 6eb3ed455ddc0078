#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "deform/angles.hpp"
#include "deform/complex.hpp"
#include "deform/counterex.hpp"
#include "deform/layout.hpp"
#include "deform/morph.hpp"
#include "deform/sphere.hpp"
#include "deform/varopt.hpp"

namespace deform::io {

using Json = nlohmann::ordered_json;

/// Anything that can live in a realization file.
using Realization = std::variant<PlanarTriangulation, InscribedPolyhedron, TorusTriangulation>;

Json to_json(const TriComplex& t);
/// Throws Error{Parse} on malformed input, plus the complex's own errors.
TriComplex complex_from_json(const Json& j);

Json to_json(const AngleStructure& theta);
AngleStructure angles_from_json(const Json& j);

Json to_json(const TriComplex& t, const EdgeInvariant& alpha);
EdgeInvariant alpha_from_json(const TriComplex& t, const Json& j);

Json to_json(const Realization& r);
Realization realization_from_json(const Json& j);

Json to_json(const SolveResult& r);
Json to_json(const SweepReport& r);
Json to_json(const Rotation& g);

Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

struct SvgOptions {
  bool circumcircles = false;
  bool defect_colors = true;
  double size = 600.0;
};

std::string export_svg(const PlanarTriangulation& phi, const SvgOptions& options = {});
std::string export_svg(const SweepReport& report);
std::string export_obj(const InscribedPolyhedron& p);

/// "%.17g" formatting.
std::string format_double(double x);

}  // namespace deform::io
