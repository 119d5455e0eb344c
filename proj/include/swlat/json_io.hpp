#pragma once

#include <swlat/basic_classes.hpp>
#include <swlat/surface.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace swlat {

using Json = nlohmann::json;

/// Parse a JSON document; malformed text raises SchemaError.
Json parse_json_text(const std::string& text);

/// Serialize with a trailing newline; `pretty` indents by two spaces.
std::string dump_json(const Json& j, bool pretty);

/// "p" for integers, "p/q" otherwise (always reduced, q > 0).
std::string rational_to_string(const Rat& r);

/// Accepts a JSON integer or a "p/q" / "p" string. Zero or negative
/// denominators and malformed text raise SchemaError.
Rat parse_rational(const Json& j);

Json int_to_json(const Int& v);
Int parse_int(const Json& j);

/// Integer array.
Json class_vector_to_json(const ClassVector& v);

/// Parse an integer array; `rank` >= 0 additionally pins the length.
ClassVector parse_class_vector(const Json& j, int rank = -1);

/// {"point": ["p/q", ...]}.
Json point_to_json(const RationalVector& p);

/// Accepts {"point": [...]} or a bare array; entries are rationals.
RationalVector parse_point(const Json& j, int rank = -1);

/// {"rank": n, "gram": [[...]]}.
Json lattice_to_json(const LatticeSpace& space);

/// Structural problems raise SchemaError; an inconsistent gram matrix
/// (non-symmetric, wrong signature for the checked constructor) raises
/// std::invalid_argument from the lattice layer.
LatticeSpace parse_lattice(const Json& j);

/// {"matrix": [[...]]} with columns acting on coordinate vectors.
Json isometry_to_json(const IntMatrix& m);

/// Accepts {"matrix": [[...]]} or a bare square array of arrays.
IntMatrix parse_isometry(const Json& j, int rank = -1);

Json surface_model_to_json(const SurfaceModel& model);

/// Fields: kind ("general_type" | "elliptic"), ksq or m1/m2, pg, q,
/// torsion2 ("none" | "z2" | "larger"), blowups. Unknown kinds and tags,
/// missing required fields, and non-integer values raise SchemaError.
SurfaceModel parse_surface_model(const Json& j);

/// Model fields, plus an "override" block {gram, K0, exceptionals} whenever
/// the lattice presentation differs from the canonical one for the model.
Json surface_to_json(const SurfaceLattice& surface);

/// Builds the canonical presentation, or the explicit one when an
/// "override" block is present (general type only).
SurfaceLattice parse_surface(const Json& j);

/// {"lattice": ..., "surface": ...?, "classes": [{"L","Xi","sw","mult",
/// "index"}, ...]}. `include_surface` controls whether the surface block is
/// emitted; the lattice block always is.
Json basic_class_set_to_json(const BasicClassSet& set, bool include_surface = true);

/// Requires "classes" plus at least one of "surface" / "lattice"; when both
/// are given their lattices must agree. A bare lattice yields a set whose
/// surface data is a placeholder (recovery entry points only need the
/// space). Class order is preserved; duplicate (L, Xi) pairs, mult < 1 and
/// rank mismatches raise SchemaError.
BasicClassSet parse_basic_class_set(const Json& j);

}  // namespace swlat
