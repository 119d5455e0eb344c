#include <swlat/json_io.hpp>

#include <swlat/errors.hpp>
#include <swlat/numeric.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace swlat {

namespace {

const Json& require_field(const Json& j, const char* key, const char* what) {
  if (!j.is_object())
    throw SchemaError(std::string(what) + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end())
    throw SchemaError(std::string(what) + ": missing required field \"" + key + "\"");
  return *it;
}

long long integer_field(const Json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw SchemaError(std::string(what) + ": expected an integer");
  return j.get<long long>();
}

Int parse_int_token(const std::string& text, const char* what) {
  if (text.empty())
    throw SchemaError(std::string(what) + ": empty integer literal");
  size_t pos = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (pos == text.size())
    throw SchemaError(std::string(what) + ": bare sign is not an integer");
  for (size_t i = pos; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9')
      throw SchemaError(std::string(what) + ": invalid integer literal \"" + text + "\"");
  return Int(text);
}

std::string enum_to_string(SurfaceKind kind) {
  return kind == SurfaceKind::GeneralTypeMinimal ? "general_type" : "elliptic";
}

std::string enum_to_string(TorsionTag tag) {
  switch (tag) {
    case TorsionTag::None: return "none";
    case TorsionTag::Z2: return "z2";
    default: return "larger";
  }
}

GramMatrix parse_gram_rows(const Json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw SchemaError(std::string(what) + ": expected a non-empty array of rows");
  const size_t n = j.size();
  GramMatrix gram;
  gram.reserve(n);
  for (const Json& row : j) {
    if (!row.is_array() || row.size() != n)
      throw SchemaError(std::string(what) + ": expected a square matrix");
    std::vector<Int> r;
    r.reserve(n);
    for (const Json& e : row) r.push_back(parse_int(e));
    gram.push_back(std::move(r));
  }
  return gram;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw SchemaError("malformed JSON input");
  return j;
}

std::string dump_json(const Json& j, bool pretty) {
  return j.dump(pretty ? 2 : -1) + "\n";
}

std::string rational_to_string(const Rat& r) {
  const Int num = rat_num(r);
  const Int den = rat_den(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rat parse_rational(const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rat(Int(j.get<long long>()));
  if (!j.is_string())
    throw SchemaError("rational: expected an integer or a \"p/q\" string");
  const std::string text = j.get<std::string>();
  const size_t slash = text.find('/');
  if (slash == std::string::npos) return Rat(parse_int_token(text, "rational"));
  const Int num = parse_int_token(text.substr(0, slash), "rational numerator");
  const Int den = parse_int_token(text.substr(slash + 1), "rational denominator");
  if (den <= 0) throw SchemaError("rational: denominator must be positive");
  return Rat(num) / Rat(den);
}

Json int_to_json(const Int& v) { return Json(to_ll(v)); }

Int parse_int(const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Int(j.get<long long>());
  if (j.is_string()) return parse_int_token(j.get<std::string>(), "integer");
  throw SchemaError("integer: expected an integer value");
}

Json class_vector_to_json(const ClassVector& v) {
  Json arr = Json::array();
  for (const Int& c : v.coords()) arr.push_back(int_to_json(c));
  return arr;
}

ClassVector parse_class_vector(const Json& j, int rank) {
  if (!j.is_array()) throw SchemaError("class vector: expected an integer array");
  std::vector<Int> c;
  c.reserve(j.size());
  for (const Json& e : j) c.push_back(parse_int(e));
  if (rank >= 0 && static_cast<int>(c.size()) != rank)
    throw SchemaError("class vector: expected length " + std::to_string(rank) + ", got " +
                      std::to_string(c.size()));
  if (c.empty()) throw SchemaError("class vector: empty array");
  return ClassVector(std::move(c));
}

Json point_to_json(const RationalVector& p) {
  Json arr = Json::array();
  for (const Rat& c : p.coords()) arr.push_back(rational_to_string(c));
  return Json{{"point", std::move(arr)}};
}

RationalVector parse_point(const Json& j, int rank) {
  const Json& arr = j.is_object() ? require_field(j, "point", "point") : j;
  if (!arr.is_array()) throw SchemaError("point: expected an array of rationals");
  std::vector<Rat> c;
  c.reserve(arr.size());
  for (const Json& e : arr) c.push_back(parse_rational(e));
  if (rank >= 0 && static_cast<int>(c.size()) != rank)
    throw SchemaError("point: expected length " + std::to_string(rank) + ", got " +
                      std::to_string(c.size()));
  if (c.empty()) throw SchemaError("point: empty array");
  return RationalVector(std::move(c));
}

Json lattice_to_json(const LatticeSpace& space) {
  Json gram = Json::array();
  for (const auto& row : space.gram()) {
    Json r = Json::array();
    for (const Int& e : row) r.push_back(int_to_json(e));
    gram.push_back(std::move(r));
  }
  return Json{{"rank", space.rank()}, {"gram", std::move(gram)}};
}

LatticeSpace parse_lattice(const Json& j) {
  const long long rank = integer_field(require_field(j, "rank", "lattice"), "lattice rank");
  GramMatrix gram = parse_gram_rows(require_field(j, "gram", "lattice"), "lattice gram");
  if (rank != static_cast<long long>(gram.size()))
    throw SchemaError("lattice: rank does not match the gram matrix size");
  return LatticeSpace::checked(std::move(gram));
}

Json isometry_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const Int& e : row) r.push_back(int_to_json(e));
    rows.push_back(std::move(r));
  }
  return Json{{"matrix", std::move(rows)}};
}

IntMatrix parse_isometry(const Json& j, int rank) {
  const Json& rows = j.is_object() ? require_field(j, "matrix", "isometry") : j;
  IntMatrix m = parse_gram_rows(rows, "isometry matrix");
  if (rank >= 0 && static_cast<int>(m.size()) != rank)
    throw SchemaError("isometry: expected a " + std::to_string(rank) + "x" +
                      std::to_string(rank) + " matrix");
  return m;
}

Json surface_model_to_json(const SurfaceModel& model) {
  Json j{{"kind", enum_to_string(model.kind)},
         {"pg", model.pg},
         {"q", model.q},
         {"torsion2", enum_to_string(model.torsion2)},
         {"blowups", model.blowups}};
  if (model.is_general_type()) {
    j["ksq"] = model.ksq;
  } else {
    j["m1"] = model.m1;
    j["m2"] = model.m2;
  }
  return j;
}

SurfaceModel parse_surface_model(const Json& j) {
  SurfaceModel model;
  const Json& kind = require_field(j, "kind", "surface");
  if (!kind.is_string()) throw SchemaError("surface: \"kind\" must be a string");
  const std::string kind_text = kind.get<std::string>();
  if (kind_text == "general_type") {
    model.kind = SurfaceKind::GeneralTypeMinimal;
  } else if (kind_text == "elliptic") {
    model.kind = SurfaceKind::Elliptic;
  } else {
    throw SchemaError("surface: unknown kind \"" + kind_text + "\"");
  }

  if (model.is_general_type()) {
    model.ksq = static_cast<int>(integer_field(require_field(j, "ksq", "surface"), "surface ksq"));
  } else {
    model.m1 = static_cast<int>(integer_field(require_field(j, "m1", "surface"), "surface m1"));
    model.m2 = static_cast<int>(integer_field(require_field(j, "m2", "surface"), "surface m2"));
  }
  if (j.contains("pg")) model.pg = static_cast<int>(integer_field(j["pg"], "surface pg"));
  if (j.contains("q")) model.q = static_cast<int>(integer_field(j["q"], "surface q"));
  if (j.contains("blowups"))
    model.blowups = static_cast<int>(integer_field(j["blowups"], "surface blowups"));
  if (j.contains("torsion2")) {
    const Json& tag = j["torsion2"];
    if (!tag.is_string()) throw SchemaError("surface: \"torsion2\" must be a string");
    const std::string tag_text = tag.get<std::string>();
    if (tag_text == "none") {
      model.torsion2 = TorsionTag::None;
    } else if (tag_text == "z2") {
      model.torsion2 = TorsionTag::Z2;
    } else if (tag_text == "larger") {
      model.torsion2 = TorsionTag::Larger;
    } else {
      throw SchemaError("surface: unknown torsion2 tag \"" + tag_text + "\"");
    }
  }
  model.validate();
  return model;
}

Json surface_to_json(const SurfaceLattice& surface) {
  Json j = surface_model_to_json(surface.model);
  const SurfaceLattice canonical = build(surface.model);
  const bool is_canonical = canonical.space.gram() == surface.space.gram() &&
                            canonical.K0 == surface.K0 &&
                            canonical.exceptionals == surface.exceptionals;
  if (!is_canonical) {
    Json exs = Json::array();
    for (const ClassVector& e : surface.exceptionals) exs.push_back(class_vector_to_json(e));
    j["override"] = Json{{"gram", lattice_to_json(surface.space)["gram"]},
                         {"K0", class_vector_to_json(surface.K0)},
                         {"exceptionals", std::move(exs)}};
  }
  return j;
}

SurfaceLattice parse_surface(const Json& j) {
  SurfaceModel model = parse_surface_model(j);
  if (!j.contains("override")) return build(model);

  const Json& ov = j["override"];
  GramMatrix gram = parse_gram_rows(require_field(ov, "gram", "surface override"),
                                    "surface override gram");
  const int rank = static_cast<int>(gram.size());
  ClassVector K0 = parse_class_vector(require_field(ov, "K0", "surface override"), rank);
  const Json& exs = require_field(ov, "exceptionals", "surface override");
  if (!exs.is_array()) throw SchemaError("surface override: \"exceptionals\" must be an array");
  std::vector<ClassVector> exceptionals;
  exceptionals.reserve(exs.size());
  for (const Json& e : exs) exceptionals.push_back(parse_class_vector(e, rank));
  return build_override(model, std::move(gram), std::move(K0), std::move(exceptionals));
}

Json basic_class_set_to_json(const BasicClassSet& set, bool include_surface) {
  Json classes = Json::array();
  for (const SpincBasicClass& c : set.classes) {
    classes.push_back(Json{{"L", class_vector_to_json(c.L)},
                           {"Xi", class_vector_to_json(c.Xi)},
                           {"sw", int_to_json(c.sw)},
                           {"mult", int_to_json(c.multiplicity)},
                           {"index", int_to_json(c.index)}});
  }
  Json j{{"lattice", lattice_to_json(set.surface.space)}, {"classes", std::move(classes)}};
  if (include_surface) j["surface"] = surface_to_json(set.surface);
  return j;
}

namespace {

SurfaceLattice surface_block_of(const Json& j) {
  if (j.contains("surface")) {
    SurfaceLattice surface = parse_surface(j["surface"]);
    if (j.contains("lattice")) {
      const LatticeSpace side = parse_lattice(j["lattice"]);
      if (side.gram() != surface.space.gram())
        throw SchemaError("basic class set: lattice and surface blocks disagree");
    }
    return surface;
  }
  if (j.contains("lattice")) {
    LatticeSpace space = parse_lattice(j["lattice"]);
    const int rank = space.rank();
    return SurfaceLattice{std::move(space), ClassVector::zero(rank), {}, SurfaceModel{}};
  }
  throw SchemaError("basic class set: needs a \"surface\" or \"lattice\" block");
}

}  // namespace

BasicClassSet parse_basic_class_set(const Json& j) {
  if (!j.is_object()) throw SchemaError("basic class set: expected a JSON object");

  BasicClassSet set{{}, surface_block_of(j)};

  const int rank = set.surface.space.rank();
  const Json& classes = require_field(j, "classes", "basic class set");
  if (!classes.is_array()) throw SchemaError("basic class set: \"classes\" must be an array");
  std::set<std::pair<ClassVector, ClassVector>> seen;
  for (const Json& c : classes) {
    SpincBasicClass bc;
    bc.L = parse_class_vector(require_field(c, "L", "basic class"), rank);
    bc.Xi = parse_class_vector(require_field(c, "Xi", "basic class"), rank);
    if (c.contains("sw")) bc.sw = parse_int(c["sw"]);
    if (c.contains("mult")) bc.multiplicity = parse_int(c["mult"]);
    if (c.contains("index")) bc.index = parse_int(c["index"]);
    if (bc.multiplicity < 1) throw SchemaError("basic class: mult must be at least 1");
    if (!seen.insert({bc.L, bc.Xi}).second)
      throw SchemaError("basic class set: duplicate (L, Xi) pair");
    set.classes.push_back(std::move(bc));
  }
  return set;
}

}  // namespace swlat
