// Command-line front end: parse surface/basic-class JSON, dispatch to the
// enumeration, recovery and chamber engines, and emit deterministic JSON
// reports. Exit codes: 0 success, 1 selftest failure, 2 schema violation or
// invalid input, 3 unsupported model, 4 ambiguous recovery.
#include <swlat/basic_classes.hpp>
#include <swlat/chambers.hpp>
#include <swlat/errors.hpp>
#include <swlat/json_io.hpp>
#include <swlat/recovery.hpp>
#include <swlat/selftest.hpp>
#include <swlat/surface.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace swlat;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json load_json(const std::string& path) { return parse_json_text(read_file(path)); }

void emit(const Json& j, const std::string& output, bool pretty) {
  const std::string text = dump_json(j, pretty);
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw SchemaError("cannot write output file: " + output);
  out << text;
}

/// Basic classes of a surface lattice in its own coordinates. The canonical
/// presentation goes through the model pipeline; an explicit presentation
/// (general type only) gets the classes built directly: L = s*K0 + sum(e_i
/// E_i), Xi = (L + K)/2, value = product of the e_i.
BasicClassSet enumerate_on(const SurfaceLattice& surface) {
  const SurfaceLattice canonical = build(surface.model);
  const bool is_canonical = canonical.space.gram() == surface.space.gram() &&
                            canonical.K0 == surface.K0 &&
                            canonical.exceptionals == surface.exceptionals;
  if (is_canonical) return enumerate_basic_classes(surface.model);

  const ClassVector k_tilde = surface.K_tilde();
  const int l = static_cast<int>(surface.exceptionals.size());
  BasicClassSet set{{}, surface};
  for (int sign = -1; sign <= 1; sign += 2) {
    for (unsigned mask = 0; mask < (1u << l); ++mask) {
      ClassVector lc = surface.K0 * Int(sign);
      Int sw = 1;
      for (int i = 0; i < l; ++i) {
        const bool plus = mask & (1u << i);
        lc = plus ? lc + surface.exceptionals[i] : lc - surface.exceptionals[i];
        if (!plus) sw = -sw;
      }
      const ClassVector xi = (lc + k_tilde).divided_by(Int(2));
      set.classes.push_back(SpincBasicClass{lc, xi, sw, Int(1), Int(0)});
    }
  }
  std::sort(set.classes.begin(), set.classes.end(),
            [](const SpincBasicClass& a, const SpincBasicClass& b) {
              return a.L != b.L ? a.L < b.L : a.Xi < b.Xi;
            });
  return set;
}

struct RecoveredInvariants {
  RecoveredK0 k0;
  std::vector<ClassVector> exceptionals;
  bool positive_square = false;
};

RecoveredInvariants recover_invariants(const BasicClassSet& set) {
  const DifferenceSet diffs = difference_set(set);
  Int maxsq = 0;
  bool first = true;
  for (const ClassVector& d : diffs.elements) {
    const Int sq = set.surface.space.square(d);
    if (first || sq > maxsq) maxsq = sq;
    first = false;
  }
  RecoveredInvariants out;
  out.positive_square = maxsq > 0;
  out.k0 = recover_K0(set.surface.space, diffs, out.positive_square);
  out.exceptionals = out.positive_square
                         ? recover_exceptionals(set.surface.space, diffs, out.k0.plus)
                         : recover_exceptionals_fibered(set.surface.space, diffs);
  return out;
}

void print_class_table(const BasicClassSet& set) {
  std::fprintf(stderr, "%-28s %-28s %5s %5s %5s\n", "L", "Xi", "sw", "mult", "index");
  for (const SpincBasicClass& c : set.classes)
    std::fprintf(stderr, "%-28s %-28s %5s %5s %5s\n", c.L.str().c_str(), c.Xi.str().c_str(),
                 c.sw.str().c_str(), c.multiplicity.str().c_str(), c.index.str().c_str());
}

Json chamber_function_to_json(const ChamberSWFunction& f) {
  Json walls = Json::array();
  for (const ClassVector& w : f.chamber.separating_walls) walls.push_back(class_vector_to_json(w));
  Json values = Json::array();
  for (const auto& [key, v] : f.values) {
    values.push_back(Json{{"L", class_vector_to_json(ClassVector(key.first))},
                          {"Xi", class_vector_to_json(ClassVector(key.second))},
                          {"value", int_to_json(v)}});
  }
  Json point = point_to_json(f.chamber.point);
  return Json{{"point", point["point"]},
              {"component_sign", f.chamber.component_sign},
              {"separating_walls", std::move(walls)},
              {"values", std::move(values)}};
}

Json c0_report_to_json(const C0Report& r) {
  return Json{{"values_are_signs", r.values_are_signs},
              {"support_count", r.support_count},
              {"max_pair_square", r.max_pair_square},
              {"ray_meets_chamber", r.ray_meets_chamber},
              {"first_three", r.first_three()},
              {"all", r.all()}};
}

// ---- verb handlers ---------------------------------------------------------

struct CommonFlags {
  std::string input;
  std::string output;
  bool pretty = false;
};

int run_enumerate(const CommonFlags& flags) {
  const SurfaceLattice surface = parse_surface(load_json(flags.input));
  const BasicClassSet set = enumerate_on(surface);
  if (flags.pretty) print_class_table(set);
  emit(basic_class_set_to_json(set), flags.output, flags.pretty);
  return 0;
}

int run_recover(const CommonFlags& flags, int pg, int n_max) {
  const BasicClassSet set = parse_basic_class_set(load_json(flags.input));
  const RecoveredInvariants inv = recover_invariants(set);

  Json exs = Json::array();
  for (const ClassVector& e : inv.exceptionals) exs.push_back(class_vector_to_json(e));
  Json out{{"K0", class_vector_to_json(inv.k0.plus)}, {"exceptionals", std::move(exs)}};

  if (inv.positive_square) {
    Json table = Json::object();
    for (const auto& [n, pn] : recover_plurigenera(set, n_max))
      table[std::to_string(n)] = int_to_json(pn);
    out["plurigenera"] = std::move(table);
  } else {
    int use_pg = pg;
    if (use_pg < 0 && set.surface.model.is_elliptic()) use_pg = set.surface.model.pg;
    if (use_pg >= 0) {
      const auto [m1, m2] = recover_multiplicities(set, use_pg);
      out["multiplicities"] = Json::array({m1, m2});
    }
  }
  emit(out, flags.output, flags.pretty);
  return 0;
}

int run_chambers_walls(const CommonFlags& flags, const std::string& from_path,
                       const std::string& to_path) {
  const SurfaceLattice surface = parse_surface(load_json(flags.input));
  const ChamberEngine eng = ChamberEngine::for_surface(surface);
  const RationalVector x0 = parse_point(load_json(from_path), eng.space().rank());
  const RationalVector x1 = parse_point(load_json(to_path), eng.space().rank());

  Json walls = Json::array();
  for (const CrossedWall& c : eng.walls_crossed(x0, x1)) {
    walls.push_back(Json{{"L", class_vector_to_json(c.wall.L)},
                         {"parameter", rational_to_string(c.parameter)}});
  }
  emit(Json{{"from", point_to_json(x0)["point"]},
            {"to", point_to_json(x1)["point"]},
            {"walls", std::move(walls)}},
       flags.output, flags.pretty);
  return 0;
}

int run_chambers_sw(const CommonFlags& flags, const std::string& at_path) {
  const SurfaceLattice surface = parse_surface(load_json(flags.input));
  const ChamberEngine eng = ChamberEngine::for_surface(surface);
  const RationalVector at = parse_point(load_json(at_path), eng.space().rank());
  const ChamberSWFunction f = eng.sw_for_chamber(at);
  if (flags.pretty) {
    std::fprintf(stderr, "%-28s %-28s %6s\n", "L", "Xi", "value");
    for (const auto& [key, v] : f.values)
      std::fprintf(stderr, "%-28s %-28s %6s\n", ClassVector(key.first).str().c_str(),
                   ClassVector(key.second).str().c_str(), v.str().c_str());
  }
  emit(chamber_function_to_json(f), flags.output, flags.pretty);
  return 0;
}

int run_chambers_verify(const CommonFlags& flags, const std::string& at_path) {
  const SurfaceLattice surface = parse_surface(load_json(flags.input));
  const ChamberEngine eng = ChamberEngine::for_surface(surface);
  const ChamberSWFunction f = at_path.empty()
                                  ? eng.distinguished_chamber()
                                  : eng.sw_for_chamber(parse_point(load_json(at_path),
                                                                   eng.space().rank()));
  Json out = c0_report_to_json(eng.check_c0_properties(f));
  out["chamber"] = chamber_function_to_json(f);
  emit(out, flags.output, flags.pretty);
  return 0;
}

int run_chambers_search(const CommonFlags& flags, int radius, int denominator) {
  const SurfaceLattice surface = parse_surface(load_json(flags.input));
  const ChamberEngine eng = ChamberEngine::for_surface(surface);
  Json chambers = Json::array();
  for (const SearchedChamber& c : eng.search_distinguished(radius, denominator)) {
    Json walls = Json::array();
    for (const ClassVector& w : c.chamber.separating_walls)
      walls.push_back(class_vector_to_json(w));
    chambers.push_back(Json{{"point", point_to_json(c.chamber.point)["point"]},
                            {"component_sign", c.chamber.component_sign},
                            {"separating_walls", std::move(walls)},
                            {"passes", c.passes},
                            {"support", c.support},
                            {"report", c0_report_to_json(c.report)}});
  }
  emit(Json{{"radius", radius}, {"denominator", denominator}, {"chambers", std::move(chambers)}},
       flags.output, flags.pretty);
  return 0;
}

int run_check_diffeo(const CommonFlags& flags, const std::string& against_path,
                     const std::string& map_path) {
  const BasicClassSet set1 = parse_basic_class_set(load_json(flags.input));
  const BasicClassSet set2 = against_path.empty()
                                 ? set1
                                 : parse_basic_class_set(load_json(against_path));
  const RecoveredInvariants inv1 = recover_invariants(set1);
  const RecoveredInvariants inv2 = recover_invariants(set2);

  Json out;
  Json exs1 = Json::array(), exs2 = Json::array();
  for (const ClassVector& e : inv1.exceptionals) exs1.push_back(class_vector_to_json(e));
  for (const ClassVector& e : inv2.exceptionals) exs2.push_back(class_vector_to_json(e));
  out["invariants"] = Json{{"K0", class_vector_to_json(inv1.k0.plus)},
                           {"exceptionals", std::move(exs1)}};
  out["invariants_against"] = Json{{"K0", class_vector_to_json(inv2.k0.plus)},
                                   {"exceptionals", std::move(exs2)}};

  bool pass = true;
  std::string reason;
  if (inv1.exceptionals.size() != inv2.exceptionals.size()) {
    pass = false;
    reason = "exceptional counts differ";
  } else if (set1.surface.space.square(inv1.k0.plus) != set2.surface.space.square(inv2.k0.plus)) {
    pass = false;
    reason = "canonical squares differ";
  }

  if (pass && !map_path.empty()) {
    if (set1.surface.space.gram() != set2.surface.space.gram())
      throw SchemaError("check-diffeo: an explicit map needs both sets in one lattice");
    const IntMatrix m = parse_isometry(load_json(map_path), set1.surface.space.rank());
    if (!set1.surface.space.is_isometry(m))
      throw std::invalid_argument("check-diffeo: the map is not a lattice isometry");

    // The map must carry the difference set onto the target's difference
    // set. (Xi coordinates are relative to each side's own canonical class,
    // so the comparison lives at the difference level, where that choice
    // cancels.)
    const DifferenceSet diffs1 = difference_set(set1);
    const DifferenceSet diffs2 = difference_set(set2);
    std::vector<ClassVector> moved;
    moved.reserve(diffs1.size());
    for (const ClassVector& d : diffs1.elements) moved.push_back(set1.surface.space.apply(m, d));
    std::sort(moved.begin(), moved.end());
    if (moved != diffs2.elements) {
      pass = false;
      reason = "the map does not carry the difference set onto the target's";
      for (const ClassVector& d : moved)
        if (!diffs2.contains(d)) {
          out["witness"] = class_vector_to_json(d);
          break;
        }
    } else {
      // Report how the canonical pair and the exceptional pairs are matched.
      const ClassVector mk0 = set1.surface.space.apply(m, inv1.k0.plus);
      out["K0_image"] = class_vector_to_json(mk0);
      if (mk0 != inv2.k0.plus && mk0 != inv2.k0.minus) {
        pass = false;
        reason = "the canonical pair is not carried to the target's";
        out["witness"] = class_vector_to_json(mk0);
      }
      Json perm = Json::array();
      for (const ClassVector& e : pass ? inv1.exceptionals : std::vector<ClassVector>{}) {
        const ClassVector me = set1.surface.space.apply(m, e);
        int target = -1, sign = 0;
        for (size_t jj = 0; jj < inv2.exceptionals.size(); ++jj) {
          if (me == inv2.exceptionals[jj]) {
            target = static_cast<int>(jj);
            sign = 1;
          } else if (me == -inv2.exceptionals[jj]) {
            target = static_cast<int>(jj);
            sign = -1;
          }
        }
        if (target < 0) {
          pass = false;
          reason = "an exceptional image is not +/- an exceptional of the target";
          out["witness"] = class_vector_to_json(me);
          break;
        }
        perm.push_back(Json{{"to", target}, {"sign", sign}});
      }
      if (pass) out["exceptional_permutation"] = std::move(perm);
    }
  }

  out["verdict"] = pass ? "PASS" : "FAIL";
  if (!pass) out["reason"] = reason;
  emit(out, flags.output, flags.pretty);
  return 0;
}

int run_check_summand(const CommonFlags& flags, const std::string& at_path) {
  const BasicClassSet set = parse_basic_class_set(load_json(flags.input));
  const ClassVector n =
      parse_class_vector(load_json(at_path), set.surface.space.rank());
  const RecoveredInvariants inv = recover_invariants(set);

  const SummandVerdict v =
      inv.positive_square
          ? classify_summand_class(set, inv.k0.plus, inv.exceptionals, n)
          : classify_summand_class_fibered(set, inv.k0.plus, inv.exceptionals, n);
  Json out;
  if (v.is_exceptional()) {
    out["verdict"] = "exceptional";
    out["index"] = *v.exceptional_index;
    out["class"] = class_vector_to_json(inv.exceptionals[*v.exceptional_index]);
  } else {
    out["verdict"] = "contradiction";
    out["witness"] = class_vector_to_json(*v.witness);
  }
  emit(out, flags.output, flags.pretty);
  return 0;
}

int run_selftest(const std::string& output, bool pretty) {
  const auto results = run_all_criteria();
  int passed = 0;
  int index = 0;
  Json rows = Json::array();
  for (const auto& r : results) {
    ++index;
    std::printf("[%s] %2d %-26s %7lld ms  %s\n", r.pass ? "PASS" : "FAIL", index, r.name.c_str(),
                r.ms, r.details.c_str());
    if (r.pass) ++passed;
    rows.push_back(Json{{"name", r.name}, {"pass", r.pass}, {"ms", r.ms}, {"details", r.details}});
  }
  std::printf("%d/%d criteria passed\n", passed, index);
  if (!output.empty())
    emit(Json{{"criteria", std::move(rows)}, {"passed", passed}, {"total", index}}, output, pretty);
  return passed == index ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seiberg-Witten basic classes of Kahler surfaces as lattice data"};
  app.require_subcommand(1);

  CommonFlags en, rec, walls, swf, verify, search, diffeo, summand;
  int pg = -1, n_max = 12, radius = 0, denominator = 0;
  std::string from_path, to_path, at_path, verify_at, against_path, map_path, summand_at;
  std::string selftest_output;
  bool selftest_pretty = false;

  auto add_common = [](CLI::App* cmd, CommonFlags& f, bool input_required = true) {
    auto* opt = cmd->add_option("--input", f.input, "input JSON file");
    if (input_required) opt->required();
    cmd->add_option("--output", f.output, "write the JSON report here instead of stdout");
    cmd->add_flag("--pretty", f.pretty, "indent the JSON and print a human table to stderr");
  };

  auto* c_en = app.add_subcommand("enumerate", "basic classes of a surface");
  add_common(c_en, en);

  auto* c_rec = app.add_subcommand("recover", "recover invariants from a basic-class set");
  add_common(c_rec, rec);
  c_rec->add_option("--pg", pg, "geometric genus for multiplicity recovery (fibered sets)");
  c_rec->add_option("--n-max", n_max, "largest plurigenus index to report")
      ->check(CLI::Range(2, 64));

  auto* c_ch = app.add_subcommand("chambers", "wall-and-chamber queries");
  c_ch->require_subcommand(1);
  auto* c_walls = c_ch->add_subcommand("walls", "walls crossed by a segment");
  add_common(c_walls, walls);
  c_walls->add_option("--from", from_path, "start point JSON")->required();
  c_walls->add_option("--to", to_path, "end point JSON")->required();
  auto* c_sw = c_ch->add_subcommand("sw", "chamber invariant at a point");
  add_common(c_sw, swf);
  c_sw->add_option("--at", at_path, "point JSON")->required();
  auto* c_verify = c_ch->add_subcommand("verify-c0", "distinguished-chamber criteria");
  add_common(c_verify, verify);
  c_verify->add_option("--at", verify_at, "point JSON (default: the seed chamber)");
  auto* c_search = c_ch->add_subcommand("search", "grid search for qualifying chambers");
  add_common(c_search, search);
  c_search->add_option("--radius", radius, "coordinate radius of the grid")->required();
  c_search->add_option("--denominator", denominator, "largest grid denominator")->required();

  auto* c_diffeo = app.add_subcommand("check-diffeo", "compare two sets / test a candidate map");
  add_common(c_diffeo, diffeo);
  c_diffeo->add_option("--against", against_path, "second basic-class set JSON");
  c_diffeo->add_option("--map", map_path, "candidate isometry JSON");

  auto* c_summand = app.add_subcommand("check-summand", "classify a square -1 class");
  add_common(c_summand, summand);
  c_summand->add_option("--at", summand_at, "class vector JSON")->required();

  auto* c_self = app.add_subcommand("selftest", "run the release-gate checks");
  c_self->add_option("--output", selftest_output, "write the JSON report here");
  c_self->add_flag("--pretty", selftest_pretty, "indent the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message to stderr
    return 2;
  }

  try {
    if (c_en->parsed()) return run_enumerate(en);
    if (c_rec->parsed()) return run_recover(rec, pg, n_max);
    if (c_walls->parsed()) return run_chambers_walls(walls, from_path, to_path);
    if (c_sw->parsed()) return run_chambers_sw(swf, at_path);
    if (c_verify->parsed()) return run_chambers_verify(verify, verify_at);
    if (c_search->parsed()) return run_chambers_search(search, radius, denominator);
    if (c_diffeo->parsed()) return run_check_diffeo(diffeo, against_path, map_path);
    if (c_summand->parsed()) return run_check_summand(summand, summand_at);
    if (c_self->parsed()) return run_selftest(selftest_output, selftest_pretty);
  } catch (const UnsupportedModel& e) {
    std::cerr << "unsupported model: " << e.what() << "\n";
    return 3;
  } catch (const AmbiguousRecovery& e) {
    std::cerr << "ambiguous recovery: " << e.what() << "\n";
    return 4;
  } catch (const SchemaError& e) {
    std::cerr << "schema violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable: a subcommand is required
}
