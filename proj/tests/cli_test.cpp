// End-to-end tests of the command-line binary (path injected by the build
// as SWLAT_CLI_PATH): verbs, exit codes, and output schemas.
#include <doctest.h>

#include <swlat/basic_classes.hpp>
#include <swlat/json_io.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

using namespace swlat;

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "swlat_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_input(const std::string& name, const std::string& text) {
  const fs::path p = work_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p.string();
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CliResult run_cli(const std::string& args) {
  const fs::path out_path = work_dir() / "stdout.txt";
  const fs::path err_path = work_dir() / "stderr.txt";
  const std::string cmd = std::string(SWLAT_CLI_PATH) + " " + args + " > " + out_path.string() +
                          " 2> " + err_path.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

SurfaceModel general_type(int ksq, int blowups) {
  SurfaceModel m;
  m.kind = SurfaceKind::GeneralTypeMinimal;
  m.ksq = ksq;
  m.blowups = blowups;
  return m;
}

const char* kOverrideSurface =
    R"({"kind":"general_type","ksq":1,"blowups":2,"override":{
        "gram":[[1,0,0],[0,-1,0],[0,0,-1]],
        "K0":[1,0,0],"exceptionals":[[0,1,0],[0,0,1]]}})";

}  // namespace

TEST_CASE("enumerate emits the canonical class set") {
  const std::string in =
      write_input("gt21.json", R"({"kind":"general_type","ksq":2,"blowups":1})");
  const CliResult r = run_cli("enumerate --input " + in);
  REQUIRE(r.exit_code == 0);
  const BasicClassSet got = parse_basic_class_set(parse_json_text(r.out));
  const BasicClassSet want = enumerate_basic_classes(general_type(2, 1));
  CHECK(got.classes == want.classes);
  CHECK(got.classes.size() == 4);

  // determinism: identical bytes on a second run
  const CliResult r2 = run_cli("enumerate --input " + in);
  CHECK(r2.out == r.out);

  // the emitted JSON round-trips through its own parser
  CHECK(basic_class_set_to_json(got) == parse_json_text(r.out));
}

TEST_CASE("enumerate handles fibered models and explicit presentations") {
  const std::string dol = write_input("dol23.json", R"({"kind":"elliptic","m1":2,"m2":3})");
  const CliResult r = run_cli("enumerate --input " + dol);
  REQUIRE(r.exit_code == 0);
  CHECK(parse_json_text(r.out)["classes"].size() == 2);

  const std::string ov = write_input("ov12.json", kOverrideSurface);
  const CliResult ro = run_cli("enumerate --input " + ov);
  REQUIRE(ro.exit_code == 0);
  const Json j = parse_json_text(ro.out);
  CHECK(j["classes"].size() == 8);
  CHECK(j["surface"].contains("override"));
  // classes satisfy 2 Xi = L + K on the explicit presentation
  const BasicClassSet set = parse_basic_class_set(j);
  for (const auto& c : set.classes) CHECK(c.Xi + c.Xi == c.L + set.surface.K_tilde());
}

TEST_CASE("exit codes distinguish schema, model and recovery failures") {
  const std::string bad = write_input("bad.json", "not json at all");
  CHECK(run_cli("enumerate --input " + bad).exit_code == 2);

  const std::string q1 =
      write_input("q1.json", R"({"kind":"elliptic","m1":2,"m2":3,"q":1})");
  CHECK(run_cli("enumerate --input " + q1).exit_code == 3);

  CHECK(run_cli("enumerate --input /nonexistent/x.json").exit_code == 2);
  CHECK(run_cli("no-such-verb").exit_code == 2);
  CHECK(run_cli("enumerate").exit_code == 2);  // missing required --input

  // two distinct +/- pairs at the maximal square: ambiguous by design
  const std::string amb = write_input("ambiguous.json", R"({
    "lattice": {"rank": 3, "gram": [[0,1,0],[1,0,0],[0,0,-1]]},
    "classes": [
      {"L": [0,0,0], "Xi": [0,0,0], "sw": 1},
      {"L": [1,0,0], "Xi": [1,2,0], "sw": 1},
      {"L": [0,1,0], "Xi": [2,1,0], "sw": 1}
    ]})");
  CHECK(run_cli("recover --input " + amb).exit_code == 4);
}

TEST_CASE("recover reports invariants of an enumerated set") {
  const std::string in =
      write_input("gt21b.json", R"({"kind":"general_type","ksq":2,"blowups":1})");
  const std::string set_path = (work_dir() / "set21.json").string();
  REQUIRE(run_cli("enumerate --input " + in + " --output " + set_path).exit_code == 0);

  const CliResult r = run_cli("recover --input " + set_path);
  REQUIRE(r.exit_code == 0);
  const Json j = parse_json_text(r.out);
  const SurfaceLattice s = build(general_type(2, 1));
  CHECK(parse_class_vector(j["K0"]) == s.K0);
  REQUIRE(j["exceptionals"].size() == 1);
  CHECK(parse_class_vector(j["exceptionals"][0]) == s.exceptionals[0]);
  CHECK(j["plurigenera"]["2"] == 3);
  CHECK(j["plurigenera"]["12"] == 133);

  // fibered data recovers multiplicities, using the surface block's pg
  const std::string ell =
      write_input("e1m23.json", R"({"kind":"elliptic","m1":2,"m2":3,"pg":1})");
  const std::string eset = (work_dir() / "e1set.json").string();
  REQUIRE(run_cli("enumerate --input " + ell + " --output " + eset).exit_code == 0);
  const CliResult re = run_cli("recover --input " + eset);
  REQUIRE(re.exit_code == 0);
  const Json je = parse_json_text(re.out);
  CHECK(je["multiplicities"] == Json::array({2, 3}));
  CHECK(!je.contains("plurigenera"));
}

TEST_CASE("check-diffeo verdicts: identity, reflection, broken map") {
  const std::string ov = write_input("ov12b.json", kOverrideSurface);
  const std::string set_path = (work_dir() / "ovset.json").string();
  REQUIRE(run_cli("enumerate --input " + ov + " --output " + set_path).exit_code == 0);

  const std::string ident =
      write_input("ident3.json", R"({"matrix":[[1,0,0],[0,1,0],[0,0,1]]})");
  const CliResult ri = run_cli("check-diffeo --input " + set_path + " --map " + ident);
  REQUIRE(ri.exit_code == 0);
  CHECK(parse_json_text(ri.out)["verdict"] == "PASS");

  const std::string refl =
      write_input("refl_e1_3.json", R"({"matrix":[[1,0,0],[0,-1,0],[0,0,1]]})");
  const CliResult rr = run_cli("check-diffeo --input " + set_path + " --map " + refl);
  REQUIRE(rr.exit_code == 0);
  const Json jr = parse_json_text(rr.out);
  CHECK(jr["verdict"] == "PASS");
  // recovered exceptionals are lex-sorted: [0,0,1] first, then [0,1,0];
  // the reflection fixes the former and negates the latter
  CHECK(jr["exceptional_permutation"][0] == Json{{"to", 0}, {"sign", 1}});
  CHECK(jr["exceptional_permutation"][1] == Json{{"to", 1}, {"sign", -1}});

  // reflection through the blown-up canonical class: a lattice isometry that
  // cannot come from a diffeomorphism; the difference set moves off itself
  const std::string rk =
      write_input("rk3.json", R"({"matrix":[[3,-2,-2],[2,-1,-2],[2,-2,-1]]})");
  const CliResult rf = run_cli("check-diffeo --input " + set_path + " --map " + rk);
  REQUIRE(rf.exit_code == 0);
  const Json jf = parse_json_text(rf.out);
  CHECK(jf["verdict"] == "FAIL");
  CHECK(jf.contains("witness"));

  const std::string notiso =
      write_input("notiso.json", R"({"matrix":[[2,0,0],[0,1,0],[0,0,1]]})");
  CHECK(run_cli("check-diffeo --input " + set_path + " --map " + notiso).exit_code == 2);
}

TEST_CASE("check-summand classifies exceptional and impostor classes") {
  const std::string ov = write_input("ov12c.json", kOverrideSurface);
  const std::string set_path = (work_dir() / "ovsetc.json").string();
  REQUIRE(run_cli("enumerate --input " + ov + " --output " + set_path).exit_code == 0);

  // indices refer to the lex-sorted recovered exceptional list
  const std::string e2 = write_input("e2.json", "[0,0,1]");
  const CliResult r1 = run_cli("check-summand --input " + set_path + " --at " + e2);
  REQUIRE(r1.exit_code == 0);
  const Json j1 = parse_json_text(r1.out);
  CHECK(j1["verdict"] == "exceptional");
  CHECK(j1["index"] == 0);

  const std::string e1 = write_input("e1b.json", "[0,1,0]");
  const CliResult r1b = run_cli("check-summand --input " + set_path + " --at " + e1);
  REQUIRE(r1b.exit_code == 0);
  CHECK(parse_json_text(r1b.out)["index"] == 1);

  const std::string imp = write_input("impostor.json", "[1,1,1]");
  const CliResult r2 = run_cli("check-summand --input " + set_path + " --at " + imp);
  REQUIRE(r2.exit_code == 0);
  const Json j2 = parse_json_text(r2.out);
  CHECK(j2["verdict"] == "contradiction");
  CHECK(j2.contains("witness"));
}

TEST_CASE("chambers verbs emit wall, invariant and search reports") {
  const std::string ov = write_input("ov12d.json", kOverrideSurface);
  const std::string p0 = write_input("p0.json", R"({"point":["1","0","0"]})");
  const std::string p1 = write_input("p1.json", R"({"point":["9","8","2"]})");

  const CliResult rw =
      run_cli("chambers walls --input " + ov + " --from " + p0 + " --to " + p1);
  REQUIRE(rw.exit_code == 0);
  const Json jw = parse_json_text(rw.out);
  bool found = false;
  for (const auto& w : jw["walls"])
    if (w["L"] == Json::array({1, 1, 1})) {
      found = true;
      CHECK(parse_rational(w["parameter"]) > 0);
      CHECK(parse_rational(w["parameter"]) < 1);
    }
  CHECK(found);
  CHECK(run_cli("chambers walls --input " + ov + " --from " + p0 + " --to " + p1).out == rw.out);

  const CliResult rs = run_cli("chambers sw --input " + ov + " --at " + p1);
  REQUIRE(rs.exit_code == 0);
  const Json js = parse_json_text(rs.out);
  CHECK(js["component_sign"] == 1);
  CHECK(!js["separating_walls"].empty());
  for (const auto& entry : js["values"]) CHECK(entry["L"] != Json::array({1, 1, 1}));

  const CliResult rv = run_cli("chambers verify-c0 --input " + ov);
  REQUIRE(rv.exit_code == 0);
  CHECK(parse_json_text(rv.out)["all"] == true);

  const CliResult rg = run_cli("chambers search --input " + ov + " --radius 2 --denominator 2");
  REQUIRE(rg.exit_code == 0);
  const Json jg = parse_json_text(rg.out);
  int passing = 0;
  for (const auto& c : jg["chambers"])
    if (c["passes"] == true) ++passing;
  CHECK(passing == 2);

  // a point on a wall is invalid input
  const std::string pw = write_input("pwall.json", R"({"point":["8","7","1"]})");
  CHECK(run_cli("chambers sw --input " + ov + " --at " + pw).exit_code == 2);
}

TEST_CASE("output flags write files and pretty-print") {
  const std::string in =
      write_input("gt10.json", R"({"kind":"general_type","ksq":1,"blowups":0})");
  const std::string out_path = (work_dir() / "out.json").string();
  const CliResult r = run_cli("enumerate --input " + in + " --output " + out_path + " --pretty");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(!r.err.empty());  // the human table goes to stderr
  const std::string text = slurp(out_path);
  CHECK(text.substr(0, 2) == "{\n");  // indented
  CHECK(parse_basic_class_set(parse_json_text(text)).classes.size() == 2);
}
