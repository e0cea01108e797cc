#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "torlat/json_io.hpp"

// Integration tests driving the installed binary end to end: exit codes,
// canonical payloads, and byte-level determinism.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, const std::string& stdin_text = "") {
  std::string dir = "/tmp/torlat_cli_test";
  std::string mk = "mkdir -p " + dir;
  REQUIRE(std::system(mk.c_str()) == 0);
  std::string in_path = dir + "/stdin.json";
  {
    std::ofstream f(in_path);
    f << stdin_text;
  }
  std::string cmd = std::string(TORLAT_CLI_PATH) + " " + args + " < " + in_path + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (size_t got = fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

torlat::Json payload_of(const RunResult& r) {
  torlat::Json j = torlat::Json::parse(r.output);
  REQUIRE(j.at("status") == "ok");
  return j.at("payload");
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string dir = "/tmp/torlat_cli_test";
  std::string mk = "mkdir -p " + dir;
  REQUIRE(std::system(mk.c_str()) == 0);
  std::string path = dir + "/" + name;
  std::ofstream f(path);
  f << text;
  return path;
}

}  // namespace

TEST_CASE("classgroup command") {
  RunResult r = run("classgroup -D -23");
  CHECK(r.exit_code == 0);
  torlat::Json p = payload_of(r);
  CHECK(p.at("class_number") == 3);
  CHECK(p.at("reduced_forms").size() == 3);
  // determinism: byte-identical payloads across runs
  RunResult r2 = run("classgroup -D -23");
  CHECK(torlat::Json::parse(r.output).at("payload").dump() ==
        torlat::Json::parse(r2.output).at("payload").dump());
}

TEST_CASE("glz subgroups --dim 2 yields the 13-class table") {
  RunResult r = run("glz subgroups --dim 2");
  CHECK(r.exit_code == 0);
  torlat::Json p = payload_of(r);
  CHECK(p.at("count") == 13);
  RunResult bad = run("glz subgroups --dim 3");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("cohom command computes the sign-lattice example") {
  std::string job = R"({
    "module": {
      "group": {"preset": "cyclic", "n": 2},
      "free_rank": 1,
      "generators": [1],
      "matrices": [{"rows": 1, "cols": 1, "entries": [-1]}]
    },
    "degree": 1
  })";
  RunResult r = run("cohom", job);
  CHECK(r.exit_code == 0);
  torlat::Json p = payload_of(r);
  CHECK(p.at("shape").at("invariant_factors") == torlat::Json::array({2}));
  CHECK(p.at("shape").at("free_rank") == 0);
}

TEST_CASE("sha command on the biquadratic norm-one job") {
  std::string torus_path = write_temp("torus.json", R"({
    "construct": {"kind": "norm_one",
                  "group": {"preset": "product",
                            "factors": [{"preset": "cyclic", "n": 2},
                                        {"preset": "cyclic", "n": 2}]}}
  })");
  std::string datum_path = write_temp("datum.json", R"({
    "kind": "multiquadratic", "discriminants": [13, 17]
  })");
  RunResult r = run("sha --torus " + torus_path + " --datum " + datum_path + " --bound 100");
  CHECK(r.exit_code == 0);
  torlat::Json p = payload_of(r);
  CHECK(p.at("kernel").at("invariant_factors") == torlat::Json::array({2}));
  CHECK(p.at("stabilized") == true);
  CHECK(p.at("label") == "lattice-level Sha");
}

TEST_CASE("error paths carry machine-readable reasons") {
  RunResult bad = run("cohom", R"({"degree": 1})");
  CHECK(bad.exit_code == 2);
  torlat::Json j = torlat::Json::parse(bad.output);
  CHECK(j.at("status") == "invalid-input");
  CHECK(j.at("error").contains("pointer"));

  std::string big = R"({
    "module": {"group": {"preset": "dihedral", "n": 6}, "free_rank": 2, "trivial": true},
    "degree": 4
  })";
  RunResult budget = run("--budget-elems 1000 cohom", big);
  CHECK(budget.exit_code == 3);
  torlat::Json jb = torlat::Json::parse(budget.output);
  CHECK(jb.at("status") == "budget-exceeded");
  CHECK(jb.at("error").contains("required"));
}

TEST_CASE("picard, classset, condT commands") {
  std::string curve = R"({"curve": {"p": 3, "removed": [{"poly": [1, 0, 1]}]}})";
  RunResult pic = run("picard", curve);
  CHECK(pic.exit_code == 0);
  CHECK(payload_of(pic).at("picard").at("invariant_factors") == torlat::Json::array({2}));

  RunResult cs = run("classset", R"({"curve": {"p": 3, "removed": [{"poly": [1, 0, 1]}]}, "d": 2})");
  CHECK(cs.exit_code == 0);
  CHECK(payload_of(cs).at("class_set").at("invariant_factors") == torlat::Json::array({2, 2}));

  RunResult ct = run("condT", R"({"curve": {"p": 3, "removed": [{"poly": [1, 0, 1]}]}, "d": 2})");
  CHECK(ct.exit_code == 0);
  CHECK(payload_of(ct).at("verified") == true);
}

TEST_CASE("artin-schreier and residue commands") {
  RunResult as = run("artin-schreier --p 2 --max-degree 3");
  CHECK(as.exit_code == 0);
  CHECK(payload_of(as).at("count") == 7);

  std::string sym = R"({
    "model": {"kind": "Fp_t", "p": 3}, "n": 2,
    "a": {"num": [0, 1]}, "b": {"num": [0, 1]}
  })";
  RunResult res = run("residue --deg 2", sym);
  CHECK(res.exit_code == 0);
  torlat::Json p = payload_of(res);
  CHECK(p.at("unramified") == false);
  CHECK(p.at("ramified_at").size() == 2);
}

TEST_CASE("tori census command") {
  std::string job = R"({"group": {"preset": "cyclic", "n": 2}, "d": 2})";
  RunResult r = run("tori census", job);
  CHECK(r.exit_code == 0);
  CHECK(payload_of(r).at("count") == 4);
}

TEST_CASE("tori classify and isom commands") {
  std::string norm_one = R"({"construct": {"kind": "norm_one",
                              "group": {"preset": "cyclic", "n": 2}}})";
  RunResult cls = run("tori classify", R"({"torus": )" + norm_one +
                                           R"(, "inertia": [[0], [0, 1]]})");
  CHECK(cls.exit_code == 0);
  torlat::Json p = payload_of(cls);
  CHECK(p.at("dimension") == 1);
  CHECK(p.at("faithful") == true);
  CHECK(p.at("good_reduction") == torlat::Json::array({true, false}));

  std::string job = R"({
    "t1": {"construct": {"kind": "restriction", "group": {"preset": "cyclic", "n": 2}}},
    "t2": {"construct": {"kind": "product", "factors": [
        {"construct": {"kind": "split", "d": 1, "group": {"preset": "cyclic", "n": 2}}},
        {"construct": {"kind": "norm_one", "group": {"preset": "cyclic", "n": 2}}}]}}
  })";
  RunResult iso = run("tori isom", job);
  CHECK(iso.exit_code == 0);
  torlat::Json pi = payload_of(iso);
  CHECK(pi.at("status") == "not_isomorphic");
  CHECK(pi.at("certificate").get<std::string>().find("mod 2") != std::string::npos);
}
