// torlat: batch CLI over the lattice/cohomology toolkit. One process runs one
// job: it reads a JSON job document, dispatches to a module operation, and
// emits a canonical JSON result. Identical requests produce byte-identical
// payloads; the provenance block (tool version, input digest, elapsed time)
// sits outside the payload and is excluded from determinism comparisons.
//
// Exit codes: 0 ok, 2 invalid input (with a JSON pointer), 3 budget exceeded.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "torlat/json_io.hpp"

using namespace torlat;

namespace {

constexpr const char* kToolVersion = "torlat 0.1.0";

struct JobIO {
  std::string input_path;   // empty or "-" means stdin when required
  std::string output_path;  // empty means stdout
  JobLimits limits;
  std::string raw_input;    // filled by read_input
};

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_input(JobIO& io) {
  if (io.input_path.empty() || io.input_path == "-") {
    io.raw_input = read_all(std::cin);
  } else {
    std::ifstream f(io.input_path);
    if (!f) throw InvalidInput("cannot open input file '" + io.input_path + "'", "");
    io.raw_input = read_all(f);
  }
  Json j = Json::parse(io.raw_input, nullptr, false);
  if (j.is_discarded()) throw InvalidInput("input is not valid JSON", "");
  return j;
}

Json read_file_json(const std::string& path, std::string& raw_accum) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot open file '" + path + "'", "");
  std::string text = read_all(f);
  raw_accum += text;
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidInput("file '" + path + "' is not valid JSON", "");
  return j;
}

int emit(const JobIO& io, const Json& payload, const std::string& status,
         std::chrono::steady_clock::time_point start) {
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  Json out{{"status", status},
           {"payload", payload},
           {"provenance", Json{{"tool_version", kToolVersion},
                               {"input_digest", "fnv1a:" + fnv1a_hex(io.raw_input)},
                               {"elapsed_ms", elapsed}}}};
  std::string text = canonical_dump(out);
  if (io.output_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(io.output_path);
    if (!f) {
      std::cerr << "cannot open output file\n";
      return 2;
    }
    f << text << "\n";
  }
  return 0;
}

int emit_error(const JobIO& io, const std::string& status, const Json& error,
               std::chrono::steady_clock::time_point start, int code) {
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  Json out{{"status", status},
           {"error", error},
           {"provenance", Json{{"tool_version", kToolVersion},
                               {"input_digest", "fnv1a:" + fnv1a_hex(io.raw_input)},
                               {"elapsed_ms", elapsed}}}};
  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!io.output_path.empty()) {
    f.open(io.output_path);
    if (f) os = &f;
  }
  *os << canonical_dump(out) << "\n";
  return code;
}

template <typename Fn>
int run_job(JobIO& io, Fn&& fn) {
  auto start = std::chrono::steady_clock::now();
  try {
    Json payload = fn();
    return emit(io, payload, "ok", start);
  } catch (const InvalidInput& e) {
    return emit_error(io, "invalid-input",
                      Json{{"message", e.what()}, {"pointer", e.pointer}}, start, 2);
  } catch (const BudgetExceeded& e) {
    return emit_error(io, "budget-exceeded",
                      Json{{"message", e.what()}, {"required", e.required}, {"budget", e.budget}},
                      start, 3);
  } catch (const ExceedsBound& e) {
    return emit_error(io, "budget-exceeded",
                      Json{{"message", e.what()}, {"budget", e.bound}}, start, 3);
  } catch (const std::invalid_argument& e) {
    return emit_error(io, "invalid-input", Json{{"message", e.what()}, {"pointer", ""}}, start, 2);
  }
}

CohomologyOptions coh_options(const JobIO& io) {
  CohomologyOptions opt;
  opt.budget = io.limits.budget_elems;
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with integral representations, group cohomology of lattices, "
               "and tori over explicit global fields"};
  app.require_subcommand(1);

  JobIO io;
  app.add_option("--budget-elems", io.limits.budget_elems, "element-count budget")
      ->capture_default_str();
  app.add_option("--budget-dim", io.limits.budget_dim, "matrix-dimension budget")
      ->capture_default_str();
  app.add_option("--output", io.output_path, "output path (default: stdout)");

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", io.input_path, "JSON job document (default/-: stdin)");
  };

  // cohom
  auto* cohom_cmd = app.add_subcommand("cohom", "bar-resolution cohomology of a module");
  add_input(cohom_cmd);
  cohom_cmd->callback([&]() {
    std::exit(run_job(io, [&]() {
      Json j = read_input(io);
      GLattice m = glattice_from_json(j.contains("module") ? j.at("module") : j, io.limits,
                                      "/module");
      if (!j.contains("degree")) throw InvalidInput("missing key 'degree'", "/degree");
      int degree = j.at("degree").get<int>();
      CohomologyGroup h = cohomology(m, degree, coh_options(io));
      return Json{{"degree", degree},
                  {"shape", to_json(h.shape)},
                  {"representatives", h.representatives().cols()}};
    }));
  });

  // sha
  auto* sha_cmd = app.add_subcommand("sha", "lattice-level Tate-Shafarevich kernels");
  static std::string torus_path, datum_path;
  static unsigned long sha_bound = 100;
  static long sha_ell = 0;
  add_input(sha_cmd);
  sha_cmd->add_option("--torus", torus_path, "torus descriptor JSON file");
  sha_cmd->add_option("--datum", datum_path, "splitting datum JSON file");
  sha_cmd->add_option("--bound", sha_bound, "place sample bound")->capture_default_str();
  sha_cmd->add_option("--ell", sha_ell, "run the degree-2 ell-torsion pipeline");
  sha_cmd->callback([&]() {
    std::exit(run_job(io, [&]() {
      Json job;
      if (!torus_path.empty() && !datum_path.empty()) {
        job["torus"] = read_file_json(torus_path, io.raw_input);
        job["datum"] = read_file_json(datum_path, io.raw_input);
        job["bound"] = sha_bound;
        if (sha_ell > 0) job["ell"] = sha_ell;
      } else {
        job = read_input(io);
      }
      TorusDescriptor t = torus_from_json(job.at("torus"), io.limits, "/torus");
      SplittingDatum d = datum_from_json(job.at("datum"), "/datum");
      unsigned long bound = job.contains("bound") ? job.at("bound").get<unsigned long>() : 100;
      if (job.contains("ell")) {
        Int ell = int_from_json(job.at("ell"), "/ell");
        return to_json(sha2_torsion(t, ell, d, bound, coh_options(io)));
      }
      return to_json(sha1_places(t, d, bound, coh_options(io)));
    }));
  });

  // tori classify|isom|census
  auto* tori_cmd = app.add_subcommand("tori", "torus constructions and classification");
  auto* classify_cmd = tori_cmd->add_subcommand("classify", "invariants of one torus");
  add_input(classify_cmd);
  classify_cmd->callback([&]() {
    std::exit(run_job(io, [&]() {
      Json j = read_input(io);
      TorusDescriptor t = torus_from_json(j.contains("torus") ? j.at("torus") : j, io.limits,
                                          "/torus");
      Json kernel = Json::array();
      for (int e : t.action_kernel()) kernel.push_back(e);
      Json out{{"torus", to_json(t)},
               {"dimension", t.dimension()},
               {"action_kernel", kernel},
               {"faithful", t.action_kernel().size() == 1}};
      if (j.contains("inertia")) {
        Json flags = Json::array();
        for (size_t i = 0; i < j.at("inertia").size(); ++i) {
          Subgroup h;
          for (const auto& e : j.at("inertia")[i]) h.push_back(e.get<int>());
          std::sort(h.begin(), h.end());
          flags.push_back(good_reduction_at(t, h));
        }
        out["good_reduction"] = flags;
      }
      return out;
    }));
  });
  auto* isom_cmd = tori_cmd->add_subcommand("isom", "isomorphism test for two tori");
  add_input(isom_cmd);
  isom_cmd->callback([&]() {
    std::exit(run_job(io, [&]() {
      Json j = read_input(io);
      TorusDescriptor a = torus_from_json(j.at("t1"), io.limits, "/t1");
      TorusDescriptor b = torus_from_json(j.at("t2"), io.limits, "/t2");
      unsigned long bound = j.contains("bound") ? j.at("bound").get<unsigned long>() : 5;
      TorusIsomorphism iso = tori_isomorphic(a, b, bound);
      Json out{{"certificate", iso.certificate}};
      switch (iso.status) {
        case ConjugacyStatus::Found:
          out["status"] = "isomorphic";
          out["conjugator"] = to_json(iso.conjugator);
          break;
        case ConjugacyStatus::None:
          out["status"] = "not_isomorphic";
          break;
        default:
          out["status"] = "inconclusive";
      }
      return out;
    }));
  });
  auto* census_cmd = tori_cmd->add_subcommand("census", "good-reduction census");
  add_input(census_cmd);
  census_cmd->callback([&]() {
    std::exit(run_job(io, [&]() {
      Json j = read_input(io);
      GroupTable g = group_from_json(j.at("group"), io.limits, "/group");
      long d = j.at("d").get<long>();
      std::vector<Subgroup> inertia_data;
      if (j.contains("inertia_data"))
        for (size_t i = 0; i < j.at("inertia_data").size(); ++i) {
          Subgroup h;
          for (const auto& e : j.at("inertia_data")[i]) h.push_back(e.get<int>());
          std::sort(h.begin(), h.end());
          inertia_data.push_back(h);
        }
      auto classes = enumerate_good_reduction_tori(g, inertia_data, d);
      Json arr = Json::array();
      for (const auto& t : classes) arr.push_back(to_json(t));
      return Json{{"count", classes.size()}, {"classes", arr}};
    }));
  });

  // glz subgroups
  auto* glz_cmd = app.add_subcommand("glz", "finite subgroups of GL_d(Z)");
  auto* subgroups_cmd = glz_cmd->add_subcommand("subgroups", "conjugacy classification");
  static int glz_dim = 2;
  subgroups_cmd->add_option("--dim", glz_dim, "dimension (2 only)")->capture_default_str();
  subgroups_cmd->callback([&]() {
    std::exit(run_job(io, [&]() {
      if (glz_dim != 2)
        throw InvalidInput("only the dimension-2 classification is built", "/dim");
      return to_json(enumerate_finite_subgroups_gl2());
    }));
  });

  // picard / classset / condT
  auto* picard_cmd = app.add_subcommand("picard", "Picard group of an open subset of P^1");
  add_input(picard_cmd);
  picard_cmd->callback([&]() {
    std::exit(run_job(io, [&]() {
      Json j = read_input(io);
      OpenCurve c = curve_from_json(j.contains("curve") ? j.at("curve") : j, "/curve");
      return Json{{"curve", to_json(c)},
                  {"picard", to_json(picard_open_p1(c))},
                  {"units", to_json(units_open_p1(c))}};
    }));
  });
  auto* classset_cmd = app.add_subcommand("classset", "class set of a split torus");
  add_input(classset_cmd);
  classset_cmd->callback([&]() {
    std::exit(run_job(io, [&]() {
      Json j = read_input(io);
      OpenCurve c = curve_from_json(j.at("curve"), "/curve");
      long d = j.at("d").get<long>();
      return Json{{"class_set", to_json(class_set_split_torus(c, d))}};
    }));
  });
  auto* condt_cmd = app.add_subcommand("condT", "finite deletion set witnessing a trivial class set");
  add_input(condt_cmd);
  condt_cmd->callback([&]() {
    std::exit(run_job(io, [&]() {
      Json j = read_input(io);
      OpenCurve c = curve_from_json(j.at("curve"), "/curve");
      long d = j.contains("d") ? j.at("d").get<long>() : 1;
      return to_json(condition_T_split(c, d));
    }));
  });

  // classgroup
  auto* classgroup_cmd = app.add_subcommand("classgroup", "imaginary-quadratic class group");
  static std::string disc_str;
  classgroup_cmd->add_option("-D,--discriminant", disc_str, "negative fundamental discriminant");
  add_input(classgroup_cmd);
  classgroup_cmd->callback([&]() {
    std::exit(run_job(io, [&]() {
      Int d;
      if (!disc_str.empty()) {
        io.raw_input = disc_str;
        try {
          d = Int(disc_str);
        } catch (const std::invalid_argument&) {
          throw InvalidInput("discriminant is not an integer", "/D");
        }
      } else {
        Json j = read_input(io);
        d = int_from_json(j.at("D"), "/D");
      }
      auto forms = reduced_forms(d);
      Json farr = Json::array();
      for (const auto& f : forms) farr.push_back(to_json(f));
      return Json{{"discriminant", json_int(d)},
                  {"class_number", forms.size()},
                  {"shape", to_json(class_group_imaginary_quadratic(d))},
                  {"reduced_forms", farr}};
    }));
  });

  // artin-schreier
  auto* as_cmd = app.add_subcommand("artin-schreier", "canonical classes and their norm tori");
  static long as_p = 2;
  static int as_maxdeg = 3;
  as_cmd->add_option("--p", as_p, "characteristic")->capture_default_str();
  as_cmd->add_option("--max-degree", as_maxdeg, "degree bound")->capture_default_str();
  as_cmd->callback([&]() {
    std::exit(run_job(io, [&]() {
      io.raw_input = "p=" + std::to_string(as_p) + ";D=" + std::to_string(as_maxdeg);
      auto classes = enumerate_as_classes(as_p, as_maxdeg);
      Json arr = Json::array();
      for (const auto& c : classes) {
        ASNormTorus nt = as_norm_torus(as_p, c.representative);
        arr.push_back(Json{{"class", to_json(c.representative)},
                           {"defining_polynomial", nt.certificate.defining_polynomial},
                           {"derivative_constant", nt.certificate.derivative_constant},
                           {"derivative_is_unit", nt.certificate.derivative_is_unit},
                           {"torus", to_json(nt.torus)},
                           {"datum", to_json(nt.datum)}});
      }
      return Json{{"p", as_p}, {"max_degree", as_maxdeg}, {"count", classes.size()},
                  {"classes", arr}};
    }));
  });

  // residue
  auto* residue_cmd = app.add_subcommand("residue", "degree-1/2 residue maps");
  static int residue_deg = 1;
  residue_cmd->add_option("--deg", residue_deg, "degree (1 or 2)")->capture_default_str();
  add_input(residue_cmd);
  residue_cmd->callback([&]() {
    std::exit(run_job(io, [&]() {
      Json j = read_input(io);
      GlobalFieldModel model = model_from_json(j.at("model"), "/model");
      long n = j.contains("n") ? j.at("n").get<long>() : 2;
      if (residue_deg == 1) {
        SquareClass sc;
        sc.n = n;
        sc.element = element_from_json(j.at("element"), model, "/element");
        Json profile = Json::array();
        for (const Place& v : sc.element.support_places())
          profile.push_back(Json{{"place", to_json(v)}, {"residue", residue_deg1(sc, v)}});
        return Json{{"degree", 1}, {"n", n}, {"element", to_json(sc.element)},
                    {"profile", profile}};
      }
      if (residue_deg == 2) {
        SymbolClass s;
        s.n = n;
        s.a = element_from_json(j.at("a"), model, "/a");
        s.b = element_from_json(j.at("b"), model, "/b");
        SymbolCheck check = unramified_symbol_check(s, {});
        Json ram = Json::array();
        for (const Place& v : check.ramified_at) ram.push_back(to_json(v));
        Json profile = Json::array();
        std::set<Place> places;
        for (const Place& v : s.a.support_places()) places.insert(v);
        for (const Place& v : s.b.support_places()) places.insert(v);
        if (model.kind == GlobalFieldModel::Kind::RationalFunctionField)
          places.insert(Place::infinity());
        for (const Place& v : places) {
          ResidueClassValue r = residue_deg2_tame(s, v);
          profile.push_back(Json{{"place", to_json(v)},
                                 {"index", r.index},
                                 {"modulus", r.modulus},
                                 {"trivial", r.trivial()}});
        }
        Json out{{"degree", 2}, {"n", n}, {"unramified", check.unramified},
                 {"ramified_at", ram}, {"profile", profile}};
        if (check.twist_flag)
          out["twist_flag"] =
              "n > 2: the coefficient twist of the degree-2 residue target is not applied";
        return out;
      }
      throw InvalidInput("degree must be 1 or 2", "/deg");
    }));
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
