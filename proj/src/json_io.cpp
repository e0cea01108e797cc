#include "torlat/json_io.hpp"

#include <algorithm>

namespace torlat {

namespace {

[[noreturn]] void bad(const std::string& message, const std::string& pointer) {
  throw InvalidInput(message, pointer);
}

const Json& need(const Json& j, const char* key, const std::string& pointer) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'", pointer);
  return j.at(key);
}

long small_int(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer()) bad("expected an integer", pointer);
  return j.get<long>();
}

}  // namespace

Json json_int(const Int& x) {
  static const Int bound = Int(1) << 53;
  if (abs(x) <= bound) return Json(x.get_si());
  return Json(x.get_str());
}

Int int_from_json(const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      bad("not a decimal integer string", pointer);
    }
  }
  bad("expected an integer or decimal string", pointer);
}

Json to_json(const IntMat& m) {
  Json entries = Json::array();
  for (index_t i = 0; i < m.rows(); ++i)
    for (index_t j = 0; j < m.cols(); ++j) entries.push_back(json_int(m(i, j)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

IntMat intmat_from_json(const Json& j, const JobLimits& lim, const std::string& pointer) {
  long rows = small_int(need(j, "rows", pointer), pointer + "/rows");
  long cols = small_int(need(j, "cols", pointer), pointer + "/cols");
  if (rows < 0 || cols < 0) bad("negative dimensions", pointer);
  if (static_cast<unsigned long>(rows) > lim.budget_dim ||
      static_cast<unsigned long>(cols) > lim.budget_dim)
    throw BudgetExceeded(static_cast<unsigned long>(std::max(rows, cols)), lim.budget_dim,
                         "matrix dimension exceeds budget");
  const Json& entries = need(j, "entries", pointer);
  if (!entries.is_array() || entries.size() != static_cast<size_t>(rows * cols))
    bad("entry count must equal rows * cols", pointer + "/entries");
  IntMat m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long c = 0; c < cols; ++c)
      m(i, c) = int_from_json(entries[static_cast<size_t>(i * cols + c)],
                              pointer + "/entries/" + std::to_string(i * cols + c));
  return m;
}

Json to_json(const AbelianGroupShape& s) {
  Json f = Json::array();
  for (const auto& d : s.invariant_factors) f.push_back(json_int(d));
  return Json{{"invariant_factors", f}, {"free_rank", s.free_rank},
              {"pretty", s.to_string()}};
}

Json to_json(const GroupTable& g) {
  Json t = Json::array();
  for (int a = 0; a < g.n; ++a) {
    Json row = Json::array();
    for (int b = 0; b < g.n; ++b) row.push_back(g.mul(a, b));
    t.push_back(row);
  }
  return Json{{"order", g.n}, {"table", t}, {"identity", g.identity}};
}

GroupTable group_from_json(const Json& j, const JobLimits& lim, const std::string& pointer) {
  if (j.is_object() && j.contains("preset")) {
    std::string preset = need(j, "preset", pointer).get<std::string>();
    if (preset == "trivial") return GroupTable::trivial();
    if (preset == "cyclic")
      return GroupTable::cyclic(static_cast<int>(small_int(need(j, "n", pointer), pointer + "/n")));
    if (preset == "dihedral")
      return GroupTable::dihedral(
          static_cast<int>(small_int(need(j, "n", pointer), pointer + "/n")));
    if (preset == "quaternion8") return GroupTable::quaternion8();
    if (preset == "alternating4") return GroupTable::alternating4();
    if (preset == "dicyclic3") return GroupTable::dicyclic3();
    if (preset == "product") {
      const Json& factors = need(j, "factors", pointer);
      if (!factors.is_array() || factors.empty()) bad("product needs factors", pointer);
      GroupTable g = group_from_json(factors[0], lim, pointer + "/factors/0");
      for (size_t i = 1; i < factors.size(); ++i)
        g = GroupTable::direct_product(
            g, group_from_json(factors[i], lim, pointer + "/factors/" + std::to_string(i)));
      return g;
    }
    bad("unknown group preset '" + preset + "'", pointer + "/preset");
  }
  const Json& t = need(j, "table", pointer);
  if (!t.is_array()) bad("table must be an array of rows", pointer + "/table");
  if (t.size() > lim.budget_elems)
    throw BudgetExceeded(t.size(), lim.budget_elems, "group order exceeds budget");
  std::vector<std::vector<int>> rows;
  for (size_t i = 0; i < t.size(); ++i) {
    if (!t[i].is_array() || t[i].size() != t.size())
      bad("table must be square", pointer + "/table/" + std::to_string(i));
    std::vector<int> row;
    for (size_t c = 0; c < t[i].size(); ++c)
      row.push_back(static_cast<int>(
          small_int(t[i][c], pointer + "/table/" + std::to_string(i) + "/" + std::to_string(c))));
    rows.push_back(std::move(row));
  }
  try {
    return GroupTable::from_table(std::move(rows));
  } catch (const std::invalid_argument& e) {
    bad(e.what(), pointer + "/table");
  }
}

Json to_json(const GLattice& m) {
  Json torsion = Json::array();
  for (const auto& t : m.torsion) torsion.push_back(json_int(t));
  Json action = Json::array();
  for (const auto& a : m.action) action.push_back(to_json(a));
  return Json{{"group", to_json(m.group)},
              {"free_rank", m.free_rank},
              {"torsion", torsion},
              {"action_by_element", action}};
}

GLattice glattice_from_json(const Json& j, const JobLimits& lim, const std::string& pointer) {
  GroupTable g = group_from_json(need(j, "group", pointer), lim, pointer + "/group");
  long free_rank = j.contains("free_rank")
                       ? small_int(j.at("free_rank"), pointer + "/free_rank")
                       : 0;
  std::vector<Int> torsion;
  if (j.contains("torsion"))
    for (size_t i = 0; i < j.at("torsion").size(); ++i)
      torsion.push_back(
          int_from_json(j.at("torsion")[i], pointer + "/torsion/" + std::to_string(i)));
  try {
    if (j.contains("action_by_element")) {
      const Json& act = j.at("action_by_element");
      std::vector<IntMat> per;
      for (size_t i = 0; i < act.size(); ++i)
        per.push_back(
            intmat_from_json(act[i], lim, pointer + "/action_by_element/" + std::to_string(i)));
      return GLattice::from_action(g, std::move(per), free_rank, std::move(torsion));
    }
    if (j.contains("generators") && j.contains("matrices")) {
      std::vector<int> gens;
      for (size_t i = 0; i < j.at("generators").size(); ++i)
        gens.push_back(static_cast<int>(
            small_int(j.at("generators")[i], pointer + "/generators/" + std::to_string(i))));
      std::vector<IntMat> mats;
      for (size_t i = 0; i < j.at("matrices").size(); ++i)
        mats.push_back(
            intmat_from_json(j.at("matrices")[i], lim, pointer + "/matrices/" + std::to_string(i)));
      return GLattice::from_generator_action(g, gens, mats, free_rank, std::move(torsion));
    }
    if (j.contains("trivial") && j.at("trivial").get<bool>())
      return GLattice::trivial(g, free_rank);
  } catch (const std::invalid_argument& e) {
    bad(e.what(), pointer);
  }
  bad("module needs 'action_by_element', 'generators'+'matrices', or 'trivial'", pointer);
}

Json to_json(const TorusDescriptor& t) {
  return Json{{"group", to_json(t.splitting_group)},
              {"char_action", to_json(t.char_action)},
              {"dimension", t.dimension()},
              {"provenance", t.provenance}};
}

namespace {

Subgroup subgroup_from_json(const Json& j, const GroupTable& g, const std::string& pointer) {
  if (!j.is_array()) bad("subgroup must be an array of element indices", pointer);
  Subgroup h;
  for (size_t i = 0; i < j.size(); ++i) {
    long e = small_int(j[i], pointer + "/" + std::to_string(i));
    if (e < 0 || e >= g.n) bad("element index out of range", pointer + "/" + std::to_string(i));
    h.push_back(static_cast<int>(e));
  }
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  if (!is_subgroup(g, h)) bad("indices are not closed under the group law", pointer);
  return h;
}

}  // namespace

TorusDescriptor torus_from_json(const Json& j, const JobLimits& lim, const std::string& pointer) {
  try {
    if (j.is_object() && j.contains("construct")) {
      const Json& c = j.at("construct");
      std::string kind = need(c, "kind", pointer + "/construct").get<std::string>();
      if (kind == "split") {
        long d = small_int(need(c, "d", pointer + "/construct"), pointer + "/construct/d");
        GroupTable g = c.contains("group")
                           ? group_from_json(c.at("group"), lim, pointer + "/construct/group")
                           : GroupTable::trivial();
        return make_split_torus(g, d);
      }
      if (kind == "restriction" || kind == "norm_one") {
        GroupTable g = group_from_json(need(c, "group", pointer + "/construct"), lim,
                                       pointer + "/construct/group");
        Subgroup h = c.contains("subgroup")
                         ? subgroup_from_json(c.at("subgroup"), g, pointer + "/construct/subgroup")
                         : Subgroup{g.identity};
        return kind == "restriction" ? make_restriction_torus(g, h) : make_norm_one_torus(g, h);
      }
      if (kind == "product") {
        const Json& factors = need(c, "factors", pointer + "/construct");
        if (!factors.is_array() || factors.size() < 2)
          bad("product needs at least two factors", pointer + "/construct/factors");
        TorusDescriptor t = torus_from_json(factors[0], lim, pointer + "/construct/factors/0");
        for (size_t i = 1; i < factors.size(); ++i)
          t = make_product_torus(
              t, torus_from_json(factors[i], lim, pointer + "/construct/factors/" + std::to_string(i)));
        return t;
      }
      if (kind == "dual")
        return make_dual_torus(
            torus_from_json(need(c, "of", pointer + "/construct"), lim, pointer + "/construct/of"));
      bad("unknown torus constructor '" + kind + "'", pointer + "/construct/kind");
    }
    TorusDescriptor t;
    t.splitting_group = group_from_json(need(j, "group", pointer), lim, pointer + "/group");
    GLattice m = glattice_from_json(need(j, "char_action", pointer), lim, pointer + "/char_action");
    if (!m.group.same_table(t.splitting_group))
      bad("char_action group does not match the splitting group", pointer + "/char_action");
    if (!m.torsion.empty()) bad("character lattices are torsion-free", pointer + "/char_action");
    t.char_action = std::move(m);
    t.provenance = j.contains("provenance") ? j.at("provenance").get<std::string>() : "explicit";
    return t;
  } catch (const std::invalid_argument& e) {
    bad(e.what(), pointer);
  }
}

Json to_json(const Place& v) {
  switch (v.kind) {
    case Place::Kind::RationalPrime:
      return Json{{"prime", json_int(v.prime)}};
    case Place::Kind::FinitePoly: {
      Json cs = Json::array();
      for (long c : v.poly.coeffs) cs.push_back(c);
      return Json{{"poly", cs}, {"p", v.poly.p}};
    }
    default:
      return Json{{"infinity", true}};
  }
}

Place place_from_json(const Json& j, long p_hint, const std::string& pointer) {
  try {
    if (j.is_object() && j.contains("infinity")) return Place::infinity();
    if (j.is_object() && j.contains("prime"))
      return Place::rational_prime(int_from_json(j.at("prime"), pointer + "/prime"));
    if (j.is_object() && j.contains("poly")) {
      long p = j.contains("p") ? small_int(j.at("p"), pointer + "/p") : p_hint;
      if (p < 2) bad("missing characteristic for a polynomial place", pointer);
      return Place::finite_poly(fppoly_from_json(j.at("poly"), p, pointer + "/poly"));
    }
  } catch (const std::invalid_argument& e) {
    bad(e.what(), pointer);
  }
  bad("place needs 'prime', 'poly', or 'infinity'", pointer);
}

Json to_json(const GlobalFieldModel& m) {
  if (m.kind == GlobalFieldModel::Kind::Rationals) return Json{{"kind", "Q"}};
  return Json{{"kind", "Fp_t"}, {"p", m.p}};
}

GlobalFieldModel model_from_json(const Json& j, const std::string& pointer) {
  std::string kind = need(j, "kind", pointer).get<std::string>();
  if (kind == "Q") return GlobalFieldModel::rationals();
  if (kind == "Fp_t") {
    try {
      return GlobalFieldModel::fp_t(small_int(need(j, "p", pointer), pointer + "/p"));
    } catch (const std::invalid_argument& e) {
      bad(e.what(), pointer + "/p");
    }
  }
  bad("unknown model kind '" + kind + "'", pointer + "/kind");
}

FpPoly fppoly_from_json(const Json& j, long p, const std::string& pointer) {
  if (!j.is_array()) bad("polynomial must be a low-to-high coefficient array", pointer);
  std::vector<long> cs;
  for (size_t i = 0; i < j.size(); ++i)
    cs.push_back(small_int(j[i], pointer + "/" + std::to_string(i)));
  try {
    return FpPoly::from_coeffs(p, std::move(cs));
  } catch (const std::invalid_argument& e) {
    bad(e.what(), pointer);
  }
}

Json to_json(const FpPoly& f) {
  Json cs = Json::array();
  for (long c : f.coeffs) cs.push_back(c);
  return Json{{"p", f.p}, {"coeffs", cs}, {"pretty", f.to_string()}};
}

Json to_json(const SplittingDatum& d) {
  Json out{{"model", to_json(d.model)},
           {"group", to_json(d.group)},
           {"description", d.describe()}};
  Json ram = Json::array();
  for (const Place& v : d.ramified_places) ram.push_back(to_json(v));
  out["ramified_places"] = ram;
  switch (d.kind) {
    case SplittingDatum::Kind::Multiquadratic: {
      out["kind"] = "multiquadratic";
      Json ds = Json::array();
      for (const auto& x : d.discriminants) ds.push_back(json_int(x));
      out["discriminants"] = ds;
      break;
    }
    case SplittingDatum::Kind::ArtinSchreier:
      out["kind"] = "artin_schreier";
      out["a"] = to_json(d.as_element);
      break;
    default:
      out["kind"] = "kummer";
      out["n"] = d.kummer_n;
      out["num"] = to_json(d.kummer_num);
      out["den"] = to_json(d.kummer_den);
  }
  return out;
}

SplittingDatum datum_from_json(const Json& j, const std::string& pointer) {
  std::string kind = need(j, "kind", pointer).get<std::string>();
  try {
    if (kind == "multiquadratic") {
      std::vector<Int> ds;
      const Json& arr = need(j, "discriminants", pointer);
      for (size_t i = 0; i < arr.size(); ++i)
        ds.push_back(int_from_json(arr[i], pointer + "/discriminants/" + std::to_string(i)));
      return make_multiquadratic_datum(ds);
    }
    if (kind == "artin_schreier") {
      long p = small_int(need(j, "p", pointer), pointer + "/p");
      return make_artin_schreier_datum(p, fppoly_from_json(need(j, "a", pointer), p, pointer + "/a"));
    }
    if (kind == "kummer") {
      long p = small_int(need(j, "p", pointer), pointer + "/p");
      long n = small_int(need(j, "n", pointer), pointer + "/n");
      FpPoly num = fppoly_from_json(need(j, "num", pointer), p, pointer + "/num");
      FpPoly den = j.contains("den") ? fppoly_from_json(j.at("den"), p, pointer + "/den")
                                     : FpPoly::one(p);
      return make_kummer_datum(p, n, num, den);
    }
  } catch (const std::invalid_argument& e) {
    bad(e.what(), pointer);
  }
  bad("unknown datum kind '" + kind + "'", pointer + "/kind");
}

Json to_json(const OpenCurve& c) {
  Json removed = Json::array();
  for (const Place& v : c.removed) removed.push_back(to_json(v));
  return Json{{"p", c.p}, {"removed", removed}};
}

OpenCurve curve_from_json(const Json& j, const std::string& pointer) {
  OpenCurve c;
  c.p = small_int(need(j, "p", pointer), pointer + "/p");
  if (j.contains("removed"))
    for (size_t i = 0; i < j.at("removed").size(); ++i)
      c.removed.push_back(
          place_from_json(j.at("removed")[i], c.p, pointer + "/removed/" + std::to_string(i)));
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    bad(e.what(), pointer);
  }
  return c;
}

FactoredElement element_from_json(const Json& j, const GlobalFieldModel& m,
                                  const std::string& pointer) {
  try {
    if (m.kind == GlobalFieldModel::Kind::Rationals) {
      Int num = int_from_json(need(j, "num", pointer), pointer + "/num");
      Int den = j.contains("den") ? int_from_json(j.at("den"), pointer + "/den") : Int(1);
      return FactoredElement::from_fraction_q(num, den);
    }
    FpPoly num = fppoly_from_json(need(j, "num", pointer), m.p, pointer + "/num");
    FpPoly den = j.contains("den") ? fppoly_from_json(j.at("den"), m.p, pointer + "/den")
                                   : FpPoly::one(m.p);
    return FactoredElement::from_fraction(m, num, den);
  } catch (const std::invalid_argument& e) {
    bad(e.what(), pointer);
  }
}

Json to_json(const FactoredElement& f) {
  Json factors = Json::array();
  for (const auto& [v, e] : f.factors) factors.push_back(Json{{"place", to_json(v)}, {"exp", e}});
  Json out{{"model", to_json(f.model)}, {"factors", factors}};
  if (f.model.kind == GlobalFieldModel::Kind::Rationals)
    out["sign"] = f.q_sign;
  else
    out["constant"] = f.ff_constant;
  return out;
}

Json to_json(const ShaReport& r) {
  Json fam = Json::array();
  for (const auto& [h, v] : r.family_used) {
    Json sub = Json::array();
    for (int e : h) sub.push_back(e);
    fam.push_back(Json{{"subgroup", sub}, {"witness", to_json(v)}});
  }
  Json excluded = Json::array();
  for (const Place& v : r.excluded_places) excluded.push_back(to_json(v));
  Json reps = Json::array();
  for (index_t j = 0; j < r.class_coords.cols(); ++j) {
    Json coords = Json::array();
    for (index_t i = 0; i < r.class_coords.rows(); ++i)
      coords.push_back(json_int(r.class_coords(i, j)));
    reps.push_back(coords);
  }
  return Json{{"label", "lattice-level Sha"},
              {"ambient", to_json(r.ambient)},
              {"kernel", to_json(r.kernel)},
              {"kernel_generators", reps},
              {"family", fam},
              {"excluded_places", excluded},
              {"sample_bound", r.sample_bound},
              {"stabilized", r.stabilized}};
}

Json to_json(const Sha2Report& r) {
  return Json{{"label", "lattice-level Sha, degree 2"},
              {"degree2_kernel", to_json(r.degree2_kernel)},
              {"direct_torsion", to_json(r.direct_torsion)},
              {"quasisplit_torsion", to_json(r.quasisplit_torsion)},
              {"degree1_kernel_quotient_torus", to_json(r.degree1_kernel_t1)},
              {"containment_verified", r.containment_verified},
              {"notes", r.notes}};
}

Json to_json(const ConjClassTable& t) {
  Json classes = Json::array();
  for (const auto& c : t.classes) {
    Json gens = Json::array();
    for (const auto& m : c.representative.generators) gens.push_back(to_json(m));
    classes.push_back(Json{{"order", c.order}, {"label", c.label}, {"generators", gens}});
  }
  return Json{{"dimension", t.dimension}, {"count", t.classes.size()}, {"classes", classes}};
}

Json to_json(const ConditionTWitness& w) {
  Json s = Json::array();
  for (const Place& v : w.extra_removed) s.push_back(to_json(v));
  return Json{{"witness_set", s},
              {"class_set_before", to_json(w.before)},
              {"class_set_after", to_json(w.after)},
              {"verified", w.verified}};
}

Json to_json(const UnitGroup& u) {
  Json gens = Json::array();
  for (const auto& [num, den] : u.generators)
    gens.push_back(Json{{"num", to_json(num)}, {"den", to_json(den)}});
  return Json{{"torsion_order", json_int(u.torsion_order)},
              {"free_rank", u.free_rank},
              {"generators", gens}};
}

Json to_json(const QuadForm& f) {
  return Json::array({json_int(f.a), json_int(f.b), json_int(f.c)});
}

std::string canonical_dump(const Json& j) { return j.dump(); }

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace torlat
