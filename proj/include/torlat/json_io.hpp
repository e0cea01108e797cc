#pragma once

#include <json.hpp>
#include <string>

#include "torlat/artinschreier.hpp"
#include "torlat/classsets.hpp"
#include "torlat/errors.hpp"
#include "torlat/glzfin.hpp"
#include "torlat/residues.hpp"
#include "torlat/sha.hpp"

// JSON schemas for the CLI: matrices as row-major integer arrays with
// explicit dimensions, groups as multiplication tables or presets, modules
// with per-generator action matrices (closure computed and verified on
// load), polynomials as low-to-high coefficient lists. Output is canonical:
// nlohmann's std::map-backed objects give sorted keys, dumps carry no
// insignificant whitespace, and integers above 2^53 are emitted as decimal
// strings.

namespace torlat {

using Json = nlohmann::json;

struct JobLimits {
  unsigned long budget_elems = 4096;
  unsigned long budget_dim = 128;
};

// integer policy: JSON number when |x| <= 2^53, decimal string otherwise
Json json_int(const Int& x);
Int int_from_json(const Json& j, const std::string& pointer);

Json to_json(const IntMat& m);
IntMat intmat_from_json(const Json& j, const JobLimits& lim, const std::string& pointer);

Json to_json(const AbelianGroupShape& s);

Json to_json(const GroupTable& g);
GroupTable group_from_json(const Json& j, const JobLimits& lim, const std::string& pointer);

Json to_json(const GLattice& m);
GLattice glattice_from_json(const Json& j, const JobLimits& lim, const std::string& pointer);

Json to_json(const TorusDescriptor& t);
TorusDescriptor torus_from_json(const Json& j, const JobLimits& lim, const std::string& pointer);

Json to_json(const Place& v);
Place place_from_json(const Json& j, long p_hint, const std::string& pointer);

Json to_json(const GlobalFieldModel& m);
GlobalFieldModel model_from_json(const Json& j, const std::string& pointer);

Json to_json(const SplittingDatum& d);
SplittingDatum datum_from_json(const Json& j, const std::string& pointer);

Json to_json(const OpenCurve& c);
OpenCurve curve_from_json(const Json& j, const std::string& pointer);

FpPoly fppoly_from_json(const Json& j, long p, const std::string& pointer);
Json to_json(const FpPoly& f);

FactoredElement element_from_json(const Json& j, const GlobalFieldModel& m,
                                  const std::string& pointer);
Json to_json(const FactoredElement& f);

Json to_json(const ShaReport& r);
Json to_json(const Sha2Report& r);
Json to_json(const ConjClassTable& t);
Json to_json(const ConditionTWitness& w);
Json to_json(const UnitGroup& u);
Json to_json(const QuadForm& f);

// canonical compact dump with sorted keys
std::string canonical_dump(const Json& j);

// FNV-1a 64-bit digest, hex encoded: the input digest in provenance blocks
std::string fnv1a_hex(const std::string& data);

}  // namespace torlat
