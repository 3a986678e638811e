#pragma once

// JSON encodings for the command-line tool and for replaying runs.
// Rationals are integers when they fit in 64 bits and "p/q" strings
// otherwise.

#include "cfield/categoricity.hpp"
#include "cfield/factor.hpp"
#include "cfield/presentation.hpp"
#include "cfield/towers.hpp"

#include <json.hpp>

namespace cfield {

using Json = nlohmann::json;

Json to_json(const BigRational& r);
BigRational rational_from_json(const Json& j);

Json to_json(const UniPoly& p);  // ascending coefficients
UniPoly poly_from_json(const Json& j);

Json to_json(const FieldElement& x);
Json to_json(const FieldPoly& p);
Json field_to_json(const FieldPtr& f);
Json to_json(const FieldEmbedding& e);
Json to_json(const Factorization& f);
Json to_json(const FieldFactorization& f);

/// {"kind", "primes", "events": [{"s", "kind": "enumerate", "set", "i"} |
/// {"s", "kind": "adjoin", "poly", "names"}], "horizon"}. Sets may also be
/// given directly as "W", "P" or "N" index lists entering at stage max(i, 1).
struct ScheduleSpec {
  StageSchedule schedule;
  int horizon = 0;
};
ScheduleSpec schedule_from_json(const Json& j);
Json to_json(const StageSchedule& s, int horizon);

Json presentation_to_json(const FieldPresentation& f);

Json to_json(const OracleTape& t);  // [{"in", "out", "stage"}]
OracleTape tape_from_json(const Json& j);

Json to_json(const WitnessPolynomial& w);
Json to_json(const OrbitCertificate& c);
Json to_json(const BuiltIsomorphism& b);
Json to_json(const NormalChain& c);
Json to_json(const DiagRun& run);

}  // namespace cfield
