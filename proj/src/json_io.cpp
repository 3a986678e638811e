#include "cfield/json_io.hpp"

#include "cfield/expr.hpp"

#include <limits>

namespace cfield {

Json to_json(const BigRational& r) {
  if (r.is_integer() && r.numerator().fits_slong_p()) return r.numerator().get_si();
  return r.str();
}

BigRational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return BigRational(j.get<long>());
  if (j.is_string()) return BigRational::parse(j.get<std::string>());
  throw ParseError("expected a rational, got " + j.dump());
}

Json to_json(const UniPoly& p) {
  Json a = Json::array();
  for (auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

UniPoly poly_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a coefficient array");
  std::vector<BigRational> c;
  for (auto& x : j) c.push_back(rational_from_json(x));
  return UniPoly(std::move(c));
}

Json to_json(const FieldElement& x) {
  Json c = Json::array();
  for (auto& v : x.coords()) c.push_back(to_json(v));
  return {{"coords", c}, {"poly", x.poly_str()}};
}

Json to_json(const FieldPoly& p) {
  Json c = Json::array();
  for (auto& x : p.coeffs()) c.push_back(to_json(x));
  return {{"coeffs", c}, {"str", p.str()}};
}

Json field_to_json(const FieldPtr& f) {
  Json tower = Json::array();
  for (auto& step : f->tower_log()) {
    Json gen = Json::array();
    for (auto& v : step.generator) gen.push_back(to_json(v));
    Json rel = Json::array();
    for (auto& coeff : step.relative_min_poly) {
      Json cc = Json::array();
      for (auto& v : coeff) cc.push_back(to_json(v));
      rel.push_back(cc);
    }
    tower.push_back({{"generator", gen}, {"relative_min_poly", rel}});
  }
  return {{"degree", f->degree()},
          {"theta_min_poly", to_json(f->min_poly())},
          {"theta_min_poly_str", f->min_poly().str("t")},
          {"tower", tower}};
}

Json to_json(const FieldEmbedding& e) {
  return {{"domain_degree", e.domain()->degree()},
          {"codomain_degree", e.codomain()->degree()},
          {"theta_image", to_json(e.theta_image())}};
}

Json to_json(const Factorization& f) {
  Json fs = Json::array();
  for (auto& [p, m] : f.factors) fs.push_back({{"poly", to_json(p)}, {"str", p.str()}, {"multiplicity", m}});
  return {{"unit", to_json(f.unit)}, {"factors", fs}};
}

Json to_json(const FieldFactorization& f) {
  Json fs = Json::array();
  for (auto& [p, m] : f.factors) fs.push_back({{"poly", to_json(p)}, {"multiplicity", m}});
  return {{"unit", to_json(f.unit)}, {"factors", fs}};
}

ScheduleSpec schedule_from_json(const Json& j) {
  ScheduleSpec out;
  StageSchedule& s = out.schedule;
  s.kind = j.value("kind", std::string("custom"));
  if (j.contains("primes"))
    for (auto& p : j.at("primes")) s.primes.push_back(p.get<long>());
  if (j.contains("events")) {
    for (auto& e : j.at("events")) {
      ScheduleEvent ev;
      ev.stage = e.at("s").get<int>();
      std::string kind = e.at("kind").get<std::string>();
      if (kind == "enumerate") {
        ev.kind = ScheduleEvent::Kind::Enumerate;
        ev.set = e.at("set").get<std::string>();
        ev.index = e.at("i").get<int>();
      } else if (kind == "adjoin") {
        ev.kind = ScheduleEvent::Kind::Adjoin;
        ev.poly = e.at("poly").get<std::string>();
        if (e.contains("names")) ev.names = e.at("names").get<std::vector<std::string>>();
      } else {
        throw ParseError("unknown event kind '" + kind + "'");
      }
      s.events.push_back(std::move(ev));
    }
  }
  std::vector<ScheduleEvent> extra;
  for (const char* name : {"W", "P", "N"})
    if (j.contains(name)) {
      auto set = EnumeratedSet::from_indices(name, j.at(name).get<std::vector<int>>());
      for (auto& [i, stage] : set.members())
        extra.push_back({stage, ScheduleEvent::Kind::Enumerate, name, i, "", {}});
    }
  std::stable_sort(extra.begin(), extra.end(), [](auto& a, auto& b) { return a.stage < b.stage; });
  for (auto& ev : extra) {
    if (ev.stage < s.last_stage()) ev.stage = s.last_stage();
    s.events.push_back(ev);
  }
  out.horizon = j.value("horizon", s.last_stage());
  s.validate();
  return out;
}

Json to_json(const StageSchedule& s, int horizon) {
  Json ev = Json::array();
  for (auto& e : s.events) {
    if (e.kind == ScheduleEvent::Kind::Enumerate)
      ev.push_back({{"s", e.stage}, {"kind", "enumerate"}, {"set", e.set}, {"i", e.index}});
    else
      ev.push_back({{"s", e.stage}, {"kind", "adjoin"}, {"poly", e.poly}, {"names", e.names}});
  }
  return {{"kind", s.kind}, {"primes", s.primes}, {"events", ev}, {"horizon", horizon}};
}

Json presentation_to_json(const FieldPresentation& f) {
  Json labels = Json::array();
  for (std::size_t i = 0; i < f.size(); ++i)
    labels.push_back({{"label", i}, {"name", f.name(i)}, {"stage", f.label_stage(i)}, {"value", to_json(f.element(i))}});
  Json snaps = Json::array();
  for (auto& s : f.snapshots()) snaps.push_back({{"stage", s.stage}, {"degree", s.field->degree()}});
  Json sets = Json::object();
  for (auto& [name, set] : f.sets()) {
    Json m = Json::array();
    for (auto& [i, stage] : set.members()) m.push_back({{"i", i}, {"stage", stage}});
    sets[name] = m;
  }
  return {{"field", field_to_json(f.field())},
          {"stage", f.stage()},
          {"pending", f.pending()},
          {"labels", labels},
          {"snapshots", snaps},
          {"sets", sets}};
}

Json to_json(const OracleTape& t) {
  Json a = Json::array();
  for (auto& [in, v] : t.entries()) a.push_back({{"in", in}, {"out", v.first}, {"stage", v.second}});
  return a;
}

OracleTape tape_from_json(const Json& j) {
  OracleTape t;
  for (auto& e : j) t.set(e.at("in").get<std::size_t>(), e.at("out").get<std::size_t>(), e.at("stage").get<int>());
  return t;
}

Json to_json(const WitnessPolynomial& w) {
  Json c = Json::array();
  for (auto& p : w.coeffs) c.push_back(to_json(p));
  return {{"coeffs", c}, {"chain_index", w.chain_index}, {"str", w.str()}};
}

Json to_json(const OrbitCertificate& c) {
  Json j = {{"verdict", verdict_name(c.verdict)}};
  if (c.automorphism) j["automorphism"] = to_json(*c.automorphism);
  if (c.witness) j["witness"] = to_json(*c.witness);
  return j;
}

Json to_json(const BuiltIsomorphism& b) {
  Json steps = Json::array();
  for (auto& s : b.steps) {
    Json conj = Json::array();
    for (auto& c : s.conjugates) conj.push_back(to_json(c));
    Json w = Json::array();
    for (auto& x : s.witnesses) w.push_back(to_json(x));
    steps.push_back({{"label", s.label},
                     {"image", to_json(s.image)},
                     {"conjugates", conj},
                     {"true_conjugate", s.true_conjugate},
                     {"level", s.level},
                     {"witnesses", w}});
  }
  return {{"map", to_json(b.map)}, {"steps", steps}};
}

Json to_json(const NormalChain& c) {
  Json stages = Json::array();
  for (std::size_t s = 0; s < c.length(); ++s) {
    int si = static_cast<int>(s);
    stages.push_back({{"z", to_json(c.z(si))},
                      {"min_poly", c.z(si).min_poly().str()},
                      {"conjugate_labels", c.conjugate_labels(si)}});
  }
  Json dom = Json::array();
  for (std::size_t i = 0; i < c.domain().size(); ++i)
    dom.push_back({{"label", i}, {"entry_stage", c.entry_stage(i)}, {"value", to_json(c.domain()[i])}});
  return {{"stages", stages}, {"domain", dom}};
}

Json to_json(const DiagRun& run) {
  Json log = Json::array();
  for (auto& r : run.log) {
    Json j = {{"e", r.e}, {"satisfied", r.satisfied}};
    if (r.satisfied) {
      j["stage"] = r.stage;
      j["branch"] = r.branch;
      j["t"] = r.t;
      j["j"] = r.j;
      j["m"] = r.m;
      j["sigma"] = r.sigma;
      j["tau"] = r.tau;
      Json c = {{"x", r.clash.x}, {"tilde_label", r.clash.tilde_label}, {"verified", r.clash.verified}};
      c["preimage"] = r.clash.preimage ? Json(*r.clash.preimage) : Json();
      if (r.clash.witness) c["witness"] = to_json(*r.clash.witness);
      j["clash"] = c;
    }
    log.push_back(j);
  }
  Json hist = Json::array();
  for (auto& f : run.f_history) {
    Json m = Json::array();
    for (auto& [x, l] : f) m.push_back({x, l});
    hist.push_back(m);
  }
  return {{"horizon", run.horizon},
          {"log", log},
          {"f_history", hist},
          {"tilde_stage", run.tilde_stage},
          {"tilde_preimage", run.tilde_preimage}};
}

}  // namespace cfield
