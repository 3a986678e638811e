// Command-line front end. Every verb builds a JSON report; without --json
// a short text rendering of it is printed instead.

#include "cfield/categoricity.hpp"
#include "cfield/expr.hpp"
#include "cfield/factor.hpp"
#include "cfield/json_io.hpp"
#include "cfield/presentation.hpp"
#include "cfield/towers.hpp"
#include "cfield/trees.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace cfield;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  for (auto& part : split_top_level(text, ',')) {
    try {
      out.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw UsageError("'" + part + "' is not an integer");
    }
  }
  return out;
}

// Field description: {"tower": [{"poly", "name"}...]} or a stage schedule.
struct LoadedField {
  Json source;
  FieldPresentation presentation;
};

LoadedField load_field(const Json& j, std::uint64_t seed) {
  ScheduleSpec spec;
  if (j.contains("tower")) {
    int stage = 0;
    for (auto& step : j.at("tower")) {
      ScheduleEvent ev;
      ev.stage = ++stage;
      ev.kind = ScheduleEvent::Kind::Adjoin;
      ev.poly = step.at("poly").get<std::string>();
      if (step.contains("name")) ev.names = {step.at("name").get<std::string>()};
      spec.schedule.events.push_back(ev);
    }
    spec.horizon = stage;
  } else {
    spec = schedule_from_json(j);
  }
  PresentationOptions opts;
  opts.scramble_seed = seed;
  return {j, build_from_schedule(spec.schedule, spec.horizon, opts)};
}

LoadedField load_field_file(const std::string& path, std::uint64_t seed) { return load_field(read_json_file(path), seed); }

std::string show(const FieldPresentation& f, const FieldElement& x) {
  if (auto l = f.label_of(x)) return f.name(*l);
  return x.poly_str();
}


Json cmd_factor(const std::string& poly, const std::string& field_path, std::uint64_t seed, std::string& text) {
  std::ostringstream os;
  Json r;
  if (field_path.empty()) {
    UniPoly p = parse_rational_poly(poly, "x");
    Factorization f = factor_over_Q(p);
    r = to_json(f);
    r["over"] = "Q";
    os << "over Q: " << (f.count() == 1 && f.unit.is_one() ? "irreducible" : "reducible") << "\n";
    os << "unit " << f.unit << "\n";
    for (auto& [q, m] : f.factors) os << "  (" << q.str() << ")^" << m << "\n";
    r["irreducible"] = f.count() == 1;
  } else {
    auto lf = load_field_file(field_path, seed);
    FieldPoly p = lf.presentation.parse_poly(poly);
    FieldFactorization f = factor_over_field(p);
    r = to_json(f);
    r["over"] = field_to_json(lf.presentation.field());
    r["irreducible"] = f.count() == 1;
    os << "over a degree-" << lf.presentation.field()->degree() << " field: "
       << (f.count() == 1 ? "irreducible" : "reducible") << "\n";
    for (auto& [q, m] : f.factors) os << "  (" << q.str() << ")^" << m << "\n";
  }
  text = os.str();
  return r;
}

Json cmd_tower(const std::vector<std::string>& polys, const std::vector<std::string>& names,
               const std::string& field_path, std::uint64_t seed, std::string& text) {
  Json desc;
  if (!field_path.empty()) {
    desc = read_json_file(field_path);
  } else {
    if (polys.empty()) throw UsageError("tower needs --poly or --field");
    desc["tower"] = Json::array();
    for (std::size_t i = 0; i < polys.size(); ++i) {
      Json step = {{"poly", polys[i]}};
      if (i < names.size()) step["name"] = names[i];
      desc["tower"].push_back(step);
    }
  }
  auto lf = load_field(desc, seed);
  const auto& f = lf.presentation;
  Json r = presentation_to_json(f);
  std::ostringstream os;
  os << "degree " << f.field()->degree() << "\n";
  os << "theta minimal polynomial " << f.field()->min_poly().str("t") << "\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    os << "  " << i << " " << f.name(i) << " (stage " << f.label_stage(i) << ") = " << f.element(i).poly_str() << "\n";
  text = os.str();
  return r;
}

Json cmd_conj(const std::string& field_path, const std::string& element, std::uint64_t seed, std::string& text) {
  auto lf = load_field_file(field_path, seed);
  const auto& f = lf.presentation;
  FieldElement x = f.parse_element(element);
  QueryResult q = invariant_query(f, QueryKind::ConjugacyH, x);
  Conjugates c = conjugates_count(x);
  Json roots = Json::array();
  std::ostringstream os;
  os << "minimal polynomial " << x.min_poly().str() << "\n";
  os << "conjugates in the field: " << c.count << " of " << x.min_poly().degree() << (q.provisional ? " (provisional)" : "")
     << "\n";
  for (auto& root : c.roots) {
    roots.push_back({{"value", to_json(root)}, {"name", show(f, root)}});
    os << "  " << show(f, root) << "\n";
  }
  text = os.str();
  return {{"min_poly", to_json(x.min_poly())},
          {"count", c.count},
          {"degree", x.min_poly().degree()},
          {"stage", q.stage},
          {"provisional", q.provisional},
          {"roots", roots}};
}

Json cmd_aut(const std::string& field_path, std::uint64_t seed, std::string& text) {
  auto lf = load_field_file(field_path, seed);
  const auto& f = lf.presentation;
  auto auts = automorphisms(f.field());
  std::ostringstream os;
  os << "automorphisms: " << auts.size() << (is_normal(f.field()) ? " (normal field)" : "") << "\n";
  Json list = Json::array();
  for (std::size_t k = 0; k < auts.size(); ++k) {
    Json images = Json::array();
    os << "  " << k << ":";
    for (std::size_t i = 0; i < f.size(); ++i) {
      FieldElement y = auts[k](f.element(i));
      images.push_back(show(f, y));
      os << " " << f.name(i) << "->" << show(f, y);
    }
    os << "\n";
    list.push_back({{"embedding", to_json(auts[k])}, {"label_images", images}});
  }
  text = os.str();
  return {{"count", auts.size()}, {"normal", is_normal(f.field())}, {"automorphisms", list}};
}

Json cmd_tree(const std::string& field_path, const std::string& gens_text, int dot_depth, std::uint64_t seed,
              std::string& text) {
  auto lf = load_field_file(field_path, seed);
  const auto& f = lf.presentation;
  std::vector<FieldElement> gens;
  if (gens_text.empty())
    gens = f.elements();
  else
    for (auto& g : split_top_level(gens_text, ',')) gens.push_back(f.parse_element(g));
  if (gens.empty()) throw AlgebraError("empty generating sequence");
  EmbTree t(gens, f.field());
  auto counts = t.level_counts();
  std::ostringstream os;
  os << "generates the field: " << (t.generates_source() ? "yes" : "no") << "\n";
  os << "level counts:";
  for (auto c : counts) os << " " << c;
  os << "\nfull paths: " << counts.back() << "\n";
  Json r = {{"generates", t.generates_source()}, {"level_counts", counts}, {"full_paths", counts.back()}};
  if (dot_depth >= 0) {
    r["dot"] = t.dot(static_cast<std::size_t>(dot_depth));
    os << r["dot"].get<std::string>();
  }
  text = os.str();
  return r;
}

Json cmd_orbit(const std::string& field_path, const std::string& pair, const std::string& from, const std::string& to,
               std::uint64_t seed, std::string& text) {
  auto lf = load_field_file(field_path, seed);
  const auto& f = lf.presentation;
  std::ostringstream os;
  if (!pair.empty()) {
    auto parts = split_top_level(pair, ',');
    if (parts.size() != 2) throw UsageError("--pair takes two elements separated by a comma");
    FieldElement a = f.parse_element(parts[0]), b = f.parse_element(parts[1]);
    OrbitCertificate c = orbit_certificate(a, b);
    bool ok = verify_certificate(c, a, b);
    Json r = to_json(c);
    r["in_orbit"] = c.verdict == Verdict::TrueConjugate;
    r["certificate_verified"] = ok;
    os << "verdict " << verdict_name(c.verdict) << "\n";
    if (c.automorphism) os << "automorphism theta -> " << c.automorphism->theta_image().poly_str() << "\n";
    if (c.witness) os << "witness p(A,Y) = " << c.witness->str() << "\n";
    os << "certificate verified: " << (ok ? "yes" : "no") << "\n";
    text = os.str();
    return r;
  }
  if (from.empty() || to.empty()) throw UsageError("orbit needs --pair or both --from and --to");
  std::vector<FieldElement> a, b;
  for (auto& s : split_top_level(from, ',')) a.push_back(f.parse_element(s));
  for (auto& s : split_top_level(to, ',')) b.push_back(f.parse_element(s));
  bool member = full_orbit_decide(a, b);
  auto red = full_orbit_reduce(a, b);
  Json r = {{"in_full_orbit", member}};
  os << "tuple in the full orbit relation: " << (member ? "yes" : "no") << "\n";
  if (red) {
    r["reduced"] = {to_json(red->first), to_json(red->second)};
    r["reduced_in_orbit"] = orbit_decide(red->first, red->second);
    os << "reduced pair " << red->first.poly_str() << " , " << red->second.poly_str() << "\n";
  } else {
    r["reduced"] = nullptr;
    os << "rejected: the tuple map does not extend to an isomorphism\n";
  }
  text = os.str();
  return r;
}

Json cmd_fw(const std::vector<long>& primes, const std::string& w, const std::string& p, const std::string& n,
            int horizon, std::uint64_t seed, std::string& text) {
  Json desc = {{"primes", primes}, {"horizon", horizon}};
  if (!w.empty()) {
    if (!p.empty() || !n.empty()) throw UsageError("give either --W or --P/--N");
    desc["kind"] = "FW";
    desc["W"] = int_list(w);
  } else {
    desc["kind"] = "FPN";
    desc["P"] = int_list(p);
    desc["N"] = int_list(n);
  }
  auto lf = load_field(desc, seed);
  const auto& f = lf.presentation;
  Json r = presentation_to_json(f);
  r["schedule"] = to_json(f.schedule(), horizon);
  Json per = Json::array();
  std::ostringstream os;
  os << "degree " << f.field()->degree() << " at stage " << f.stage() << (f.pending() ? " (more events pending)" : "")
     << "\n";
  const FieldPtr& F = f.field();
  for (std::size_t i = 0; i < primes.size(); ++i) {
    FieldElement s = f.sqrt_prime(i);
    auto pos = invariant_query(f, QueryKind::RootExists, FieldPoly(F, {-s, F->zero(), F->one()}));
    auto neg = invariant_query(f, QueryKind::RootExists, FieldPoly(F, {s, F->zero(), F->one()}));
    bool orbit = orbit_decide(s, -s);
    per.push_back({{"prime", primes[i]},
                   {"sqrt_has_sqrt", pos.value == 1},
                   {"neg_sqrt_has_sqrt", neg.value == 1},
                   {"true_conjugates", orbit},
                   {"provisional", pos.provisional}});
    os << "  p=" << primes[i] << ": sqrt has a square root: " << (pos.value ? "yes" : "no")
       << ", -sqrt has one: " << (neg.value ? "yes" : "no") << ", (sqrt, -sqrt) "
       << (orbit ? "true" : "false") << " conjugates\n";
  }
  r["primes_report"] = per;
  text = os.str();
  return r;
}

Json cmd_embed(const std::string& field_path, const std::string& target_path, bool build, const std::string& separator,
               std::uint64_t seed, std::string& text) {
  auto src = load_field_file(field_path, 0);
  auto dst = load_field_file(target_path, seed);
  const auto& f = src.presentation;
  const auto& g = dst.presentation;
  std::ostringstream os;
  Json r;
  if (!separator.empty()) {
    std::set<int> c;
    for (int i : int_list(separator)) c.insert(i);
    FieldEmbedding e = separator_isomorphism(f, g, c);
    r["embedding"] = to_json(e);
    os << "separator isomorphism: theta -> " << e.theta_image().poly_str() << "\n";
  } else if (build) {
    BuiltIsomorphism tree = build_isomorphism(f, g, exact_orbit_oracle(), presentation_level_function(f));
    BuiltIsomorphism wit = build_isomorphism_by_witnesses(f, g, exact_orbit_oracle());
    r["tree_recipe"] = to_json(tree);
    r["witness_recipe"] = to_json(wit);
    r["same_map"] = tree.map == wit.map;
    os << "built isomorphism: theta -> " << tree.map.theta_image().poly_str() << "\n";
    os << "field-language recipe agrees: " << (tree.map == wit.map ? "yes" : "no") << "\n";
  } else {
    auto embs = enumerate_embeddings(f.field(), g.field());
    Json list = Json::array();
    os << "embeddings: " << embs.size() << "\n";
    for (auto& e : embs) {
      Json images = Json::array();
      os << " ";
      for (std::size_t i = 0; i < f.size(); ++i) {
        images.push_back(show(g, e(f.element(i))));
        os << " " << f.name(i) << "->" << show(g, e(f.element(i)));
      }
      os << "\n";
      Json item = {{"embedding", to_json(e)}, {"label_images", images}};
      if (!f.primes().empty() && f.primes() == g.primes()) {
        auto c = extract_separator(e, f, g);
        item["separator"] = c;
      }
      list.push_back(item);
    }
    r["count"] = embs.size();
    r["embeddings"] = list;
  }
  text = os.str();
  return r;
}

Json diag_report(const Json& field_desc, const Json& tapes_json, int horizon, bool track, std::string& text) {
  auto lf = load_field(field_desc, 0);
  NormalChain chain(lf.presentation);
  std::vector<OracleTape> tapes;
  for (auto& t : tapes_json) tapes.push_back(tape_from_json(t));
  if (track) tapes.push_back(tracking_tape(chain, tapes, horizon));
  DiagRun run = diagonalize(chain, tapes, horizon);
  Json tj = Json::array();
  for (auto& t : tapes) tj.push_back(to_json(t));
  Json r = {{"inputs", {{"field", field_desc}, {"tapes", tapes_json}, {"track", track}, {"horizon", horizon}}},
            {"chain", to_json(chain)},
            {"tapes", tj},
            {"run", to_json(run)}};
  std::ostringstream os;
  os << "normal chain of length " << chain.length() << ", copy has " << run.tilde_stage.size() << " labels by stage "
     << horizon << "\n";
  for (auto& rec : run.log) {
    os << "  R_" << rec.e << ": ";
    if (!rec.satisfied) {
      os << "open\n";
      continue;
    }
    os << "satisfied at stage " << rec.stage << " by " << rec.branch << " (t=" << rec.t << ", j=" << rec.j << ")";
    os << "; clash at label " << rec.clash.x << " -> copy label " << rec.clash.tilde_label;
    if (rec.clash.witness) os << ", witness " << rec.clash.witness->str();
    os << (rec.clash.verified ? ", verified" : ", unverified") << "\n";
  }
  text = os.str();
  return r;
}

Json cmd_diag(const std::string& field_path, const std::string& tapes_path, int horizon, bool track,
              const std::string& replay_path, std::string& text) {
  if (!replay_path.empty()) {
    Json saved = read_json_file(replay_path);
    const Json& in = saved.at("inputs");
    std::string sub;
    Json again = diag_report(in.at("field"), in.at("tapes"), in.at("horizon").get<int>(), in.at("track").get<bool>(), sub);
    bool same = again.dump() == saved.dump();
    text = sub + "replay identical: " + (same ? "yes" : "no") + "\n";
    return {{"replay_identical", same}, {"report", again}};
  }
  if (field_path.empty()) throw UsageError("diag needs --field or --replay");
  Json tapes = tapes_path.empty() ? Json::array() : read_json_file(tapes_path);
  if (tapes.is_object()) tapes = tapes.at("tapes");
  return diag_report(read_json_file(field_path), tapes, horizon, track, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in algebraic number fields and their presentations"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_out = false;
  std::uint64_t seed = 0;
  app.add_flag("--json", json_out, "machine-readable output");
  app.add_option("--seed", seed, "relabelling seed for scrambled copies (0 keeps canonical order)");

  std::string poly, field, element, gens, pair, from, to, target, tapes, replay, separator, w, p, n;
  std::vector<std::string> polys, names;
  std::vector<long> primes;
  int dot = -1, horizon = 10;
  bool build = false, track = false;

  auto* factor = app.add_subcommand("factor", "factor a polynomial over Q or over a field");
  factor->add_option("--poly", poly, "polynomial in x")->required();
  factor->add_option("--field", field, "field description file (default Q)");
  std::string over;
  factor->add_option("--over", over, "Q (the default)");

  auto* tower = app.add_subcommand("tower", "build a field by successive root adjunction");
  tower->add_option("--poly", polys, "polynomials in x over the field built so far");
  tower->add_option("--name", names, "names for the adjoined roots");
  tower->add_option("--field", field, "field description file");

  auto* conj = app.add_subcommand("conj", "conjugates of an element inside the field");
  conj->add_option("--field", field)->required();
  conj->add_option("--element", element)->required();

  auto* aut = app.add_subcommand("aut", "automorphisms of a field");
  aut->add_option("--field", field)->required();

  auto* tree = app.add_subcommand("tree", "embedding tree of the field into itself");
  tree->add_option("--field", field)->required();
  tree->add_option("--gens", gens, "generating sequence (default: all labels)");
  tree->add_option("--dot", dot, "emit Graphviz down to this level");

  auto* orbit = app.add_subcommand("orbit", "orbit relation with certificates");
  orbit->add_option("--field", field)->required();
  orbit->add_option("--pair", pair, "two elements, comma separated");
  orbit->add_option("--from", from, "tuple, comma separated");
  orbit->add_option("--to", to, "tuple, comma separated");

  auto* fw = app.add_subcommand("fw", "build an F_W or F_{P,N} field from enumerated sets");
  fw->add_option("--primes", primes)->required()->delimiter(',');
  fw->add_option("--W", w, "indices in W");
  fw->add_option("--P", p, "indices in P");
  fw->add_option("--N", n, "indices in N");
  fw->add_option("--horizon", horizon);

  auto* embed = app.add_subcommand("embed", "embeddings and isomorphisms between two fields");
  embed->add_option("--field", field)->required();
  embed->add_option("--target", target)->required();
  embed->add_flag("--build", build, "run the stagewise isomorphism builder");
  embed->add_option("--separator", separator, "separator set C for F_{P,N} fields");

  auto* diag = app.add_subcommand("diag", "diagonalise against scripted partial maps");
  diag->add_option("--field", field);
  diag->add_option("--tapes", tapes, "JSON list of tapes");
  diag->add_option("--horizon", horizon);
  diag->add_flag("--track", track, "add a tape tracking the construction's own map");
  diag->add_option("--replay", replay, "re-run a saved report and compare");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::string text;
    Json r;
    if (*factor) {
      if (!over.empty() && over != "Q") throw UsageError("--over accepts only Q; use --field for other fields");
      r = cmd_factor(poly, field, seed, text);
    } else if (*tower) {
      r = cmd_tower(polys, names, field, seed, text);
    } else if (*conj) {
      r = cmd_conj(field, element, seed, text);
    } else if (*aut) {
      r = cmd_aut(field, seed, text);
    } else if (*tree) {
      r = cmd_tree(field, gens, dot, seed, text);
    } else if (*orbit) {
      r = cmd_orbit(field, pair, from, to, seed, text);
    } else if (*fw) {
      r = cmd_fw(primes, w, p, n, horizon, seed, text);
    } else if (*embed) {
      r = cmd_embed(field, target, build, separator, seed, text);
    } else if (*diag) {
      r = cmd_diag(field, tapes, horizon, track, replay, text);
    }
    if (json_out)
      std::cout << r.dump(2) << "\n";
    else
      std::cout << text;
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const AlgebraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 1;
  }
}
