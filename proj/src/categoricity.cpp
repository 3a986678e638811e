#include "cfield/categoricity.hpp"

#include "cfield/linalg.hpp"
#include "cfield/towers.hpp"

#include <algorithm>
#include <sstream>

namespace cfield {

namespace {

std::vector<FieldElement> field_generators(const FieldPtr& f) {
  std::vector<FieldElement> gens = f->tower_generators();
  if (gens.empty()) gens.push_back(f->theta());
  return gens;
}

// Embedding tree over `first` followed by generators of the whole field,
// with the images of `first` pinned.
std::optional<TreeNode> pinned_path(const std::vector<FieldElement>& first, const std::vector<FieldElement>& images) {
  const FieldPtr& f = first[0].owner();
  std::vector<FieldElement> gens = first;
  for (auto& g : field_generators(f)) gens.push_back(g);
  auto search = [&](const std::vector<FieldElement>& seq) -> std::pair<bool, std::optional<TreeNode>> {
    EmbTree t(seq, f, images);
    if (!t.generates_source()) return {false, std::nullopt};
    return {true, t.first_path(t.root())};
  };
  auto [ok, path] = search(gens);
  if (ok) return path;
  gens.push_back(f->theta());
  return search(gens).second;
}

int degree_of(const FieldElement& x) { return x.is_zero() ? 1 : x.min_poly().degree(); }

}  // namespace

bool orbit_decide(const FieldElement& a, const FieldElement& b) { return find_automorphism(a, b).has_value(); }

std::optional<FieldEmbedding> find_automorphism(const FieldElement& a, const FieldElement& b) {
  if (a.owner() != b.owner()) throw AlgebraError("elements of different fields");
  if (a.min_poly() != b.min_poly()) return std::nullopt;
  const FieldPtr& f = a.owner();
  std::vector<FieldElement> gens{a};
  for (auto& g : field_generators(f)) gens.push_back(g);
  EmbTree t(gens, f, {b});
  if (!t.generates_source()) {
    gens.push_back(f->theta());
    EmbTree t2(gens, f, {b});
    auto p = t2.first_path(t2.root());
    if (!p) return std::nullopt;
    return t2.path_to_embedding(*p);
  }
  auto p = t.first_path(t.root());
  if (!p) return std::nullopt;
  return t.path_to_embedding(*p);
}

bool full_orbit_decide(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
  if (a.size() != b.size()) throw AlgebraError("tuples of different lengths");
  if (a.empty()) return true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].owner() != a[0].owner() || b[i].owner() != a[0].owner()) throw AlgebraError("elements of different fields");
  return pinned_path(a, b).has_value();
}

std::vector<FieldElement> generating_chain(const FieldPtr& f) {
  std::vector<FieldElement> gens = field_generators(f);
  if (gens.back() != f->theta()) gens.push_back(f->theta());
  std::vector<FieldElement> chain;
  FieldElement z = f->zero();
  int dz = 1;
  for (auto& x : gens) {
    int r = static_cast<int>(relative_min_poly(x, z).size()) - 1;
    if (r <= 1) continue;
    if (degree_of(x) == dz * r) {
      z = x;
    } else {
      for (long c = 1;; ++c) {
        FieldElement cand = z + x * BigRational(c);
        if (degree_of(cand) == dz * r) {
          z = cand;
          break;
        }
      }
    }
    dz *= r;
    chain.push_back(z);
    if (dz == f->degree()) break;
  }
  if (chain.empty()) chain.push_back(f->one());
  return chain;
}

FieldPoly WitnessPolynomial::at(const FieldElement& a) const {
  std::vector<FieldElement> c;
  for (auto& p : coeffs) c.push_back(eval_at(p, a));
  return FieldPoly(a.owner(), std::move(c));
}

std::string WitnessPolynomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (coeffs[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    bool unit = coeffs[k] == UniPoly{1} && k > 0;
    if (!unit) os << "(" << coeffs[k].str("A") << ")";
    if (!unit && k > 0) os << "*";
    if (k >= 1) os << "Y";
    if (k >= 2) os << "^" << k;
  }
  return first ? "0" : os.str();
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::TrueConjugate:
      return "true_conjugate";
    case Verdict::FalseConjugate:
      return "false_conjugate";
    case Verdict::NotConjugate:
      return "not_conjugate";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

OrbitCertificate orbit_certificate(const FieldElement& a, const FieldElement& b, std::size_t bound) {
  if (a.owner() != b.owner()) throw AlgebraError("elements of different fields");
  OrbitCertificate out;
  if (a.min_poly() != b.min_poly()) {
    out.verdict = Verdict::NotConjugate;
    return out;
  }
  if (auto aut = find_automorphism(a, b)) {
    out.verdict = Verdict::TrueConjugate;
    out.automorphism = aut;
    return out;
  }
  auto chain = generating_chain(a.owner());
  for (std::size_t s = 0; s < chain.size() && s < bound; ++s) {
    WitnessPolynomial w{relative_min_poly(chain[s], a), s};
    if (roots_in_field(w.at(b)).empty()) {
      out.verdict = Verdict::FalseConjugate;
      out.witness = std::move(w);
      return out;
    }
  }
  out.verdict = Verdict::Inconclusive;
  return out;
}

bool verify_certificate(const OrbitCertificate& c, const FieldElement& a, const FieldElement& b) {
  switch (c.verdict) {
    case Verdict::NotConjugate:
      return a.min_poly() != b.min_poly();
    case Verdict::TrueConjugate:
      return c.automorphism && c.automorphism->domain() == a.owner() && c.automorphism->codomain() == a.owner() &&
             (*c.automorphism)(a) == b;
    case Verdict::FalseConjugate:
      return c.witness && a.min_poly() == b.min_poly() && !roots_in_field(c.witness->at(a)).empty() &&
             roots_in_field(c.witness->at(b)).empty();
    case Verdict::Inconclusive:
      return false;
  }
  return false;
}

std::optional<std::pair<FieldElement, FieldElement>> full_orbit_reduce(const std::vector<FieldElement>& a,
                                                                       const std::vector<FieldElement>& b) {
  if (a.size() != b.size()) throw AlgebraError("tuples of different lengths");
  if (a.empty()) throw AlgebraError("empty tuples");
  const FieldPtr& f = a[0].owner();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].owner() != f || b[i].owner() != f) throw AlgebraError("elements of different fields");
  EmbTree t(a, f);
  if (!t.contains(TreeNode{b})) return std::nullopt;
  const auto& k = t.full_combination();
  FieldElement y = f->zero(), yb = f->zero();
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (k[j].is_zero()) continue;
    y += a[j] * k[j];
    yb += b[j] * k[j];
  }
  return std::make_pair(y, yb);
}

bool normal_orbit_decide(const FieldElement& a, const FieldElement& b) {
  if (a.owner() != b.owner()) throw AlgebraError("elements of different fields");
  if (!is_normal(a.owner())) throw AlgebraError("field is not normal");
  return a.min_poly() == b.min_poly();
}

// ---------------------------------------------------------------------------

FullOrbitOracle exact_orbit_oracle() { return full_orbit_decide; }

LevelFunction presentation_level_function(const FieldPresentation& f) {
  auto tree = std::make_shared<EmbTree>(f.elements(), f.field());
  return [tree](std::size_t n) { return tree->level_count(n); };
}

namespace {

struct BuilderState {
  const FieldPresentation& f;
  const FieldPresentation& ff;
  EmbTree tf, tff;
  std::vector<FieldElement> images;

  BuilderState(const FieldPresentation& a, const FieldPresentation& b)
      : f(a), ff(b), tf(a.elements(), a.field()), tff(a.elements(), b.field()) {
    if (a.size() == 0) throw AlgebraError("presentation has no labels");
    if (!tf.generates_source()) throw AlgebraError("labels do not generate the field");
    if (a.field()->degree() != b.field()->degree()) throw AlgebraError("fields of different degrees");
  }

  TreeNode prefix(std::size_t z) const {
    return TreeNode{std::vector<FieldElement>(f.elements().begin(), f.elements().begin() + static_cast<long>(z))};
  }
  TreeNode image_prefix() const { return TreeNode{images}; }

  std::vector<FieldElement> conjugates(std::size_t z) const {
    std::vector<FieldElement> out;
    for (auto& c : tf.children(prefix(z))) out.push_back(c.sigma.back());
    std::sort(out.begin(), out.end(), [this](const FieldElement& x, const FieldElement& y) { return f.less(x, y); });
    return out;
  }

  std::vector<bool> classify(std::size_t z, const std::vector<FieldElement>& conj, const FullOrbitOracle& oracle) const {
    std::vector<FieldElement> a = prefix(z).sigma;
    std::vector<FieldElement> b = a;
    a.push_back(f.element(z));
    b.push_back(f.element(z));
    std::vector<bool> out;
    for (auto& c : conj) {
      b.back() = c;
      out.push_back(oracle(a, b));
    }
    return out;
  }

  // Labels whose minimal polynomial over the earlier ones is linear have a
  // forced image.
  bool forced(std::size_t z) const { return tf.min_poly(z).size() == 2; }

  void push_forced() {
    auto kids = tff.children(image_prefix());
    if (kids.size() != 1) throw AlgebraError("forced image is not unique");
    images.push_back(kids[0].sigma.back());
  }

  FieldEmbedding finish() const {
    TreeNode path{images};
    if (!tff.contains(path)) throw AlgebraError("built map is not an embedding");
    FieldEmbedding e = tff.path_to_embedding(path);
    if (!e.is_surjective()) throw AlgebraError("built embedding is not onto");
    return e;
  }
};

FieldElement combine(const std::vector<BigRational>& k, const std::vector<FieldElement>& xs, const FieldPtr& field) {
  FieldElement y = field->zero();
  for (std::size_t j = 0; j < k.size(); ++j)
    if (!k[j].is_zero()) y += xs[j] * k[j];
  return y;
}

// p(Z, Y) with coefficients rational polynomials in u = y + c Z.
struct ZWitness {
  BigRational c;
  WitnessPolynomial p;
  FieldPoly at(const FieldElement& y, const FieldElement& zval) const { return p.at(y + zval * c); }
};

}  // namespace

BuiltIsomorphism build_isomorphism(const FieldPresentation& f, const FieldPresentation& ff,
                                   const FullOrbitOracle& oracle, const LevelFunction& level_fn) {
  BuilderState st(f, ff);
  BuiltIsomorphism out;
  const std::size_t depth = f.size();
  for (std::size_t z = 0; z < depth; ++z) {
    if (st.forced(z)) {
      st.push_forced();
      continue;
    }
    BuildStep step;
    step.label = z;
    step.conjugates = st.conjugates(z);
    step.true_conjugate = st.classify(z, step.conjugates, oracle);
    std::vector<TreeNode> dead;
    for (std::size_t i = 0; i < step.conjugates.size(); ++i)
      if (!step.true_conjugate[i]) {
        TreeNode n = st.prefix(z);
        n.sigma.push_back(step.conjugates[i]);
        dead.push_back(std::move(n));
      }
    std::size_t level = z + 1;
    if (!dead.empty()) {
      bool found = false;
      for (std::size_t n = z + 2; n <= depth && !found; ++n) {
        auto nodes = st.tf.level(n);
        if (nodes.size() != level_fn(n)) throw AlgebraError("level function disagrees with the tree");
        bool alive = false;
        for (auto& node : nodes)
          for (auto& d : dead)
            if (std::equal(d.sigma.begin(), d.sigma.end(), node.sigma.begin())) alive = true;
        if (!alive) {
          level = n;
          found = true;
        }
      }
      if (!found) throw AlgebraError("orbit oracle inconsistent: a claimed false conjugate extends to a full path");
    }
    step.level = level;
    auto rho = st.tff.first_at_level(st.image_prefix(), level);
    if (!rho) throw AlgebraError("no node of the isomorphism tree extends the current map");
    st.images.push_back(rho->sigma[z]);
    step.image = st.images.back();
    out.steps.push_back(std::move(step));
  }
  out.map = st.finish();
  return out;
}

BuiltIsomorphism build_isomorphism_by_witnesses(const FieldPresentation& f, const FieldPresentation& ff,
                                                const FullOrbitOracle& oracle) {
  BuilderState st(f, ff);
  BuiltIsomorphism out;
  const FieldPtr& F = f.field();
  const FieldPtr& FF = ff.field();
  const auto chain = generating_chain(F);
  for (std::size_t z = 0; z < f.size(); ++z) {
    if (st.forced(z)) {
      st.push_forced();
      continue;
    }
    BuildStep step;
    step.label = z;
    step.conjugates = st.conjugates(z);
    step.true_conjugate = st.classify(z, step.conjugates, oracle);

    // y generates F_s; u = y + c z generates F_s(z).
    const auto& k = st.tf.combination(z);
    FieldElement y = combine(k, st.prefix(z).sigma, F);
    FieldElement yy = combine(k, st.images, FF);
    const FieldElement& zf = f.element(z);
    const int target = degree_of(y) * (static_cast<int>(st.tf.min_poly(z).size()) - 1);
    BigRational c(1);
    while (degree_of(y + zf * c) != target) c += BigRational(1);
    FieldElement u = y + zf * c;

    std::vector<ZWitness> witnesses;
    for (std::size_t i = 0; i < step.conjugates.size(); ++i) {
      if (step.true_conjugate[i]) continue;
      bool found = false;
      for (std::size_t s = 0; s < chain.size() && !found; ++s) {
        ZWitness w{c, WitnessPolynomial{relative_min_poly(chain[s], u), s}};
        if (roots_in_field(w.at(y, step.conjugates[i])).empty()) {
          witnesses.push_back(w);
          step.witnesses.push_back(w.p);
          found = true;
        }
      }
      if (!found) throw AlgebraError("orbit oracle inconsistent: no witness for a claimed false conjugate");
    }

    std::optional<FieldElement> chosen;
    for (auto& cand : st.tff.children(st.image_prefix())) {
      const FieldElement& zz = cand.sigma.back();
      bool ok = true;
      for (auto& w : witnesses)
        if (roots_in_field(w.at(yy, zz)).empty()) {
          ok = false;
          break;
        }
      if (ok) {
        chosen = zz;
        break;
      }
    }
    if (!chosen) throw AlgebraError("no candidate image satisfies the witness polynomials");
    st.images.push_back(*chosen);
    step.image = *chosen;
    out.steps.push_back(std::move(step));
  }
  out.map = st.finish();
  return out;
}

// ---------------------------------------------------------------------------

void OracleTape::set(std::size_t input, std::size_t output, int stage) {
  if (static_cast<long>(input) > stage)
    throw AlgebraError("tape input " + std::to_string(input) + " cannot converge before stage " + std::to_string(input));
  if (entries_.count(input)) throw AlgebraError("tape already has a value for input " + std::to_string(input));
  entries_[input] = {output, stage};
}

bool OracleTape::converged(std::size_t input, int stage) const { return value(input, stage).has_value(); }

std::optional<std::size_t> OracleTape::value(std::size_t input, int stage) const {
  auto it = entries_.find(input);
  if (it == entries_.end() || it->second.second > stage) return std::nullopt;
  return it->second.first;
}

NormalChain::NormalChain(const FieldPresentation& f) : field_(f.field()), domain_(f.elements()) {
  const int n = field_->degree();
  auto add_domain = [this](const FieldElement& x) -> std::size_t {
    if (auto l = label_of(x)) return *l;
    domain_.push_back(x);
    return domain_.size() - 1;
  };
  std::vector<LinearSpan> spans;
  auto span_of = [n](const FieldElement& z) {
    LinearSpan sp(static_cast<std::size_t>(n));
    FieldElement pw = z.owner()->one();
    while (!sp.add(pw.coords())) pw *= z;
    return sp;
  };

  z_.push_back(field_->one());
  conj_.push_back({field_->one()});
  conj_labels_.push_back({add_domain(field_->one())});
  spans.push_back(span_of(field_->one()));

  for (;;) {
    const LinearSpan& cur = spans.back();
    std::optional<FieldElement> y;
    for (auto& x : domain_)
      if (!cur.express(x.coords())) {
        y = x;
        break;
      }
    if (!y) break;
    std::vector<FieldElement> gens = conjugates_count(*y).roots;
    std::stable_sort(gens.begin(), gens.end(), [&](const FieldElement& a, const FieldElement& b) {
      return (a == *y) > (b == *y);
    });
    gens.push_back(z_.back());
    FieldElement z = primitive_element(gens).y;
    std::vector<FieldElement> conj = conjugates_count(z).roots;
    std::stable_sort(conj.begin(), conj.end(),
                     [&](const FieldElement& a, const FieldElement& b) { return (a == z) > (b == z); });
    z_.push_back(z);
    conj_.push_back(conj);
    spans.push_back(span_of(z));
    std::vector<std::size_t> labels;
    for (auto& c : conj) labels.push_back(add_domain(c));
    conj_labels_.push_back(labels);
    // Close the domain inside the new stage under its automorphisms.
    const LinearSpan& sp = spans.back();
    std::vector<FieldElement> powers;
    for (std::size_t i = 0; i < domain_.size(); ++i) {
      auto coeffs = sp.express(domain_[i].coords());
      if (!coeffs) continue;
      UniPoly p(*coeffs);
      for (auto& c : conj) add_domain(eval_at(p, c));
    }
  }
  spans_ = std::move(spans);
  entry_.assign(domain_.size(), 0);
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    int s = 0;
    while (!spans_[static_cast<std::size_t>(s)].express(domain_[i].coords())) ++s;
    entry_[i] = s;
  }
}

std::size_t NormalChain::index(int s) const {
  if (s < 0) throw AlgebraError("negative stage");
  return std::min(static_cast<std::size_t>(s), z_.size() - 1);
}

std::optional<std::size_t> NormalChain::label_of(const FieldElement& x) const {
  for (std::size_t i = 0; i < domain_.size(); ++i)
    if (domain_[i] == x) return i;
  return std::nullopt;
}

bool NormalChain::in_stage(const FieldElement& x, int s) const {
  return spans_[index(s)].express(x.coords()).has_value();
}

UniPoly NormalChain::express(std::size_t i, const FieldElement& x) const {
  auto c = spans_[i].express(x.coords());
  if (!c) throw AlgebraError("element is not in the stage field");
  return UniPoly(*c);
}

FieldElement NormalChain::apply(int s, std::size_t k, const FieldElement& x) const {
  std::size_t i = index(s);
  return eval_at(express(i, x), conj_[i].at(k));
}

std::optional<std::size_t> NormalChain::restriction_index(int s, std::size_t k, int t) const {
  FieldElement img = apply(s, k, z(t));
  const auto& c = conjugates(t);
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] == img) return j;
  return std::nullopt;
}

std::size_t NormalChain::inverse_index(int s, std::size_t k) const {
  std::size_t i = index(s);
  for (std::size_t kk = 0; kk < conj_[i].size(); ++kk)
    if (apply(s, kk, conj_[i][k]) == z_[i]) return kk;
  throw AlgebraError("automorphism has no inverse");
}

std::optional<std::size_t> NormalChain::extension_of(int t, std::size_t j, int s) const {
  for (std::size_t k = 0; k < conjugates(s).size(); ++k)
    if (restriction_index(s, k, t) == j) return k;
  return std::nullopt;
}

FieldPtr NormalChain::stage_field(int s) const {
  std::size_t i = index(s);
  auto it = stage_fields_.find(i);
  if (it != stage_fields_.end()) return it->second;
  FieldPtr f = z_[i].is_rational() ? NumberField::rationals() : NumberField::create(z_[i].min_poly());
  stage_fields_[i] = f;
  return f;
}

FieldElement NormalChain::to_stage_field(int s, const FieldElement& x) const {
  return stage_field(s)->from_poly(express(index(s), x));
}

namespace {

std::optional<std::size_t> preimage_of(const std::map<std::size_t, std::size_t>& f, std::size_t tilde) {
  for (auto& [x, l] : f)
    if (l == tilde) return x;
  return std::nullopt;
}

std::optional<WitnessPolynomial> stage_witness(const NormalChain& chain, int s, const FieldElement& a,
                                               const FieldElement& b) {
  FieldElement sa = chain.to_stage_field(s, a), sb = chain.to_stage_field(s, b);
  OrbitCertificate c = orbit_certificate(sa, sb);
  if (c.verdict == Verdict::FalseConjugate) return c.witness;
  return std::nullopt;
}

}  // namespace

DiagRun diagonalize(const NormalChain& chain, const std::vector<OracleTape>& tapes, int horizon) {
  if (horizon < 0) throw AlgebraError("negative horizon");
  DiagRun run;
  run.horizon = horizon;
  for (std::size_t e = 0; e < tapes.size(); ++e) {
    run.log.emplace_back();
    run.log.back().e = e;
  }
  const auto& dom = chain.domain();

  std::map<std::size_t, std::size_t> f;
  // Fresh labels of the copy, handed out in canonical order of the new elements.
  auto fill_fresh = [&](int upto, int stage) {
    std::vector<std::size_t> fresh;
    for (std::size_t x = 0; x < dom.size(); ++x)
      if (chain.entry_stage(x) <= upto && !f.count(x)) fresh.push_back(x);
    std::sort(fresh.begin(), fresh.end(),
              [&](std::size_t a, std::size_t b) { return canonical_compare(dom[a], dom[b]) < 0; });
    for (std::size_t x : fresh) {
      f[x] = run.tilde_stage.size();
      run.tilde_stage.push_back(stage);
    }
  };
  fill_fresh(0, 0);
  run.f_history.push_back(f);

  for (int s = 0; s < horizon; ++s) {
    struct Choice {
      std::size_t e;
      int t;
      std::size_t j, sigma;
    };
    std::optional<Choice> choice;
    const int tmax = std::min<int>(s, static_cast<int>(chain.length()) - 1);
    for (std::size_t e = 0; e < tapes.size() && static_cast<int>(e) <= s && !choice; ++e) {
      if (run.log[e].satisfied) continue;
      for (int t = 1; t <= tmax && !choice; ++t) {
        bool all = true;
        for (std::size_t l : chain.conjugate_labels(t))
          if (!tapes[e].converged(l, s)) all = false;
        if (!all) continue;
        for (std::size_t j = 1; j < chain.conjugates(t).size(); ++j) {
          auto k = chain.extension_of(t, j, s);
          if (k && !chain.extension_of(t, j, s + 1)) {
            choice = Choice{e, t, j, *k};
            break;
          }
        }
      }
    }

    std::map<std::size_t, std::size_t> next = f;
    if (choice) {
      const auto& tape = tapes[choice->e];
      RequirementRecord& rec = run.log[choice->e];
      rec.satisfied = true;
      rec.stage = s + 1;
      rec.t = choice->t;
      rec.j = choice->j;
      rec.sigma = choice->sigma;
      const int t = choice->t;
      const auto& zl = chain.conjugate_labels(t);
      const std::size_t z0 = zl[0];
      const std::size_t phi_z0 = *tape.value(z0, s);
      auto value_in_f = [&](std::size_t tilde) -> std::optional<FieldElement> {
        auto x = preimage_of(f, tilde);
        if (!x) return std::nullopt;
        return dom[*x];
      };

      // Consistency of phi_e within F_t: x = q(z_t) forces phi(x) = q(phi(z_t)),
      // read through the copy's structure f_s^-1. An output outside the
      // copy built so far is itself a failure.
      std::optional<std::size_t> bad;
      auto v0 = value_in_f(phi_z0);
      if (!v0 || !eval_at(chain.z(t).min_poly(), *v0).is_zero()) bad = z0;
      for (std::size_t x = 0; x < dom.size() && !bad; ++x) {
        if (chain.entry_stage(x) > t) continue;
        auto out = tape.value(x, s);
        if (!out) continue;
        auto vx = value_in_f(*out);
        if (!vx || eval_at(chain.polynomial_in_z(t, dom[x]), *v0) != *vx) bad = x;
      }

      if (bad) {
        rec.branch = "consistency";
        rec.clash.x = *bad;
        rec.clash.tilde_label = tape.value(*bad, s).value_or(0);
        rec.clash.preimage = tape.value(*bad, s) ? preimage_of(f, *tape.value(*bad, s)) : std::nullopt;
        rec.clash.verified = true;
      } else {
        std::size_t m = 0;
        while (m < zl.size() && f.at(zl[m]) != phi_z0) ++m;
        if (m == zl.size()) throw AlgebraError("tape image of z_t is not among the conjugate images");
        rec.m = m;
        auto tau = chain.extension_of(t, m, s);
        if (!tau) {
          rec.branch = "no-automorphism";
          rec.clash.x = z0;
          rec.clash.tilde_label = phi_z0;
          rec.clash.preimage = zl[m];
          rec.clash.witness = stage_witness(chain, s, chain.domain()[z0], chain.domain()[zl[m]]);
          rec.clash.verified = !chain.extension_of(t, m, s).has_value();
        } else {
          rec.branch = "twist";
          rec.tau = *tau;
          const std::size_t sinv = chain.inverse_index(s, choice->sigma);
          for (auto& [x, l] : f) {
            if (chain.entry_stage(x) > s) continue;
            FieldElement img = chain.apply(s, *tau, chain.apply(s, sinv, dom[x]));
            auto lx = chain.label_of(img);
            if (!lx) throw AlgebraError("domain is not closed under the stage automorphisms");
            next[x] = f.at(*lx);
          }
        }
      }
    }
    f = std::move(next);
    fill_fresh(s + 1, s + 1);
    if (choice) {
      RequirementRecord& rec = run.log[choice->e];
      if (rec.branch == "twist") {
        const auto& zl = chain.conjugate_labels(rec.t);
        rec.clash.x = zl[0];
        rec.clash.tilde_label = *tapes[choice->e].value(zl[0], s);
        rec.clash.preimage = preimage_of(f, rec.clash.tilde_label);
        bool lands = rec.clash.preimage == zl[rec.j];
        bool dies = !chain.extension_of(rec.t, rec.j, s + 1).has_value();
        rec.clash.witness = stage_witness(chain, s + 1, chain.domain()[zl[0]], chain.domain()[zl[rec.j]]);
        rec.clash.verified = lands && dies && rec.clash.witness.has_value();
      }
    }
    run.f_history.push_back(f);
  }
  run.tilde_preimage.assign(run.tilde_stage.size(), 0);
  for (auto& [x, l] : f) run.tilde_preimage[l] = x;
  return run;
}

OracleTape tracking_tape(const NormalChain& chain, const std::vector<OracleTape>& others, int horizon) {
  DiagRun run = diagonalize(chain, others, horizon);
  OracleTape tape;
  for (int s = 0; s <= horizon; ++s)
    for (auto& [x, l] : run.f_history[static_cast<std::size_t>(s)])
      if (!tape.entries().count(x)) tape.set(x, l, std::max(s, static_cast<int>(x)));
  return tape;
}

OracleTape final_map_tape(const NormalChain& chain, const DiagRun& run, int stage) {
  (void)chain;
  OracleTape tape;
  for (auto& [x, l] : run.f_history.back()) tape.set(x, l, std::max(stage, static_cast<int>(x)));
  return tape;
}

bool tape_is_isomorphism(const NormalChain& chain, const DiagRun& run, const OracleTape& tape) {
  const auto& f = run.f_history.back();
  const auto& dom = chain.domain();
  const int top = static_cast<int>(chain.length()) - 1;
  if (run.horizon < top) return false;
  // alpha = f^-1 o phi must be an automorphism of F on the whole domain.
  auto alpha = [&](std::size_t x) -> std::optional<FieldElement> {
    auto it = tape.entries().find(x);
    if (it == tape.entries().end()) return std::nullopt;
    auto pre = preimage_of(f, it->second.first);
    if (!pre) return std::nullopt;
    return dom[*pre];
  };
  auto az = alpha(chain.conjugate_labels(top)[0]);
  if (!az) return false;
  const auto& conj = chain.conjugates(top);
  auto k = std::find(conj.begin(), conj.end(), *az);
  if (k == conj.end()) return false;
  const auto idx = static_cast<std::size_t>(k - conj.begin());
  for (auto& [x, l] : f) {
    auto ax = alpha(x);
    if (!ax || *ax != chain.apply(top, idx, dom[x])) return false;
  }
  return true;
}

bool decide_via_scripted_isomorphism(const NormalChain& chain, const DiagRun& run, const std::vector<OracleTape>& tapes,
                                     std::size_t e, int t, std::size_t n) {
  if (e >= tapes.size() || e >= run.log.size()) throw AlgebraError("no such tape");
  if (run.log[e].satisfied) throw AlgebraError("tape was defeated by the construction");
  if (!tape_is_isomorphism(chain, run, tapes[e])) throw AlgebraError("tape is not an isomorphism onto the copy");
  int s0 = -1;
  for (std::size_t i = 0; i < e; ++i)
    if (run.log[i].satisfied) s0 = std::max(s0, run.log[i].stage);
  if (t <= s0) throw AlgebraError("t must exceed the last stage at which a stronger requirement acted");
  if (n >= chain.conjugates(t).size()) throw AlgebraError("no such conjugate");
  int s1 = t;
  for (std::size_t l : chain.conjugate_labels(t)) s1 = std::max(s1, tapes[e].entries().at(l).second);
  return chain.extension_of(t, n, s1).has_value();
}

bool decide_pair_via_scripted_isomorphism(const NormalChain& chain, const DiagRun& run,
                                          const std::vector<OracleTape>& tapes, std::size_t e, const FieldElement& a,
                                          const FieldElement& b) {
  if (a.owner() != chain.field() || b.owner() != chain.field()) throw AlgebraError("elements of another field");
  int s = 0;
  while (!chain.in_stage(a, s) || !chain.in_stage(b, s)) {
    if (static_cast<std::size_t>(s) >= chain.length()) throw AlgebraError("elements outside the chain");
    ++s;
  }
  for (std::size_t k = 0; k < chain.conjugates(s).size(); ++k)
    if (chain.apply(s, k, a) == b && decide_via_scripted_isomorphism(chain, run, tapes, e, s, k)) return true;
  return false;
}

}  // namespace cfield
