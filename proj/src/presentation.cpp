#include "cfield/presentation.hpp"

#include "cfield/expr.hpp"
#include "cfield/towers.hpp"
#include "cfield/trees.hpp"

#include <algorithm>
#include <numeric>

namespace cfield {

EnumeratedSet EnumeratedSet::from_indices(std::string name, const std::vector<int>& indices, int first_stage) {
  EnumeratedSet s(std::move(name));
  std::vector<int> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  for (int i : sorted) s.add(i, std::max(i, first_stage));
  return s;
}

void EnumeratedSet::add(int i, int stage) {
  if (i < 0) throw AlgebraError("negative index enumerated into " + name_);
  if (i > stage)
    throw AlgebraError("index " + std::to_string(i) + " cannot enter " + name_ + " before stage " + std::to_string(i));
  if (contains(i)) throw AlgebraError("index " + std::to_string(i) + " enumerated twice into " + name_);
  members_.emplace_back(i, stage);
}

bool EnumeratedSet::contains(int i) const { return entry_stage(i).has_value(); }

bool EnumeratedSet::contains_by(int i, int stage) const {
  auto s = entry_stage(i);
  return s && *s <= stage;
}

std::optional<int> EnumeratedSet::entry_stage(int i) const {
  for (auto& [m, s] : members_)
    if (m == i) return s;
  return std::nullopt;
}

std::set<int> EnumeratedSet::indices() const {
  std::set<int> out;
  for (auto& m : members_) out.insert(m.first);
  return out;
}

namespace {

bool is_small_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::set<std::string> allowed_sets(const std::string& kind) {
  if (kind == "FW") return {"W"};
  if (kind == "FPN") return {"P", "N"};
  return {};
}

}  // namespace

void StageSchedule::validate() const {
  if (kind != "FW" && kind != "FPN" && kind != "custom") throw AlgebraError("unknown schedule kind '" + kind + "'");
  std::set<long> seen;
  for (long p : primes) {
    if (!is_small_prime(p)) throw AlgebraError(std::to_string(p) + " is not a prime");
    if (!seen.insert(p).second) throw AlgebraError("prime " + std::to_string(p) + " listed twice");
  }
  if (kind != "custom" && primes.empty()) throw AlgebraError(kind + " schedule needs at least one prime");
  std::set<std::string> names = allowed_sets(kind);
  std::map<std::string, std::set<int>> members;
  int last = 0;
  for (auto& ev : events) {
    if (ev.stage < 1 || ev.stage < last) throw AlgebraError("stage numbers must be positive and nondecreasing");
    last = ev.stage;
    if (ev.kind == ScheduleEvent::Kind::Adjoin) {
      if (kind != "custom") throw AlgebraError("adjoin events are only allowed in custom schedules");
      if (ev.poly.empty()) throw AlgebraError("adjoin event without a polynomial");
      continue;
    }
    if (kind != "custom" && !names.count(ev.set)) throw AlgebraError("set '" + ev.set + "' is not used by " + kind);
    if (ev.index < 0 || ev.index > ev.stage)
      throw AlgebraError("index " + std::to_string(ev.index) + " cannot be enumerated at stage " +
                         std::to_string(ev.stage));
    if (kind != "custom" && static_cast<std::size_t>(ev.index) >= primes.size())
      throw AlgebraError("index " + std::to_string(ev.index) + " refers to an unlisted prime");
    if (!members[ev.set].insert(ev.index).second)
      throw AlgebraError("index " + std::to_string(ev.index) + " enumerated twice into " + ev.set);
  }
  for (int i : members["P"])
    if (members["N"].count(i)) throw AlgebraError("P and N both contain " + std::to_string(i));
}

FieldPresentation::FieldPresentation(PresentationOptions opts)
    : opts_(opts), rng_state_(opts.scramble_seed), field_(NumberField::rationals()) {}

const FieldElement& FieldPresentation::element(std::size_t label) const {
  if (label >= labels_.size()) throw AlgebraError("label " + std::to_string(label) + " is not in the domain yet");
  return labels_[label];
}

std::optional<std::size_t> FieldPresentation::label_of(const FieldElement& x) const {
  if (x.owner() != field_) return std::nullopt;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == x) return i;
  return std::nullopt;
}

std::optional<std::size_t> FieldPresentation::label_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool FieldPresentation::less(const FieldElement& a, const FieldElement& b) const {
  auto la = label_of(a), lb = label_of(b);
  if (la && lb) return *la < *lb;
  if (la || lb) return la.has_value();
  return canonical_compare(a, b) < 0;
}

const FieldElement& FieldPresentation::sqrt_prime(std::size_t i) const {
  if (i >= sqrt_label_.size()) throw AlgebraError("index " + std::to_string(i) + " refers to an unlisted prime");
  return labels_[sqrt_label_[i]];
}

std::optional<std::size_t> FieldPresentation::deep_root(std::size_t i) const {
  auto it = deep_root_.find(i);
  if (it == deep_root_.end()) return std::nullopt;
  return it->second;
}

FieldElement FieldPresentation::designated_sqrt(const FieldElement& a) const {
  auto roots = roots_in_field(FieldPoly(field_, {-a, field_->zero(), field_->one()}));
  if (roots.empty()) throw AlgebraError("no square root of " + a.poly_str() + " in the field");
  return *std::min_element(roots.begin(), roots.end(),
                           [this](const FieldElement& x, const FieldElement& y) { return less(x, y); });
}

FieldPoly FieldPresentation::parse_poly(const std::string& text) const {
  ExprContext ctx;
  ctx.field = field_;
  ctx.lookup = [this](const std::string& name) -> std::optional<FieldElement> {
    if (auto l = label_of(name)) return labels_[*l];
    if (name.size() > 1 && name[0] == 'z' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
      std::size_t k = std::stoul(name.substr(1));
      if (k < labels_.size()) return labels_[k];
    }
    return std::nullopt;
  };
  ctx.sqrt = [this](const FieldElement& a) { return designated_sqrt(a); };
  return parse_field_poly(text, ctx);
}

FieldElement FieldPresentation::parse_element(const std::string& text) const {
  FieldPoly p = parse_poly(text);
  if (p.degree() > 0) throw ParseError("expected an element, got a polynomial");
  return p.is_zero() ? field_->zero() : p.coeff(0);
}

void FieldPresentation::relabel_through(const FieldEmbedding& e) {
  for (auto& x : labels_) x = e(x);
  for (auto& s : snapshots_) s.into_current = e.after(s.into_current);
  field_ = e.codomain();
}

void FieldPresentation::snapshot(int stage) {
  if (!snapshots_.empty() && snapshots_.back().stage == stage) {
    snapshots_.back() = Snapshot{stage, field_, FieldEmbedding::identity(field_)};
    return;
  }
  snapshots_.push_back(Snapshot{stage, field_, FieldEmbedding::identity(field_)});
}

std::vector<std::size_t> FieldPresentation::batch_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (opts_.scramble_seed == 0) return order;
  // splitmix64 keeps the permutation identical across standard libraries.
  auto next = [this] {
    std::uint64_t z = (rng_state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[next() % i]);
  return order;
}

std::size_t FieldPresentation::adjoin(const FieldPoly& p, int stage, const std::vector<std::string>& names) {
  if (p.field() != field_) throw AlgebraError("polynomial is not over the presentation's current field");
  Extension ext = adjoin_root(p);
  if (ext.grew) relabel_through(ext.embedding);
  std::vector<FieldElement> fresh;
  for (auto& r : roots_in_field(p.map(ext.embedding)))
    if (!label_of(r)) fresh.push_back(r);
  if (fresh.empty()) return *label_of(ext.root);
  std::size_t first = labels_.size();
  std::size_t k = 0;
  for (std::size_t idx : batch_order(fresh.size())) {
    labels_.push_back(fresh[idx]);
    label_stage_.push_back(stage);
    names_.push_back(k < names.size() ? names[k] : "z" + std::to_string(labels_.size() - 1));
    ++k;
  }
  return first;
}

FieldPresentation build_from_schedule(const StageSchedule& schedule, int horizon, const PresentationOptions& opts) {
  schedule.validate();
  FieldPresentation fp(opts);
  fp.schedule_ = schedule;
  fp.primes_ = schedule.primes;
  for (auto& name : allowed_sets(schedule.kind)) fp.sets_.emplace(name, EnumeratedSet(name));
  const FieldPtr q = fp.field_;

  fp.sqrt_label_.assign(fp.primes_.size(), 0);
  for (std::size_t i : fp.batch_order(fp.primes_.size())) {
    FieldPoly p(fp.field_, UniPoly{-fp.primes_[i], 0, 1});
    std::string name = "sqrt(" + std::to_string(fp.primes_[i]) + ")";
    fp.sqrt_label_[i] = fp.adjoin(p, 0, {name, "-" + name});
  }
  // With scrambled labels the lesser root may have been named "-sqrt(p)".
  for (std::size_t i = 0; i < fp.primes_.size(); ++i) {
    std::string name = "sqrt(" + std::to_string(fp.primes_[i]) + ")";
    fp.names_[fp.sqrt_label_[i]] = name;
    fp.names_[fp.sqrt_label_[i] + 1] = "-" + name;
  }
  fp.snapshot(0);

  for (auto& ev : schedule.events) {
    if (ev.stage > horizon) {
      fp.pending_ = true;
      continue;
    }
    if (ev.kind == ScheduleEvent::Kind::Adjoin) {
      fp.adjoin(fp.parse_poly(ev.poly), ev.stage, ev.names);
    } else {
      fp.sets_[ev.set].add(ev.index, ev.stage);
      if (schedule.kind != "custom") {
        const std::size_t i = static_cast<std::size_t>(ev.index);
        FieldElement target = fp.sqrt_prime(i);
        if (ev.set == "N") target = -target;
        FieldPoly p(fp.field_, {-target, fp.field_->zero(), fp.field_->one()});
        std::string name = "r" + std::to_string(fp.primes_[i]);
        fp.deep_root_[i] = fp.adjoin(p, ev.stage, {name, "-" + name});
      }
    }
    fp.snapshot(ev.stage);
  }
  fp.stage_ = horizon;
  return fp;
}

FieldPresentation build_fw(const std::vector<long>& primes, const EnumeratedSet& w, int horizon,
                           const PresentationOptions& opts) {
  StageSchedule s;
  s.kind = "FW";
  s.primes = primes;
  for (auto& [i, stage] : w.members()) s.events.push_back({stage, ScheduleEvent::Kind::Enumerate, "W", i, "", {}});
  std::sort(s.events.begin(), s.events.end(), [](auto& a, auto& b) { return a.stage < b.stage; });
  return build_from_schedule(s, horizon, opts);
}

FieldPresentation build_fpn(const std::vector<long>& primes, const EnumeratedSet& p, const EnumeratedSet& n,
                            int horizon, const PresentationOptions& opts) {
  StageSchedule s;
  s.kind = "FPN";
  s.primes = primes;
  for (auto& [i, stage] : p.members()) s.events.push_back({stage, ScheduleEvent::Kind::Enumerate, "P", i, "", {}});
  for (auto& [i, stage] : n.members()) s.events.push_back({stage, ScheduleEvent::Kind::Enumerate, "N", i, "", {}});
  std::sort(s.events.begin(), s.events.end(), [](auto& a, auto& b) { return a.stage < b.stage; });
  return build_from_schedule(s, horizon, opts);
}

FieldPresentation present_field(const FieldPtr& f) {
  FieldPresentation fp;
  fp.field_ = f;
  std::vector<FieldElement> gens = f->tower_generators();
  if (gens.empty()) gens.push_back(f->theta());
  for (auto& g : gens)
    for (auto& r : conjugates_count(g).roots)
      if (!fp.label_of(r)) {
        fp.labels_.push_back(r);
        fp.label_stage_.push_back(0);
        fp.names_.push_back("z" + std::to_string(fp.labels_.size() - 1));
      }
  fp.snapshot(0);
  return fp;
}

QueryResult invariant_query(const FieldPresentation& f, QueryKind kind, const FieldPoly& p) {
  if (p.field() != f.field()) throw AlgebraError("polynomial is not over the presentation's field");
  if (p.degree() < 1) throw AlgebraError("query needs a nonconstant polynomial");
  QueryResult r;
  r.stage = f.stage();
  r.provisional = f.pending();
  switch (kind) {
    case QueryKind::Splitting: {
      int count = 0;
      for (auto& fm : factor_over_field(p).factors) count += fm.second;
      r.value = count > 1;
      break;
    }
    case QueryKind::RootExists:
      r.value = !roots_in_field(p).empty();
      break;
    case QueryKind::RootCount:
      r.value = static_cast<long>(roots_in_field(p).size());
      break;
    case QueryKind::RootCountMult:
      for (auto& rm : roots_with_multiplicity(p)) r.value += rm.second;
      break;
    case QueryKind::ConjugacyH:
      throw AlgebraError("the conjugacy function takes an element, not a polynomial");
  }
  return r;
}

QueryResult invariant_query(const FieldPresentation& f, QueryKind kind, const FieldElement& x) {
  if (x.owner() != f.field()) throw AlgebraError("element is not in the presentation's field");
  if (kind != QueryKind::ConjugacyH) {
    FieldPoly lin = FieldPoly::linear(x);
    return invariant_query(f, kind, lin);
  }
  QueryResult r;
  r.stage = f.stage();
  r.value = conjugates_count(x).count;
  r.provisional = f.pending() && r.value < x.min_poly().degree();
  return r;
}

std::set<int> extract_separator(const FieldEmbedding& g, const FieldPresentation& from, const FieldPresentation& to) {
  if (g.domain() != from.field() || g.codomain() != to.field())
    throw AlgebraError("embedding does not match the presentations");
  std::set<int> c;
  for (std::size_t i = 0; i < from.primes().size(); ++i) {
    FieldElement a = g(from.sqrt_prime(i));
    auto la = to.label_of(a), lb = to.label_of(-a);
    if (!la || !lb)
      throw AlgebraError("image of sqrt(" + std::to_string(from.primes()[i]) + ") is not labelled in the target");
    if (*la < *lb) c.insert(static_cast<int>(i));
  }
  return c;
}

FieldEmbedding separator_isomorphism(const FieldPresentation& from, const FieldPresentation& to,
                                     const std::set<int>& c) {
  if (from.primes() != to.primes()) throw AlgebraError("presentations are over different prime lists");
  std::vector<FieldElement> gens, images;
  for (std::size_t i = 0; i < from.primes().size(); ++i) {
    gens.push_back(from.sqrt_prime(i));
    FieldElement lesser = to.sqrt_prime(i);
    images.push_back(c.count(static_cast<int>(i)) ? lesser : -lesser);
  }
  const FieldPtr& tf = to.field();
  for (std::size_t i = 0; i < from.primes().size(); ++i) {
    auto deep = from.deep_root(i);
    if (!deep) continue;
    const FieldElement& z = from.element(*deep);
    // z^2 is +-sqrt(p_i); its image is determined by the choice above.
    FieldElement sq = z * z;
    FieldElement target = sq == gens[i] ? images[i] : -images[i];
    auto roots = roots_in_field(FieldPoly(tf, {-target, tf->zero(), tf->one()}));
    if (roots.empty())
      throw SeparatorError(static_cast<int>(i), "separator choice fails at index " + std::to_string(i) +
                                                    ": the image of sqrt(" + std::to_string(from.primes()[i]) +
                                                    ") has no square root in the target");
    gens.push_back(z);
    images.push_back(*std::min_element(roots.begin(), roots.end(), [&](const FieldElement& a, const FieldElement& b) {
      return to.less(a, b);
    }));
  }
  EmbTree tree(gens, tf);
  TreeNode node{images};
  if (!tree.generates_source()) throw AlgebraError("square roots do not generate the source field");
  if (!tree.contains(node)) throw AlgebraError("separator images are not consistent");
  return tree.path_to_embedding(node);
}

}  // namespace cfield
