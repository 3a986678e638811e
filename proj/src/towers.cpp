#include "cfield/towers.hpp"

#include "cfield/detail/field_modular.hpp"
#include "cfield/detail/modular.hpp"
#include "cfield/factor.hpp"
#include "cfield/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace cfield {

FieldPoly FieldFactorization::product() const {
  FieldPoly r = FieldPoly::constant(unit);
  for (auto& [f, m] : factors)
    for (int i = 0; i < m; ++i) r = r * f;
  return r;
}

int FieldFactorization::count() const {
  int n = 0;
  for (auto& fm : factors) n += fm.second;
  return n;
}

namespace {

// A prime p with a simple root t0 of the defining polynomial modulo p;
// reducing theta to t0 is a ring map from the p-integral elements of the
// field onto Z/p.
struct LocalPrime {
  std::uint64_t p;
  std::uint64_t t0;
};

const std::vector<LocalPrime>& degree_one_primes(const NumberField& f) {
  static std::mutex mu;
  static std::map<const NumberField*, std::pair<std::weak_ptr<const NumberField>, std::vector<LocalPrime>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(&f);
  if (it != cache.end() && it->second.first.lock().get() == &f) return it->second.second;
  std::vector<LocalPrime> found;
  std::mt19937_64 rng(0x1234567ULL);
  std::uint64_t p = (1ULL << 20);
  for (int tries = 0; tries < 4000 && found.size() < 8; ++tries) {
    p = detail::next_prime(p + 1);
    detail::Zp zp(p);
    detail::ModPoly m = zp.reduce(f.min_poly_integral());
    if (!zp.is_squarefree(m)) continue;
    auto roots = zp.roots(m, rng);
    if (roots.empty()) continue;
    found.push_back({p, roots.front()});
  }
  auto& slot = cache[&f];
  slot.first = f.ptr();
  slot.second = std::move(found);
  return slot.second;
}

bool reduce_element(const FieldElement& e, const LocalPrime& lp, std::uint64_t& out) {
  detail::Zp zp(lp.p);
  std::uint64_t den = zp.reduce(e.denominator());
  if (den == 0) return false;
  std::uint64_t v = 0;
  const auto& num = e.numerators();
  for (std::size_t i = num.size(); i-- > 0;) v = zp.add(zp.mul(v, lp.t0), zp.reduce(num[i]));
  out = zp.mul(v, zp.inv(den));
  return true;
}

struct LocalInfo {
  int root_bound;
  bool irreducible = false;
};

// Root-count bound and irreducibility certificate for a monic squarefree g
// from its reductions at degree-one primes.
LocalInfo local_info(const FieldPoly& g, int want = 3) {
  LocalInfo info{g.degree()};
  int used = 0;
  for (const LocalPrime& lp : degree_one_primes(*g.field())) {
    if (used >= want) break;
    detail::Zp zp(lp.p);
    detail::ModPoly gp;
    bool ok = true;
    for (auto& c : g.coeffs()) {
      std::uint64_t v;
      if (!reduce_element(c, lp, v)) {
        ok = false;
        break;
      }
      gp.push_back(v);
    }
    if (!ok) continue;
    detail::Zp::trim(gp);
    if (static_cast<int>(gp.size()) - 1 != g.degree() || !zp.is_squarefree(gp)) continue;
    ++used;
    info.root_bound = std::min(info.root_bound, zp.root_count(gp));
    auto ddf = zp.distinct_degree(gp);
    if (ddf.size() == 1 && ddf[0].second == g.degree()) info.irreducible = true;
    if (info.root_bound == 0 && info.irreducible) break;
  }
  return info;
}

// Trager's algorithm for a monic squarefree g of degree >= 2.
std::vector<FieldPoly> trager(const FieldPoly& g, int only_degree, std::size_t max_found) {
  const FieldPtr& F = g.field();
  const int n = F->degree();
  const FieldElement theta = F->theta();
  for (int step = 0; step < 64; ++step) {
    long s = (step + 1) / 2 * (step % 2 ? 1 : -1);
    if (s == 0 && g.is_rational()) continue;
    FieldElement shift = theta * BigRational(s);
    FieldPoly gs = g.shift(-shift);
    if (!detail::norm_certainly_squarefree(gs)) continue;
    UniPoly N = norm(gs);
    std::vector<FieldPoly> out;
    int target = only_degree < 0 ? -1 : n * only_degree;
    for (auto& h : squarefree_factors_over_Q(N, target, max_found)) {
      auto fast = detail::gcd_with_rational(gs, h, h.degree() / n);
      FieldPoly gj = fast ? *fast : gcd(gs, rem_rational(h, gs));
      if (gj.degree() < 1) throw AlgebraError("inconsistent norm factor");
      out.push_back(gj.shift(shift).monic());
    }
    return out;
  }
  throw AlgebraError("no squarefree norm found");
}

}  // namespace

FieldFactorization factor_over_field(const FieldPoly& p) {
  if (p.degree() < 1) throw AlgebraError("factorisation of a constant polynomial");
  const FieldPtr& F = p.field();
  FieldFactorization out;
  out.unit = p.lead();
  for (auto& [part, mult] : squarefree_decomposition(p)) {
    std::vector<FieldPoly> parts;
    if (part.degree() == 1) {
      parts.push_back(part);
    } else if (F->is_rationals() || F->degree() == 1) {
      for (auto& f : squarefree_factors_over_Q(part.to_rational())) parts.emplace_back(F, f);
    } else if (local_info(part).irreducible) {
      parts.push_back(part);
    } else {
      parts = trager(part, -1, std::numeric_limits<std::size_t>::max());
    }
    for (auto& f : parts) out.factors.emplace_back(f, mult);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    auto c = canonical_compare(a.first, b.first);
    return c != 0 ? c < 0 : a.second < b.second;
  });
  return out;
}

bool is_irreducible_over_field(const FieldPoly& p) {
  if (p.degree() < 1) return false;
  auto f = factor_over_field(p);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

namespace {

std::vector<FieldElement> squarefree_roots(const FieldPoly& g) {
  const FieldPtr& F = g.field();
  std::vector<FieldElement> roots;
  if (g.degree() == 1) {
    roots.push_back(-g.coeff(0));
  } else if (F->degree() == 1) {
    for (auto& f : squarefree_factors_over_Q(g.to_rational(), 1)) roots.push_back(F->from_rational(-f.coeff(0)));
  } else {
    LocalInfo info = local_info(g);
    if (info.root_bound == 0 || info.irreducible) return roots;
    for (auto& lin : trager(g, 1, static_cast<std::size_t>(info.root_bound))) roots.push_back(-lin.coeff(0));
  }
  for (auto& r : roots)
    if (!g.eval(r).is_zero()) throw AlgebraError("root verification failed");
  std::sort(roots.begin(), roots.end(), CanonicalLess());
  return roots;
}

}  // namespace

std::vector<FieldElement> roots_in_field(const FieldPoly& p) {
  if (p.is_zero()) throw AlgebraError("roots of the zero polynomial");
  if (p.degree() == 0) return {};
  return squarefree_roots(squarefree_part(p));
}

std::vector<std::pair<FieldElement, int>> roots_with_multiplicity(const FieldPoly& p) {
  if (p.is_zero()) throw AlgebraError("roots of the zero polynomial");
  std::vector<std::pair<FieldElement, int>> out;
  if (p.degree() == 0) return out;
  for (auto& [part, mult] : squarefree_decomposition(p))
    for (auto& r : squarefree_roots(part)) out.emplace_back(r, mult);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return canonical_compare(a.first, b.first) < 0; });
  return out;
}

namespace {

// Arithmetic in F[Y]/(q) on coefficient vectors of length deg q.
struct Quotient {
  FieldPtr f;
  FieldPoly q;
  int d;

  std::vector<FieldElement> mul(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) const {
    FieldPoly r = divmod(FieldPoly(f, a) * FieldPoly(f, b), q).second;
    std::vector<FieldElement> out;
    for (int i = 0; i < d; ++i) out.push_back(r.coeff(static_cast<std::size_t>(i)));
    return out;
  }
  std::vector<BigRational> flat(const std::vector<FieldElement>& v) const {
    std::vector<BigRational> out;
    for (auto& e : v)
      for (auto& c : e.coords()) out.push_back(c);
    return out;
  }
};

std::vector<BigRational> padded(const UniPoly& p, int n) {
  std::vector<BigRational> c(static_cast<std::size_t>(n));
  for (int i = 0; i <= p.degree() && i < n; ++i) c[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(i));
  return c;
}

Extension extend(const FieldPtr& F, const FieldPoly& q) {
  const int n = F->degree();
  const int d = q.degree();
  const int N = n * d;
  Quotient K{F, q, d};
  std::vector<FieldElement> one(static_cast<std::size_t>(d), F->zero()), Y = one, th = one;
  one[0] = F->one();
  Y[1] = F->one();
  th[0] = F->theta();

  for (long k = 0;; ++k) {
    if (k > 0 && n == 1) throw AlgebraError("no primitive element found");
    std::vector<FieldElement> z = Y;
    if (k > 0) z[0] = F->theta() * BigRational(k);
    LinearSpan span(static_cast<std::size_t>(N));
    std::vector<FieldElement> pw = one;
    std::optional<std::vector<BigRational>> rel;
    int i = 0;
    for (; i <= N; ++i) {
      rel = span.add(K.flat(pw));
      if (rel) break;
      pw = K.mul(pw, z);
    }
    if (i < N) continue;
    std::vector<BigRational> mc;
    for (auto& x : *rel) mc.push_back(-x);
    mc.emplace_back(1);
    UniPoly zpoly(std::move(mc));
    BigInt c = NumberField::integral_scale(zpoly);
    BigRational cinv(BigInt(1), c);
    UniPoly theta_poly = zpoly.scale_var(cinv) * BigRational(c).pow(static_cast<unsigned>(N));
    UniPoly theta_img = UniPoly(*span.express(K.flat(th))).scale_var(cinv);
    UniPoly root_img = UniPoly(*span.express(K.flat(Y))).scale_var(cinv);

    // Map the old tower history into the new field.
    FieldPtr tmp = NumberField::create_trusted(theta_poly, {});
    FieldEmbedding emb(F, tmp, tmp->from_poly(theta_img));
    std::vector<TowerStep> log;
    auto image_coords = [&](const std::vector<BigRational>& c) { return emb(F->from_coords(c)).coords(); };
    for (auto& step : F->tower_log()) {
      TowerStep ns;
      ns.generator = image_coords(step.generator);
      for (auto& c : step.relative_min_poly) ns.relative_min_poly.push_back(image_coords(c));
      log.push_back(std::move(ns));
    }
    TowerStep last;
    last.generator = padded(root_img, N);
    for (auto& c : q.coeffs()) last.relative_min_poly.push_back(image_coords(c.coords()));
    log.push_back(std::move(last));

    FieldPtr G = NumberField::create_trusted(theta_poly, std::move(log));
    Extension out;
    out.field = G;
    out.embedding = FieldEmbedding(F, G, G->from_coords(padded(theta_img, N)));
    out.root = G->from_coords(padded(root_img, N));
    out.grew = true;
    return out;
  }
}

}  // namespace

Extension adjoin_root(const FieldPoly& p) {
  if (p.degree() < 1) throw AlgebraError("cannot adjoin a root of a constant polynomial");
  const FieldPtr& F = p.field();
  FieldFactorization fac = factor_over_field(p);
  const FieldPoly& least = fac.factors.front().first;
  if (least.degree() == 1) {
    Extension out;
    out.field = F;
    out.embedding = FieldEmbedding::identity(F);
    out.root = -least.coeff(0);
    out.grew = false;
    return out;
  }
  return extend(F, least.monic());
}

std::vector<UniPoly> relative_min_poly(const FieldElement& x, const FieldElement& e) {
  if (x.owner() != e.owner()) throw AlgebraError("elements belong to different fields");
  const int n = x.field().degree();
  const int de = e.min_poly().degree();
  std::vector<FieldElement> epow;
  FieldElement pw = x.field().one();
  for (int a = 0; a < de; ++a) {
    epow.push_back(pw);
    pw *= e;
  }
  LinearSpan span(static_cast<std::size_t>(n));
  FieldElement xb = x.field().one();
  for (int b = 0;; ++b) {
    auto rel = span.express(xb.coords());
    if (rel) {
      std::vector<UniPoly> out;
      for (int c = 0; c < b; ++c) {
        std::vector<BigRational> coeffs;
        for (int a = 0; a < de; ++a) coeffs.push_back(-(*rel)[static_cast<std::size_t>(c * de + a)]);
        out.emplace_back(std::move(coeffs));
      }
      out.push_back(UniPoly::constant(1));
      return out;
    }
    for (int a = 0; a < de; ++a) span.add((epow[static_cast<std::size_t>(a)] * xb).coords());
    xb *= x;
  }
}

FieldPoly min_poly_over_subfield(const FieldElement& x, const FieldEmbedding& g) {
  if (g.codomain() != x.owner()) throw AlgebraError("subfield embedding does not land in the element's field");
  const FieldPtr& E = g.domain();
  FieldElement e = g(E->theta());
  std::vector<FieldElement> coeffs;
  for (auto& c : relative_min_poly(x, e)) coeffs.push_back(E->from_poly(c));
  return FieldPoly(E, std::move(coeffs));
}

PrimitiveElement primitive_element(const std::vector<FieldElement>& xs) {
  if (xs.empty()) throw AlgebraError("primitive element of an empty list");
  for (auto& x : xs)
    if (x.owner() != xs[0].owner()) throw AlgebraError("elements belong to different fields");
  PrimitiveElement out;
  out.y = xs[0];
  out.combination.assign(xs.size(), BigRational());
  out.combination[0] = 1;
  int dy = xs[0].min_poly().degree();
  for (std::size_t j = 1; j < xs.size(); ++j) {
    int r = static_cast<int>(relative_min_poly(xs[j], out.y).size()) - 1;
    if (r == 1) continue;
    for (long k = 1;; ++k) {
      FieldElement cand = out.y + xs[j] * BigRational(k);
      if (cand.min_poly().degree() == dy * r) {
        out.y = cand;
        out.combination[j] = k;
        dy *= r;
        break;
      }
    }
  }
  out.min_poly = out.y.min_poly();
  const int n = xs[0].field().degree();
  LinearSpan span(static_cast<std::size_t>(n));
  FieldElement pw = xs[0].field().one();
  for (int i = 0; i < dy; ++i) {
    span.add(pw.coords());
    pw *= out.y;
  }
  for (auto& x : xs) out.expressions.emplace_back(*span.express(x.coords()));
  return out;
}

Conjugates conjugates_count(const FieldElement& x) {
  Conjugates c;
  c.roots = roots_in_field(FieldPoly(x.owner(), x.min_poly()));
  c.count = static_cast<int>(c.roots.size());
  return c;
}

Conjugates conjugates_count(const FieldElement& x, const FieldEmbedding& g) {
  Conjugates c;
  c.roots = roots_in_field(min_poly_over_subfield(x, g).map(g));
  c.count = static_cast<int>(c.roots.size());
  return c;
}

Extension normal_closure(const FieldPtr& f) {
  Extension out;
  out.field = f;
  out.embedding = FieldEmbedding::identity(f);
  out.root = f->theta();
  while (true) {
    FieldPoly m(out.field, f->min_poly());
    FieldFactorization fac = factor_over_field(m);
    const FieldPoly* nonlinear = nullptr;
    for (auto& [g, mult] : fac.factors)
      if (g.degree() > 1) {
        nonlinear = &g;
        break;
      }
    if (!nonlinear) return out;
    Extension ext = extend(out.field, *nonlinear);
    out.embedding = ext.embedding.after(out.embedding);
    out.root = out.embedding(f->theta());
    out.field = ext.field;
    out.grew = true;
  }
}

bool is_normal(const FieldPtr& f) {
  if (f->degree() == 1) return true;
  return static_cast<int>(roots_in_field(FieldPoly(f, f->min_poly())).size()) == f->degree();
}

bool subfield_membership(const FieldEmbedding& g, const FieldElement& x) {
  if (x.owner() != g.codomain()) throw AlgebraError("element is not in the embedding's codomain");
  if (x.is_rational()) return true;
  for (auto& y : roots_in_field(FieldPoly(g.domain(), x.min_poly())))
    if (g(y) == x) return true;
  return false;
}

std::vector<std::vector<std::vector<int>>> automorphism_permutations(const FieldPtr& f) {
  std::vector<std::vector<FieldElement>> conj;
  for (auto& g : f->tower_generators()) conj.push_back(conjugates_count(g).roots);
  std::vector<std::vector<std::vector<int>>> out;
  for (auto& a : automorphisms(f)) {
    std::vector<std::vector<int>> perm;
    for (auto& set : conj) {
      std::vector<int> p;
      for (auto& r : set) {
        FieldElement img = a(r);
        auto it = std::find(set.begin(), set.end(), img);
        p.push_back(static_cast<int>(it - set.begin()));
      }
      perm.push_back(std::move(p));
    }
    out.push_back(std::move(perm));
  }
  return out;
}

}  // namespace cfield
