#pragma once

// Fixture fields shared by the unit and acceptance tests.

#include "cfield/categoricity.hpp"
#include "cfield/presentation.hpp"
#include "cfield/towers.hpp"
#include "oracles.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using namespace cfield;

/// Successive root adjunction, one stage per step; each step names the
/// first new label.
inline FieldPresentation tower(const std::vector<std::pair<std::string, std::string>>& steps,
                               std::uint64_t seed = 0) {
  StageSchedule s;
  int stage = 0;
  for (auto& [poly, name] : steps) s.events.push_back({++stage, ScheduleEvent::Kind::Adjoin, "", -1, poly, {name}});
  PresentationOptions o;
  o.scramble_seed = seed;
  return build_from_schedule(s, stage, o);
}

inline FieldPresentation sqrt2() { return tower({{"x^2-2", "a"}}); }
inline FieldPresentation sqrt2_sqrt3() { return tower({{"x^2-2", "a"}, {"x^2-3", "b"}}); }
inline FieldPresentation fourth_root2() { return tower({{"x^2-2", "a"}, {"x^2-a", "r"}}); }
inline FieldPresentation cube_root2() { return tower({{"x^3-2", "a"}}); }
inline FieldPresentation cube_closure() { return tower({{"x^3-2", "a"}, {"x^2+x+1", "w"}}); }
/// The cube-root field whose automorphism tree has extra symmetries:
/// x0 a real cube root of 2, x1 a root of Y^3 - Y - x0, x2 = w x0.
inline FieldPresentation cube_tree_field() {
  return tower({{"x^3-2", "a"}, {"x^2+x+1", "w"}, {"x^3-x-a", "b"}});
}
inline FieldPresentation fw_small(std::uint64_t seed = 0) {
  PresentationOptions o;
  o.scramble_seed = seed;
  return build_fw({2, 3}, EnumeratedSet::from_indices("W", {0}), 3, o);
}

/// Elements sampled as small integer combinations of the labels' products.
inline FieldElement random_element(const FieldPresentation& f, oracle::Rng& rng) {
  FieldElement x = f.field()->from_rational(BigRational(rng.range(-3, 3)));
  for (std::size_t i = 0; i < f.size(); ++i) {
    long c = rng.range(-2, 2);
    if (c == 0) continue;
    FieldElement term = f.element(i) * BigRational(c);
    if (rng.range(0, 2) == 0 && f.size() > 1) term *= f.element(static_cast<std::size_t>(rng.range(0, static_cast<long>(f.size()) - 1)));
    x += term;
  }
  return x;
}

/// Additive and multiplicative checks on sampled pairs, plus the label
/// images satisfying their minimal polynomials.
inline bool homomorphism_ok(const FieldEmbedding& e, const FieldPresentation& src, oracle::Rng& rng, int pairs) {
  for (int k = 0; k < pairs; ++k) {
    FieldElement a = random_element(src, rng), b = random_element(src, rng);
    if (e(a + b) != e(a) + e(b) || e(a * b) != e(a) * e(b)) return false;
    if (!a.is_zero() && e(a).min_poly() != a.min_poly()) return false;
  }
  for (auto& x : src.elements())
    if (!eval_at(x.min_poly(), e(x)).is_zero()) return false;
  return e(src.field()->one()).is_one();
}

/// Orbit relation by brute force over a list of automorphisms.
inline bool in_orbit(const std::vector<FieldEmbedding>& auts, const FieldElement& a, const FieldElement& b) {
  for (auto& s : auts)
    if (s(a) == b) return true;
  return false;
}

/// The micro-example field: z0^2 = z5^2 = 2, z1^2 = z2^2 = z0, z3^2 = z4^2 =
/// z1, and the variant where z5 acquires square roots z6, z7.
struct Micro {
  FieldPtr field;
  std::vector<FieldElement> z;
};

inline Micro micro_example(bool with_roots_of_z5) {
  std::vector<std::pair<std::string, std::string>> steps = {{"x^2-2", "m0"}, {"x^2-m0", "m1"}, {"x^2-m1", "m3"}};
  if (with_roots_of_z5) steps.push_back({"x^2+m0", "m6"});
  FieldPresentation p = tower(steps);
  Micro m;
  m.field = p.field();
  FieldElement z0 = p.parse_element("m0"), z1 = p.parse_element("m1"), z3 = p.parse_element("m3");
  m.z = {z0, z1, -z1, z3, -z3, -z0};
  if (with_roots_of_z5) {
    FieldElement z6 = p.parse_element("m6");
    m.z.push_back(z6);
    m.z.push_back(-z6);
  }
  return m;
}

}  // namespace fixtures
