#include "cfield/categoricity.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace cfield;
using fixtures::in_orbit;

TEST_CASE("certificates for small fields") {
  FieldPresentation s2 = fixtures::sqrt2();
  OrbitCertificate c = orbit_certificate(s2.element(0), s2.element(1));
  CHECK(c.verdict == Verdict::TrueConjugate);
  REQUIRE(c.automorphism.has_value());
  CHECK((*c.automorphism)(s2.element(0)) == s2.element(1));
  CHECK(verify_certificate(c, s2.element(0), s2.element(1)));

  FieldPresentation r4 = fixtures::fourth_root2();
  FieldElement a = r4.parse_element("a");
  c = orbit_certificate(a, -a);
  CHECK(c.verdict == Verdict::FalseConjugate);
  REQUIRE(c.witness.has_value());
  CHECK(!roots_in_field(c.witness->at(a)).empty());
  CHECK(roots_in_field(c.witness->at(-a)).empty());
  CHECK(verify_certificate(c, a, -a));
  CHECK_FALSE(verify_certificate(c, -a, a));
  OrbitCertificate forged = c;
  forged.verdict = Verdict::TrueConjugate;
  CHECK_FALSE(verify_certificate(forged, a, -a));

  FieldPresentation s23 = fixtures::sqrt2_sqrt3();
  c = orbit_certificate(s23.parse_element("a"), s23.parse_element("b"));
  CHECK(c.verdict == Verdict::NotConjugate);
  CHECK(verify_certificate(c, s23.parse_element("a"), s23.parse_element("b")));
  CHECK(verdict_name(Verdict::FalseConjugate) == "false_conjugate");
}

TEST_CASE("orbit decisions against brute force, seeded") {
  std::vector<FieldPresentation> fields = {fixtures::fourth_root2(), fixtures::cube_closure(), fixtures::fw_small()};
  oracle::Rng rng(31);
  for (auto& f : fields) {
    auto auts = automorphisms(f.field());
    for (int k = 0; k < 10; ++k) {
      FieldElement a = fixtures::random_element(f, rng);
      auto conj = conjugates_count(a).roots;
      FieldElement b = conj[static_cast<std::size_t>(rng.range(0, static_cast<long>(conj.size()) - 1))];
      bool brute = in_orbit(auts, a, b);
      CHECK(orbit_decide(a, b) == brute);
      auto sigma = find_automorphism(a, b);
      CHECK(sigma.has_value() == brute);
      if (sigma) CHECK((*sigma)(a) == b);
    }
  }
}

TEST_CASE("false conjugacy is symmetric") {
  // A witness rooted at a but not at b exists iff one rooted at b but not at a does.
  std::vector<FieldPresentation> fields = {fixtures::fourth_root2(), fixtures::cube_closure(), fixtures::fw_small()};
  for (auto& f : fields) {
    for (auto& x : f.elements())
      for (auto& y : conjugates_count(x).roots) {
        OrbitCertificate ab = orbit_certificate(x, y), ba = orbit_certificate(y, x);
        CHECK(ab.verdict == ba.verdict);
        CHECK(verify_certificate(ab, x, y));
        CHECK(verify_certificate(ba, y, x));
      }
  }
}

TEST_CASE("generating chain is nested and generates") {
  FieldPtr f = fixtures::cube_tree_field().field();
  auto chain = generating_chain(f);
  REQUIRE(!chain.empty());
  CHECK(chain.back().min_poly().degree() == f->degree());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    CHECK(relative_min_poly(chain[i], chain[i + 1]).size() == 2);  // chain[i] in Q(chain[i+1])
}

TEST_CASE("full orbit reduction examples") {
  FieldPresentation f = fixtures::sqrt2_sqrt3();
  FieldElement r2 = f.parse_element("a"), r3 = f.parse_element("b");
  auto red = full_orbit_reduce({r2}, {-r2});
  REQUIRE(red.has_value());
  CHECK(red->first == r2);
  CHECK(red->second == -r2);
  red = full_orbit_reduce({r2, r3}, {-r2, r3});
  REQUIRE(red.has_value());
  CHECK(red->first == r2 + r3);
  CHECK(red->second == -r2 + r3);
  CHECK(orbit_decide(red->first, red->second));
  CHECK_FALSE(full_orbit_reduce({r2}, {r3}).has_value());
  CHECK_FALSE(full_orbit_reduce({r2, r3, r2 * r3}, {r2, -r3, r2 * r3}).has_value());
  CHECK_THROWS_AS(full_orbit_reduce({r2}, {r2, r3}), AlgebraError);
}

TEST_CASE("full orbit reduction on sampled tuples, seeded") {
  FieldPresentation f = fixtures::fourth_root2();
  auto auts = automorphisms(f.field());
  oracle::Rng rng(32);
  const auto& base = f.elements();
  auto pick = [&] { return base[static_cast<std::size_t>(rng.range(0, static_cast<long>(base.size()) - 1))]; };
  for (int k = 0; k < 30; ++k) {
    std::size_t len = static_cast<std::size_t>(rng.range(1, 3));
    std::vector<FieldElement> a, b;
    for (std::size_t i = 0; i < len; ++i) a.push_back(pick());
    const FieldEmbedding& s = auts[static_cast<std::size_t>(rng.range(0, static_cast<long>(auts.size()) - 1))];
    for (std::size_t i = 0; i < len; ++i) b.push_back(rng.range(0, 2) == 0 ? pick() : s(a[i]));
    bool member = false;
    for (auto& t : auts) {
      bool ok = true;
      for (std::size_t i = 0; i < len; ++i) ok = ok && t(a[i]) == b[i];
      member = member || ok;
    }
    auto red = full_orbit_reduce(a, b);
    CHECK(member == (red && orbit_decide(red->first, red->second)));
    CHECK(member == full_orbit_decide(a, b));
  }
}

TEST_CASE("normal fields decide by minimal polynomials") {
  FieldPresentation f = fixtures::cube_closure();
  FieldElement a = f.parse_element("a");
  auto conj = conjugates_count(a).roots;
  REQUIRE(conj.size() == 3);
  for (auto& b : conj) CHECK(normal_orbit_decide(a, b));
  CHECK_FALSE(normal_orbit_decide(a, f.parse_element("w")));
  FieldPresentation r4 = fixtures::fourth_root2();
  CHECK_THROWS_AS(normal_orbit_decide(r4.element(0), r4.element(1)), AlgebraError);
}

TEST_CASE("isomorphism builder recipes agree") {
  FieldPresentation f = fixtures::sqrt2_sqrt3();
  FieldPresentation ff = fixtures::tower({{"x^2-3", "c"}, {"x^2-2", "d"}}, 6);
  auto tree = build_isomorphism(f, ff, exact_orbit_oracle(), presentation_level_function(f));
  auto wit = build_isomorphism_by_witnesses(f, ff, exact_orbit_oracle());
  CHECK(tree.map == wit.map);
  CHECK(tree.map.is_surjective());
  oracle::Rng rng(33);
  CHECK(fixtures::homomorphism_ok(tree.map, f, rng, 20));
  for (auto& step : wit.steps) {
    std::size_t falses = 0;
    for (bool t : step.true_conjugate) falses += t ? 0 : 1;
    CHECK(step.witnesses.size() == falses);
    CHECK(tree.map(f.element(step.label)) == step.image);
  }
}

TEST_CASE("normal chain structure") {
  FieldPresentation f = fixtures::fourth_root2();
  NormalChain ch(f);
  CHECK(ch.length() == 3);
  CHECK(ch.z(0).is_one());
  CHECK(ch.conjugates(1).size() == 2);  // Aut(Q(sqrt2))
  CHECK(ch.conjugates(2).size() == 2);  // Aut(Q(2^(1/4)))
  CHECK(ch.index(10) == 2);
  for (std::size_t x = 0; x < ch.domain().size(); ++x) {
    int s = ch.entry_stage(x);
    CHECK(ch.in_stage(ch.domain()[x], s));
    for (std::size_t k = 0; k < ch.conjugates(s).size(); ++k)
      CHECK(ch.label_of(ch.apply(s, k, ch.domain()[x])).has_value());
    CHECK(eval_at(ch.polynomial_in_z(s, ch.domain()[x]), ch.z(s)) == ch.domain()[x]);
  }
  // sqrt2 -> -sqrt2 extends to F_1 but not to F_2.
  CHECK(ch.extension_of(1, 1, 1).has_value());
  CHECK_FALSE(ch.extension_of(1, 1, 2).has_value());
  CHECK(ch.stage_field(1)->degree() == 2);
}

TEST_CASE("oracle tapes") {
  OracleTape t;
  t.set(3, 7, 3);
  CHECK(t.converged(3, 5));
  CHECK_FALSE(t.converged(3, 2));
  CHECK(t.value(3, 4) == 7u);
  CHECK_THROWS_AS(t.set(5, 1, 4), AlgebraError);
  CHECK_THROWS_AS(t.set(3, 1, 6), AlgebraError);
}

TEST_CASE("diagonalisation branches") {
  FieldPresentation f = fixtures::fourth_root2();
  NormalChain ch(f);
  const int h = 5;

  SUBCASE("empty tapes leave every requirement unsatisfied") {
    DiagRun run = diagonalize(ch, {OracleTape{}, OracleTape{}}, h);
    REQUIRE(run.log.size() == 2);
    for (auto& r : run.log) CHECK_FALSE(r.satisfied);
    const auto& fin = run.f_history.back();
    std::set<std::size_t> images;
    for (auto& [x, l] : fin) images.insert(l);
    CHECK(images.size() == fin.size());
    CHECK(run.tilde_stage.size() == fin.size());
  }

  SUBCASE("a tape sending z_t to a non-root fails consistency") {
    DiagRun run0 = diagonalize(ch, {}, h);
    const auto& labels = ch.conjugate_labels(1);
    std::size_t one = *ch.label_of(ch.field()->one());
    OracleTape tape;
    tape.set(labels[0], run0.f_history[1].at(one), static_cast<int>(std::max(labels[0], labels[1])));
    tape.set(labels[1], run0.f_history[1].at(labels[0]), static_cast<int>(std::max(labels[0], labels[1])));
    DiagRun run = diagonalize(ch, {tape}, h);
    REQUIRE(run.log[0].satisfied);
    CHECK(run.log[0].branch == "consistency");
    CHECK(run.log[0].clash.x == labels[0]);
    CHECK_FALSE(tape_is_isomorphism(ch, run, tape));
  }

  SUBCASE("the construction's own map is defeated by a twist") {
    OracleTape track = tracking_tape(ch, {}, h);
    DiagRun run = diagonalize(ch, {track}, h);
    REQUIRE(run.log[0].satisfied);
    CHECK(run.log[0].branch == "twist");
    CHECK(run.log[0].clash.verified);
    CHECK_FALSE(tape_is_isomorphism(ch, run, track));
  }

  SUBCASE("a genuine isomorphism tape decides the orbit relation") {
    const int top = static_cast<int>(ch.length()) - 1;
    DiagRun run0 = diagonalize(ch, {}, top);
    std::vector<OracleTape> tapes = {final_map_tape(ch, run0, top)};
    DiagRun run = diagonalize(ch, tapes, top);
    CHECK(tape_is_isomorphism(ch, run, tapes[0]));
    auto auts = automorphisms(f.field());
    for (int t = 1; t <= top; ++t)
      for (std::size_t n = 0; n < ch.conjugates(t).size(); ++n)
        CHECK(decide_via_scripted_isomorphism(ch, run, tapes, 0, t, n) ==
              in_orbit(auts, ch.conjugates(t)[0], ch.conjugates(t)[n]));
  }
}
