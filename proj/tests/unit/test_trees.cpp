#include "cfield/trees.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace cfield;

namespace {

struct CubeTree {
  FieldPresentation f = fixtures::cube_tree_field();
  FieldElement a = f.parse_element("a"), b = f.parse_element("b"), wa = f.parse_element("w*a");
  EmbTree tree{{a, b, wa}, f.field()};
};

CubeTree& cube() {
  static CubeTree c;
  return c;
}

}  // namespace

TEST_CASE("cube-root tree: level function and terminal nodes") {
  CubeTree& c = cube();
  CHECK(c.tree.generates_source());
  CHECK(c.tree.level_counts() == std::vector<std::size_t>{1, 3, 1, 2});
  CHECK(level_function(c.tree, 1) == 3);
  CHECK_THROWS_AS(level_function(c.tree, 4), AlgebraError);
  // Exactly the two non-real cube roots of 2 are dead ends.
  std::vector<FieldElement> terminal;
  for (auto& n : c.tree.level(1))
    if (c.tree.children(n).empty()) terminal.push_back(n.sigma[0]);
  REQUIRE(terminal.size() == 2);
  FieldElement w = c.f.parse_element("w");
  for (auto& x : terminal) CHECK((x == w * c.a || x == (-c.f.field()->one() - w) * c.a));
  CHECK(c.tree.first_path(c.tree.root())->sigma[0] == c.a);
  CHECK(c.tree.first_at_level(c.tree.root(), 2)->level() == 2);
}

TEST_CASE("cube-root tree: paths are the automorphisms") {
  CubeTree& c = cube();
  auto paths = c.tree.paths();
  REQUIRE(paths.size() == 2);
  std::vector<FieldEmbedding> auts;
  for (auto& p : paths) {
    FieldEmbedding e = c.tree.path_to_embedding(p);
    CHECK(e.is_surjective());
    CHECK(c.tree.embedding_to_path(e) == p);
    auts.push_back(e);
  }
  CHECK(auts[0] != auts[1]);
  // No induced map swaps the two terminal nodes while fixing the paths.
  for (auto& psi : auts) {
    TreeMap h = canonical_tree_map(psi, c.tree, c.tree);
    CHECK(h.bijective);
    CHECK(h.successor_preserving);
    bool fixes_paths = true, fixes_terminal = true;
    for (auto& [from, to] : h.pairs) {
      if (from.level() == 3 && !(from == to)) fixes_paths = false;
      if (from.level() == 1 && c.tree.children(from).empty() && !(from == to)) fixes_terminal = false;
    }
    CHECK((!fixes_paths || fixes_terminal));
  }
}

TEST_CASE("pinned trees and instantiated polynomials") {
  FieldPresentation r4 = fixtures::fourth_root2();
  const auto& x = r4.elements();
  EmbTree t({x[0], x[2]}, r4.field());
  CHECK(t.level_counts() == std::vector<std::size_t>{1, 2, 2});
  EmbTree pinned({x[0], x[2]}, r4.field(), {x[1]});  // sqrt2 -> -sqrt2 has no extension
  CHECK(pinned.level_count(1) == 1);
  CHECK(pinned.level_count(2) == 0);
  CHECK_FALSE(pinned.first_path(pinned.root()).has_value());
  TreeNode n = t.level(1)[0];
  CHECK(t.instantiated(n).degree() == 2);
  CHECK(t.contains(t.paths()[1]));
  CHECK(t.combination(1).size() == 1);
  CHECK(t.dot(2).find("digraph") != std::string::npos);
}

TEST_CASE("tree map into a second copy, seeded") {
  FieldPresentation f = fixtures::sqrt2_sqrt3();
  FieldPresentation ff = fixtures::tower({{"x^4-10x^2+1", "u"}}, 7);
  std::vector<FieldElement> gens = {f.element(0), f.element(2)};
  EmbTree t_f(gens, f.field()), t_ff(gens, ff.field());
  auto isos = enumerate_embeddings(f.field(), ff.field());
  REQUIRE(isos.size() == 4);
  CHECK(t_ff.paths().size() == 4);
  for (auto& psi : isos) {
    TreeMap h = canonical_tree_map(psi, t_f, t_ff);
    CHECK(h.bijective);
    CHECK(h.successor_preserving);
  }
}
