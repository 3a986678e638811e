#pragma once

#include "cfield/field_poly.hpp"
#include "cfield/number_field.hpp"

#include <vector>

namespace cfield {

struct Extension {
  FieldPtr field;
  FieldEmbedding embedding;  // old field -> new field
  FieldElement root;         // in the new field
  bool grew = false;         // false when the root was already present
};

/// Adjoins a root of the least irreducible factor of p (canonical
/// polynomial order). If p has a root in its coefficient field, nothing is
/// adjoined and that root (least in canonical order) is returned.
Extension adjoin_root(const FieldPoly& p);

struct PrimitiveElement {
  FieldElement y;
  std::vector<BigRational> combination;  // y = sum combination[i] * xs[i]
  std::vector<UniPoly> expressions;      // xs[i] = expressions[i](y)
  UniPoly min_poly;
};

/// y generating Q(xs), searched as y + k * x_j for k = 1, 2, ... whenever
/// x_j is not already in Q(y).
PrimitiveElement primitive_element(const std::vector<FieldElement>& xs);

struct FieldFactorization {
  FieldElement unit;
  std::vector<std::pair<FieldPoly, int>> factors;  // monic irreducible, canonical order
  FieldPoly product() const;
  int count() const;
};

/// Complete factorisation over the coefficient field (norm reduction to Q).
FieldFactorization factor_over_field(const FieldPoly& p);
bool is_irreducible_over_field(const FieldPoly& p);

/// Distinct roots of p in its coefficient field, in canonical order.
std::vector<FieldElement> roots_in_field(const FieldPoly& p);
/// Roots with their multiplicities.
std::vector<std::pair<FieldElement, int>> roots_with_multiplicity(const FieldPoly& p);

/// Minimal polynomial of x over Q(e), with coefficients written as
/// rational polynomials in e of degree below [Q(e):Q]. The last entry is 1.
std::vector<UniPoly> relative_min_poly(const FieldElement& x, const FieldElement& e);
/// Minimal polynomial of x over the subfield g(E), as a polynomial over E.
FieldPoly min_poly_over_subfield(const FieldElement& x, const FieldEmbedding& g);

struct Conjugates {
  int count = 0;
  std::vector<FieldElement> roots;
};
/// Conjugates of x over Q lying in x's field.
Conjugates conjugates_count(const FieldElement& x);
/// Conjugates of x over the subfield g(E) lying in x's field.
Conjugates conjugates_count(const FieldElement& x, const FieldEmbedding& g);

/// Splitting field of the defining polynomial, with the embedding of F.
Extension normal_closure(const FieldPtr& f);
bool is_normal(const FieldPtr& f);

/// Whether x lies in g(F), decided by comparing x with the images of
/// its conjugates in F.
bool subfield_membership(const FieldEmbedding& g, const FieldElement& x);

/// All embeddings E -> F (found by search of the embedding tree over the
/// tower generators of E).
std::vector<FieldEmbedding> enumerate_embeddings(const FieldPtr& e, const FieldPtr& f);
/// Embeddings E -> F that agree on a common subfield K, given by its
/// embeddings into E and F.
std::vector<FieldEmbedding> enumerate_embeddings(const FieldPtr& e, const FieldPtr& f, const FieldEmbedding& k_in_e,
                                                 const FieldEmbedding& k_in_f);
std::vector<FieldEmbedding> automorphisms(const FieldPtr& f);

/// Each automorphism as permutations of the conjugate sets (canonical
/// order) of the tower generators: result[a][g][j] is the index that
/// automorphism a sends conjugate j of generator g to.
std::vector<std::vector<std::vector<int>>> automorphism_permutations(const FieldPtr& f);

}  // namespace cfield
