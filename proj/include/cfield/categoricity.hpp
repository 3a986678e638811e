#pragma once

// Orbit relations and their certificates, the stagewise isomorphism
// builder for fields with a decidable orbit relation, and the
// diagonalisation against scripted partial maps.

#include "cfield/linalg.hpp"
#include "cfield/number_field.hpp"
#include "cfield/presentation.hpp"
#include "cfield/trees.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cfield {

// ---------------------------------------------------------------------------
// Orbit relation

/// Some automorphism of the field maps a to b (depth-first search of the
/// automorphism tree with a pinned first image).
bool orbit_decide(const FieldElement& a, const FieldElement& b);
std::optional<FieldEmbedding> find_automorphism(const FieldElement& a, const FieldElement& b);
/// Tuple version: one automorphism with a_i -> b_i for all i.
bool full_orbit_decide(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b);

/// Cumulative primitive elements z_0, z_1, ... of the tower generators:
/// Q(z_0) <= Q(z_1) <= ... with the last one generating the field.
std::vector<FieldElement> generating_chain(const FieldPtr& f);

/// p(A, Y) = sum_k coeffs[k](A) Y^k with rational polynomial coefficients.
struct WitnessPolynomial {
  std::vector<UniPoly> coeffs;
  std::size_t chain_index = 0;  // p(a, Y) is the minimal polynomial of z_s over Q(a)
  FieldPoly at(const FieldElement& a) const;
  std::string str() const;
};

enum class Verdict { TrueConjugate, FalseConjugate, NotConjugate, Inconclusive };
std::string verdict_name(Verdict v);

struct OrbitCertificate {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<FieldEmbedding> automorphism;  // true conjugates
  std::optional<WitnessPolynomial> witness;    // false conjugates
};

/// Verdict with a checkable witness. Witnesses for false conjugates are
/// searched along the generating chain, at most `bound` chain elements.
OrbitCertificate orbit_certificate(const FieldElement& a, const FieldElement& b,
                                   std::size_t bound = static_cast<std::size_t>(-1));
/// Re-checks a certificate from scratch.
bool verify_certificate(const OrbitCertificate& c, const FieldElement& a, const FieldElement& b);

/// Reduces a tuple pair to an element pair (y, y') with y primitive for
/// Q(a): the tuple pair is in the full orbit relation iff (y, y') is in
/// the orbit relation. nullopt when a_i -> b_i does not even extend to an
/// isomorphism Q(a) -> Q(b).
std::optional<std::pair<FieldElement, FieldElement>> full_orbit_reduce(const std::vector<FieldElement>& a,
                                                                       const std::vector<FieldElement>& b);

/// For normal fields: a and b share a minimal polynomial. Throws for
/// non-normal fields.
bool normal_orbit_decide(const FieldElement& a, const FieldElement& b);

// ---------------------------------------------------------------------------
// Isomorphism builder

using FullOrbitOracle =
    std::function<bool(const std::vector<FieldElement>&, const std::vector<FieldElement>&)>;
using LevelFunction = std::function<std::size_t(std::size_t)>;

/// Exact full-orbit oracle (automorphism search).
FullOrbitOracle exact_orbit_oracle();
/// Level function of the automorphism tree over the presentation's labels.
LevelFunction presentation_level_function(const FieldPresentation& f);

struct BuildStep {
  std::size_t label;                      // the element z added at this step
  FieldElement image;                     // f(z)
  std::vector<FieldElement> conjugates;   // roots of z's minimal polynomial over F_s, presentation order
  std::vector<bool> true_conjugate;       // oracle answers
  std::size_t level = 0;                  // level killing all false conjugates (tree recipe)
  std::vector<WitnessPolynomial> witnesses;  // one per false conjugate (field recipe)
};

struct BuiltIsomorphism {
  FieldEmbedding map;
  std::vector<BuildStep> steps;
};

/// Tree-language recipe: oracle for true conjugates, level function for a
/// level where every false conjugate node has died, then the first node of
/// the isomorphism tree at that level above f_s.
BuiltIsomorphism build_isomorphism(const FieldPresentation& f, const FieldPresentation& ff, const FullOrbitOracle& oracle,
                                   const LevelFunction& level_fn);
/// Field-language recipe: witness polynomials instead of trees.
BuiltIsomorphism build_isomorphism_by_witnesses(const FieldPresentation& f, const FieldPresentation& ff,
                                                const FullOrbitOracle& oracle);

// ---------------------------------------------------------------------------
// Diagonalisation

/// A scripted partial map phi_e: input label -> (output label, stage of
/// convergence). An input i may converge only at a stage s >= i.
class OracleTape {
 public:
  void set(std::size_t input, std::size_t output, int stage);
  bool converged(std::size_t input, int stage) const;
  std::optional<std::size_t> value(std::size_t input, int stage) const;
  const std::map<std::size_t, std::pair<std::size_t, int>>& entries() const { return entries_; }

 private:
  std::map<std::size_t, std::pair<std::size_t, int>> entries_;
};

/// F_0 = Q and F_{s+1} the normal closure within F of F_s and the least
/// domain element outside F_s, with primitive generator z_s and its
/// conjugates z_s^0 = z_s, z_s^1, ... (one per automorphism of F_s). The
/// domain starts with the presentation's labels and is closed under the
/// automorphisms of every F_s, new elements being appended in order.
class NormalChain {
 public:
  explicit NormalChain(const FieldPresentation& f);

  const FieldPtr& field() const { return field_; }
  /// Number of distinct fields F_0 ... F_T; F_s = F_T for s >= T.
  std::size_t length() const { return z_.size(); }
  std::size_t index(int s) const;
  const FieldElement& z(int s) const { return z_[index(s)]; }
  /// z_s^0, ..., z_s^{d_s}.
  const std::vector<FieldElement>& conjugates(int s) const { return conj_[index(s)]; }
  /// Labels of the conjugates in the domain.
  const std::vector<std::size_t>& conjugate_labels(int s) const { return conj_labels_[index(s)]; }

  const std::vector<FieldElement>& domain() const { return domain_; }
  std::optional<std::size_t> label_of(const FieldElement& x) const;
  /// Least s with x in F_s.
  int entry_stage(std::size_t label) const { return entry_[label]; }
  bool in_stage(const FieldElement& x, int s) const;
  /// sigma_s^k(x) for x in F_s.
  FieldElement apply(int s, std::size_t k, const FieldElement& x) const;
  /// k such that sigma_s^k restricted to F_t equals sigma_t^j, or nullopt.
  std::optional<std::size_t> restriction_index(int s, std::size_t k, int t) const;
  /// k' with sigma_s^k' = (sigma_s^k)^-1.
  std::size_t inverse_index(int s, std::size_t k) const;
  /// Some automorphism of F_s extends sigma_t^j.
  std::optional<std::size_t> extension_of(int t, std::size_t j, int s) const;
  /// F_s as a standalone field, with x -> image.
  FieldPtr stage_field(int s) const;
  FieldElement to_stage_field(int s, const FieldElement& x) const;
  /// P with x = P(z_s); throws if x is not in F_s.
  UniPoly polynomial_in_z(int s, const FieldElement& x) const { return express(index(s), x); }

 private:
  UniPoly express(std::size_t i, const FieldElement& x) const;  // x = P(z_i)

  FieldPtr field_;
  std::vector<FieldElement> z_;
  std::vector<std::vector<FieldElement>> conj_;
  std::vector<std::vector<std::size_t>> conj_labels_;
  std::vector<FieldElement> domain_;
  std::vector<int> entry_;
  std::vector<LinearSpan> spans_;  // powers of z_i
  mutable std::map<std::size_t, FieldPtr> stage_fields_;
};

/// Why phi_e cannot be an isomorphism: phi_e(x) = tilde_label, which f_{s+1}
/// assigns to preimage; no automorphism of F_{s+1} maps x there.
struct Clash {
  std::size_t x = 0;            // domain label of z_t^0 (or the inconsistent input)
  std::size_t tilde_label = 0;  // phi_e(x)
  std::optional<std::size_t> preimage;  // f_{s+1}^{-1}(phi_e(x)), a domain label
  std::optional<WitnessPolynomial> witness;  // p(x, Y) rooted, p(preimage, Y) rootless in F_{s+1}
  bool verified = false;
};

struct RequirementRecord {
  std::size_t e = 0;
  bool satisfied = false;
  int stage = -1;          // the stage s + 1 at which R_e was declared satisfied
  std::string branch;      // "consistency", "no-automorphism" or "twist"
  int t = -1;
  std::size_t j = 0, m = 0;
  std::size_t sigma = 0, tau = 0;  // indices of the automorphisms of F_s used
  Clash clash;
};

struct DiagRun {
  int horizon = 0;
  std::vector<RequirementRecord> log;  // one per tape
  /// f_s for s = 0..horizon: domain label -> label of the copy.
  std::vector<std::map<std::size_t, std::size_t>> f_history;
  /// Stage at which each label of the copy was created.
  std::vector<int> tilde_stage;
  /// Domain element whose image each copy label is under the final map.
  std::vector<std::size_t> tilde_preimage;
};

DiagRun diagonalize(const NormalChain& chain, const std::vector<OracleTape>& tapes, int horizon);

/// A tape that reports f_s on the conjugates of each z_t as soon as they
/// are in the domain of f_s (the construction's own map).
OracleTape tracking_tape(const NormalChain& chain, const std::vector<OracleTape>& others, int horizon);
/// A tape copying the final map of a run, converging at the given stage.
OracleTape final_map_tape(const NormalChain& chain, const DiagRun& run, int stage);

/// Whether the tape restricted to the domain of the final map is induced
/// by an isomorphism from F onto the copy.
bool tape_is_isomorphism(const NormalChain& chain, const DiagRun& run, const OracleTape& tape);

/// Decides <z_t, z_t^n> from a tape that is a genuine isomorphism and was
/// never defeated; s0 is the last stage at which a higher-priority
/// requirement was satisfied. Throws if the preconditions fail.
bool decide_via_scripted_isomorphism(const NormalChain& chain, const DiagRun& run, const std::vector<OracleTape>& tapes,
                                     std::size_t e, int t, std::size_t n);
/// Arbitrary pairs, through the automorphisms of a stage containing both.
bool decide_pair_via_scripted_isomorphism(const NormalChain& chain, const DiagRun& run,
                                          const std::vector<OracleTape>& tapes, std::size_t e, const FieldElement& a,
                                          const FieldElement& b);

}  // namespace cfield
