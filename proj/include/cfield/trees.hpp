#pragma once

#include "cfield/field_poly.hpp"
#include "cfield/number_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cfield {

/// A node is identified by its images sigma(0), ..., sigma(k-1).
struct TreeNode {
  std::vector<FieldElement> sigma;
  std::size_t level() const { return sigma.size(); }
  friend bool operator==(const TreeNode& a, const TreeNode& b) { return a.sigma == b.sigma; }
};

struct TreeNodeLess {
  bool operator()(const TreeNode& a, const TreeNode& b) const;
};

/// Tree of partial embeddings of a generating sequence x_0, ..., x_{k-1} of
/// a field E into a field F. A node at level i is a tuple of images whose
/// entries satisfy the minimal polynomials q_j of x_j over Q(x_0..x_{j-1}).
/// Children are computed on demand and memoised.
class EmbTree {
 public:
  /// pinned optionally fixes the images of the first few generators.
  EmbTree(std::vector<FieldElement> source_gens, FieldPtr codomain, std::vector<FieldElement> pinned = {});

  const std::vector<FieldElement>& source_gens() const { return gens_; }
  const FieldPtr& source_field() const { return src_; }
  const FieldPtr& codomain() const { return cod_; }
  std::size_t depth() const { return gens_.size(); }
  /// Whether the generating sequence generates the whole source field.
  bool generates_source() const { return generates_; }

  /// q_i written with coefficients as rational polynomials in the level's
  /// primitive element y_i = sum_j combination(i)[j] * x_j.
  const std::vector<UniPoly>& min_poly(std::size_t i) const { return q_[i]; }
  const std::vector<BigRational>& combination(std::size_t i) const { return k_[i]; }
  /// q_i with the node's images substituted for x_0, ..., x_{i-1}.
  FieldPoly instantiated(const TreeNode& node) const;

  TreeNode root() const { return TreeNode{}; }
  bool contains(const TreeNode& node) const;
  /// One-step extensions in canonical order of the new image.
  std::vector<TreeNode> children(const TreeNode& node) const;
  std::vector<TreeNode> level(std::size_t n) const;
  std::size_t level_count(std::size_t n) const;
  /// Node counts for levels 0..depth.
  std::vector<std::size_t> level_counts() const;
  /// All nodes at full depth.
  std::vector<TreeNode> paths() const;
  /// Depth-first search for a full-depth node extending the given node;
  /// children are visited in canonical order.
  std::optional<TreeNode> first_path(const TreeNode& from) const;
  /// First node at level n extending the given node, depth-first.
  std::optional<TreeNode> first_at_level(const TreeNode& from, std::size_t n) const;
  /// Primitive element of the whole sequence: sum full_combination()[j] * x_j.
  const std::vector<BigRational>& full_combination() const { return full_k_; }

  FieldEmbedding path_to_embedding(const TreeNode& path) const;
  TreeNode embedding_to_path(const FieldEmbedding& psi) const;

  /// Graphviz rendering down to the given level.
  std::string dot(std::size_t max_level) const;

 private:
  std::vector<FieldElement> gens_;
  FieldPtr src_, cod_;
  std::vector<FieldElement> pinned_;
  std::vector<std::vector<UniPoly>> q_;
  std::vector<std::vector<BigRational>> k_;  // k_[i] has i entries
  bool generates_ = false;
  std::vector<BigRational> full_k_;  // primitive element of all generators
  UniPoly theta_in_y_;               // source theta as a polynomial in it

  mutable std::mutex mu_;
  mutable std::map<TreeNode, std::vector<TreeNode>, TreeNodeLess> memo_;
};

/// Level function: number of nodes at level n. Throws if n > depth.
std::size_t level_function(const EmbTree& t, std::size_t n);

struct TreeMap {
  std::vector<std::pair<TreeNode, TreeNode>> pairs;  // sigma -> H(sigma), all levels
  bool bijective = false;
  bool successor_preserving = false;
};

/// H_psi(sigma) = (psi(sigma(0)), ..., psi(sigma(n-1))), from the tree of
/// F into F to the tree of F into F~, over the same generating sequence.
TreeMap canonical_tree_map(const FieldEmbedding& psi, const EmbTree& t_f, const EmbTree& t_ff);

}  // namespace cfield
