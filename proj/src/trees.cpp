#include "cfield/trees.hpp"

#include "cfield/linalg.hpp"
#include "cfield/towers.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cfield {

bool TreeNodeLess::operator()(const TreeNode& a, const TreeNode& b) const {
  std::size_t n = std::min(a.sigma.size(), b.sigma.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = canonical_compare(a.sigma[i], b.sigma[i]);
    if (c != 0) return c < 0;
  }
  return a.sigma.size() < b.sigma.size();
}

namespace {

FieldElement combine(const std::vector<BigRational>& k, const std::vector<FieldElement>& xs, const FieldPtr& f) {
  FieldElement y = f->zero();
  for (std::size_t j = 0; j < k.size(); ++j)
    if (!k[j].is_zero()) y += xs[j] * k[j];
  return y;
}

}  // namespace

EmbTree::EmbTree(std::vector<FieldElement> source_gens, FieldPtr codomain, std::vector<FieldElement> pinned)
    : gens_(std::move(source_gens)), cod_(std::move(codomain)), pinned_(std::move(pinned)) {
  if (gens_.empty()) throw AlgebraError("embedding tree needs at least one generator");
  src_ = gens_[0].owner();
  for (auto& g : gens_)
    if (g.owner() != src_) throw AlgebraError("generators belong to different fields");
  for (auto& p : pinned_)
    if (p.owner() != cod_) throw AlgebraError("pinned image is not in the codomain");
  if (pinned_.size() > gens_.size()) throw AlgebraError("more pinned images than generators");

  // Incremental primitive elements y_i of Q(x_0..x_{i-1}) and the minimal
  // polynomial of x_i over Q(y_i).
  std::vector<BigRational> k;
  FieldElement y = src_->zero();
  int dy = 1;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    q_.push_back(relative_min_poly(gens_[i], y));
    k_.push_back(k);
    int r = static_cast<int>(q_.back().size()) - 1;
    k.emplace_back(0);
    if (r > 1) {
      for (long c = 1;; ++c) {
        FieldElement cand = y + gens_[i] * BigRational(c);
        if (cand.min_poly().degree() == dy * r) {
          y = cand;
          k.back() = c;
          dy *= r;
          break;
        }
      }
    }
  }
  full_k_ = k;
  generates_ = dy == src_->degree();
  if (generates_) {
    LinearSpan span(static_cast<std::size_t>(src_->degree()));
    FieldElement pw = src_->one();
    for (int i = 0; i < dy; ++i) {
      span.add(pw.coords());
      pw *= y;
    }
    theta_in_y_ = UniPoly(*span.express(src_->theta().coords()));
  }
}

FieldPoly EmbTree::instantiated(const TreeNode& node) const {
  const std::size_t i = node.level();
  if (i >= gens_.size()) throw AlgebraError("node is at full depth");
  FieldElement y = combine(k_[i], node.sigma, cod_);
  std::vector<FieldElement> coeffs;
  for (auto& c : q_[i]) coeffs.push_back(eval_at(c, y));
  return FieldPoly(cod_, std::move(coeffs));
}

bool EmbTree::contains(const TreeNode& node) const {
  if (node.level() > gens_.size()) return false;
  TreeNode prefix;
  for (std::size_t i = 0; i < node.level(); ++i) {
    if (node.sigma[i].owner() != cod_) return false;
    if (i < pinned_.size() && node.sigma[i] != pinned_[i]) return false;
    if (!instantiated(prefix).eval(node.sigma[i]).is_zero()) return false;
    prefix.sigma.push_back(node.sigma[i]);
  }
  return true;
}

std::vector<TreeNode> EmbTree::children(const TreeNode& node) const {
  if (node.level() >= gens_.size()) return {};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(node);
    if (it != memo_.end()) return it->second;
  }
  if (!contains(node)) throw AlgebraError("node is not in the tree");
  std::vector<TreeNode> out;
  for (auto& r : roots_in_field(instantiated(node))) {
    if (node.level() < pinned_.size() && r != pinned_[node.level()]) continue;
    TreeNode c = node;
    c.sigma.push_back(r);
    out.push_back(std::move(c));
  }
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(node, out);
  return out;
}

std::vector<TreeNode> EmbTree::level(std::size_t n) const {
  if (n > gens_.size()) throw AlgebraError("level beyond the generating sequence");
  std::vector<TreeNode> cur{root()};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<TreeNode> next;
    for (auto& node : cur)
      for (auto& c : children(node)) next.push_back(std::move(c));
    cur = std::move(next);
  }
  return cur;
}

std::size_t EmbTree::level_count(std::size_t n) const { return level(n).size(); }

std::vector<std::size_t> EmbTree::level_counts() const {
  std::vector<std::size_t> out{1};
  std::vector<TreeNode> cur{root()};
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    std::vector<TreeNode> next;
    for (auto& node : cur)
      for (auto& c : children(node)) next.push_back(std::move(c));
    cur = std::move(next);
    out.push_back(cur.size());
  }
  return out;
}

std::vector<TreeNode> EmbTree::paths() const { return level(gens_.size()); }

std::optional<TreeNode> EmbTree::first_at_level(const TreeNode& from, std::size_t n) const {
  if (n > gens_.size()) throw AlgebraError("level beyond the generating sequence");
  if (from.level() == n) return from;
  if (from.level() > n) return std::nullopt;
  for (auto& c : children(from))
    if (auto hit = first_at_level(c, n)) return hit;
  return std::nullopt;
}

std::optional<TreeNode> EmbTree::first_path(const TreeNode& from) const { return first_at_level(from, gens_.size()); }

FieldEmbedding EmbTree::path_to_embedding(const TreeNode& path) const {
  if (path.level() != gens_.size()) throw AlgebraError("not a full-depth path");
  if (!generates_) throw AlgebraError("generating sequence does not generate the source field");
  if (!contains(path)) throw AlgebraError("path is not in the tree");
  FieldElement y = combine(full_k_, path.sigma, cod_);
  return FieldEmbedding(src_, cod_, eval_at(theta_in_y_, y));
}

TreeNode EmbTree::embedding_to_path(const FieldEmbedding& psi) const {
  if (psi.domain() != src_ || psi.codomain() != cod_) throw AlgebraError("embedding does not match the tree");
  TreeNode out;
  for (auto& g : gens_) out.sigma.push_back(psi(g));
  return out;
}

std::string EmbTree::dot(std::size_t max_level) const {
  std::ostringstream os;
  os << "digraph tree {\n  node [shape=box];\n";
  std::map<TreeNode, int, TreeNodeLess> ids;
  std::vector<TreeNode> cur{root()};
  ids[root()] = 0;
  os << "  n0 [label=\"()\"];\n";
  for (std::size_t lvl = 0; lvl < std::min(max_level, gens_.size()); ++lvl) {
    std::vector<TreeNode> next;
    for (auto& node : cur) {
      for (auto& c : children(node)) {
        int id = static_cast<int>(ids.size());
        ids[c] = id;
        os << "  n" << id << " [label=\"" << c.sigma.back().poly_str() << "\"];\n";
        os << "  n" << ids[node] << " -> n" << id << ";\n";
        next.push_back(c);
      }
    }
    cur = std::move(next);
  }
  os << "}\n";
  return os.str();
}

std::size_t level_function(const EmbTree& t, std::size_t n) { return t.level_count(n); }

TreeMap canonical_tree_map(const FieldEmbedding& psi, const EmbTree& t_f, const EmbTree& t_ff) {
  if (t_f.source_gens() != t_ff.source_gens()) throw AlgebraError("trees built from different generating sequences");
  if (t_f.codomain() != psi.domain() || t_ff.codomain() != psi.codomain() || t_f.source_field() != psi.domain())
    throw AlgebraError("embedding does not match the trees");
  TreeMap out;
  std::set<TreeNode, TreeNodeLess> image;
  std::size_t total_target = 0;
  out.successor_preserving = true;
  for (std::size_t lvl = 0; lvl <= t_f.depth(); ++lvl) {
    total_target += t_ff.level_count(lvl);
    for (auto& node : t_f.level(lvl)) {
      TreeNode h;
      for (auto& x : node.sigma) h.sigma.push_back(psi(x));
      if (!t_ff.contains(h)) out.successor_preserving = false;
      if (lvl < t_f.depth()) {
        // Children of sigma must map onto children of H(sigma).
        auto ca = t_f.children(node);
        auto cb = t_ff.children(h);
        std::set<TreeNode, TreeNodeLess> mapped;
        for (auto& c : ca) {
          TreeNode hc;
          for (auto& x : c.sigma) hc.sigma.push_back(psi(x));
          mapped.insert(hc);
        }
        std::set<TreeNode, TreeNodeLess> want(cb.begin(), cb.end());
        if (mapped != want) out.successor_preserving = false;
      }
      image.insert(h);
      out.pairs.emplace_back(node, h);
    }
  }
  out.bijective = image.size() == out.pairs.size() && image.size() == total_target;
  return out;
}

namespace {

std::vector<FieldElement> generating_sequence(const FieldPtr& e) {
  std::vector<FieldElement> gens = e->tower_generators();
  if (gens.empty()) gens.push_back(e->theta());
  return gens;
}

std::vector<FieldEmbedding> embeddings_from_tree(const EmbTree& t) {
  std::vector<FieldEmbedding> out;
  for (auto& p : t.paths()) out.push_back(t.path_to_embedding(p));
  return out;
}

}  // namespace

std::vector<FieldEmbedding> enumerate_embeddings(const FieldPtr& e, const FieldPtr& f) {
  std::vector<FieldElement> gens = generating_sequence(e);
  {
    EmbTree probe(gens, f);
    if (probe.generates_source()) return embeddings_from_tree(probe);
  }
  gens.push_back(e->theta());
  EmbTree t(gens, f);
  return embeddings_from_tree(t);
}

std::vector<FieldEmbedding> enumerate_embeddings(const FieldPtr& e, const FieldPtr& f, const FieldEmbedding& k_in_e,
                                                 const FieldEmbedding& k_in_f) {
  if (k_in_e.codomain() != e || k_in_f.codomain() != f || k_in_e.domain() != k_in_f.domain())
    throw AlgebraError("subfield embeddings do not match");
  const FieldPtr& k = k_in_e.domain();
  std::vector<FieldElement> gens{k_in_e(k->theta())};
  for (auto& g : generating_sequence(e)) gens.push_back(g);
  EmbTree probe(gens, f, {k_in_f(k->theta())});
  if (probe.generates_source()) return embeddings_from_tree(probe);
  gens.push_back(e->theta());
  EmbTree t(gens, f, {k_in_f(k->theta())});
  return embeddings_from_tree(t);
}

std::vector<FieldEmbedding> automorphisms(const FieldPtr& f) { return enumerate_embeddings(f, f); }

}  // namespace cfield
