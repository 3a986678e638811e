#include "cfield/linalg.hpp"

namespace cfield {

bool LinearSpan::reduce(std::vector<mpq_class>& v, std::vector<mpq_class>& combo) const {
  // combo tracks v_original - (current v) as a combination of the basis.
  combo.assign(rows_.size(), mpq_class(0));
  for (const Row& r : rows_) {
    mpq_class c = v[r.pivot];
    if (c == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (r.values[j] != 0) v[j] -= c * r.values[j];
    for (std::size_t j = 0; j < r.combo.size(); ++j)
      if (r.combo[j] != 0) combo[j] += c * r.combo[j];
  }
  for (auto& x : v)
    if (x != 0) return false;
  return true;
}

std::optional<std::vector<BigRational>> LinearSpan::add(const std::vector<BigRational>& v) {
  if (v.size() != dim_) throw AlgebraError("vector of wrong dimension");
  std::vector<mpq_class> w;
  w.reserve(dim_);
  for (auto& x : v) w.push_back(x.raw());
  std::vector<mpq_class> combo;
  if (reduce(w, combo)) {
    std::vector<BigRational> out;
    for (auto& c : combo) out.emplace_back(c);
    return out;
  }
  // New basis vector b_k: w = b_k - sum combo[i] b_i.
  Row r;
  r.pivot = 0;
  while (w[r.pivot] == 0) ++r.pivot;
  mpq_class inv = 1 / w[r.pivot];
  for (auto& x : w) x *= inv;
  for (auto& c : combo) c = -c * inv;
  combo.push_back(inv);
  r.values = std::move(w);
  r.combo = std::move(combo);
  rows_.push_back(std::move(r));
  return std::nullopt;
}

std::optional<std::vector<BigRational>> LinearSpan::express(const std::vector<BigRational>& v) const {
  if (v.size() != dim_) throw AlgebraError("vector of wrong dimension");
  std::vector<mpq_class> w;
  w.reserve(dim_);
  for (auto& x : v) w.push_back(x.raw());
  std::vector<mpq_class> combo;
  if (!reduce(w, combo)) return std::nullopt;
  std::vector<BigRational> out;
  for (auto& c : combo) out.emplace_back(c);
  return out;
}

std::optional<std::vector<BigRational>> solve_linear(std::vector<std::vector<BigRational>> a,
                                                     std::vector<BigRational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    BigRational inv = a[col][col].inverse();
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      BigRational f = a[i][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  return b;
}

}  // namespace cfield
