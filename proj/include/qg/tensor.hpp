#ifndef QG_TENSOR_HPP
#define QG_TENSOR_HPP

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "qg/scalar.hpp"

namespace qg {

using Complex = std::complex<double>;

inline bool is_zero(const Scalar& x) { return x.is_zero(); }
inline bool is_zero(const Complex& x) { return x == Complex(0); }

using Index = std::vector<int>;

// Sparse multi-index array with 1-based indices; absent entries are zero.
template <class T>
class SparseTensor {
 public:
  SparseTensor() = default;
  SparseTensor(int rank, int dim) : rank_(rank), dim_(dim) {}

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  std::size_t nnz() const { return e_.size(); }

  std::uint64_t key(const Index& idx) const {
    std::uint64_t k = 0;
    for (int a : idx) k = k * dim_ + (a - 1);
    return k;
  }
  Index unkey(std::uint64_t k) const {
    Index idx(rank_);
    for (int i = rank_ - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(k % dim_) + 1;
      k /= dim_;
    }
    return idx;
  }

  T get(const Index& idx) const {
    auto it = e_.find(key(idx));
    return it == e_.end() ? T(0) : it->second;
  }
  void set(const Index& idx, const T& v) {
    if (is_zero(v)) e_.erase(key(idx));
    else e_[key(idx)] = v;
  }
  void add(const Index& idx, const T& v) {
    if (is_zero(v)) return;
    auto k = key(idx);
    auto it = e_.find(k);
    if (it == e_.end()) {
      e_.emplace(k, v);
    } else {
      it->second = it->second + v;
      if (is_zero(it->second)) e_.erase(it);
    }
  }

  // Entries in lexicographic index order.
  std::vector<std::pair<Index, T>> sorted() const {
    std::vector<std::uint64_t> keys;
    keys.reserve(e_.size());
    for (auto& [k, v] : e_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    std::vector<std::pair<Index, T>> out;
    out.reserve(keys.size());
    for (auto k : keys) out.emplace_back(unkey(k), e_.at(k));
    return out;
  }
  const std::unordered_map<std::uint64_t, T>& raw() const { return e_; }

 private:
  int rank_ = 0, dim_ = 0;
  std::unordered_map<std::uint64_t, T> e_;
};

nlohmann::json tensor_to_json(const SparseTensor<Scalar>& t);
SparseTensor<Scalar> tensor_from_json(const nlohmann::json& j);

// Sparse square matrix, rows stored as ordered maps.
template <class T>
class SparseMatrix {
 public:
  using Row = std::map<int, T>;
  SparseMatrix() = default;
  explicit SparseMatrix(int n) : rows_(n) {}
  static SparseMatrix identity(int n) {
    SparseMatrix m(n);
    for (int i = 0; i < n; ++i) m.rows_[i].emplace(i, T(1));
    return m;
  }

  int size() const { return static_cast<int>(rows_.size()); }
  const Row& row(int i) const { return rows_[i]; }
  Row& row_mut(int i) { return rows_[i]; }
  T get(int i, int j) const {
    auto it = rows_[i].find(j);
    return it == rows_[i].end() ? T(0) : it->second;
  }
  void set(int i, int j, const T& v) {
    if (is_zero(v)) rows_[i].erase(j);
    else rows_[i][j] = v;
  }
  void add(int i, int j, const T& v) {
    if (is_zero(v)) return;
    auto& r = rows_[i];
    auto it = r.find(j);
    if (it == r.end()) {
      r.emplace(j, v);
    } else {
      it->second = it->second + v;
      if (is_zero(it->second)) r.erase(it);
    }
  }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (auto& r : rows_) n += r.size();
    return n;
  }
  bool is_zero_matrix() const {
    for (auto& r : rows_)
      if (!r.empty()) return false;
    return true;
  }

  SparseMatrix operator*(const SparseMatrix& o) const {
    SparseMatrix out(size());
    for (int i = 0; i < size(); ++i) out.rows_[i] = row_times(rows_[i], o);
    return out;
  }
  SparseMatrix operator+(const SparseMatrix& o) const {
    SparseMatrix out = *this;
    for (int i = 0; i < size(); ++i)
      for (auto& [j, v] : o.rows_[i]) out.add(i, j, v);
    return out;
  }
  SparseMatrix operator-(const SparseMatrix& o) const { return *this + o.scaled(T(-1)); }
  SparseMatrix scaled(const T& c) const {
    SparseMatrix out(size());
    if (is_zero(c)) return out;
    for (int i = 0; i < size(); ++i)
      for (auto& [j, v] : rows_[i]) out.rows_[i].emplace(j, v * c);
    return out;
  }
  bool operator==(const SparseMatrix& o) const { return rows_ == o.rows_; }

  // Row vector times matrix.
  static Row row_times(const Row& v, const SparseMatrix& m) {
    Row acc;
    for (auto& [k, a] : v)
      for (auto& [j, b] : m.rows_[k]) {
        auto it = acc.find(j);
        if (it == acc.end()) acc.emplace(j, a * b);
        else it->second = it->second + a * b;
      }
    for (auto it = acc.begin(); it != acc.end();)
      it = is_zero(it->second) ? acc.erase(it) : std::next(it);
    return acc;
  }

  // First nonzero entry, if any, as (row, col).
  bool first_nonzero(int& i, int& j) const {
    for (i = 0; i < size(); ++i)
      if (!rows_[i].empty()) {
        j = rows_[i].begin()->first;
        return true;
      }
    return false;
  }

 private:
  std::vector<Row> rows_;
};

}  // namespace qg

#endif
