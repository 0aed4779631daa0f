#ifndef QG_TESTS_CLASSICAL_ISO_HPP
#define QG_TESTS_CLASSICAL_ISO_HPP

#include <string>
#include <utility>
#include <vector>

#include "qg/iso.hpp"

namespace qg::oracle {

// Classical iso(N) in the (N+1)-dimensional affine representation, indices
// 1..N and N+1 for the bullet: rotations -E_ba + E_a'b', translations -E_b*.
using IMat = std::vector<std::vector<long>>;

struct ClassicalISO {
  int N, g;
  std::vector<IMat> rho;
  std::vector<std::pair<int, int>> pivot;
  explicit ClassicalISO(const ISOBasis& b) : N(b.N), g(b.size()) {
    for (auto& gen : b.gens) {
      IMat m(N + 2, std::vector<long>(N + 2, 0));
      if (gen.translation) {
        m[gen.b][N + 1] = -1;
        pivot.push_back({gen.b, N + 1});
      } else {
        m[gen.b][gen.a] -= 1;
        m[N + 1 - gen.a][N + 1 - gen.b] += 1;
        pivot.push_back({gen.b, gen.a});
      }
      rho.push_back(m);
    }
  }
  IMat bracket(int i, int j) const {
    IMat c(N + 2, std::vector<long>(N + 2, 0));
    for (int x = 1; x <= N + 1; ++x)
      for (int y = 1; y <= N + 1; ++y)
        for (int z = 1; z <= N + 1; ++z) c[x][z] += rho[i][x][y] * rho[j][y][z] - rho[j][x][y] * rho[i][y][z];
    return c;
  }
  // Coefficients read off the pivots; the reconstruction must be exact.
  std::vector<long> decompose(const IMat& m, bool& exact) const {
    std::vector<long> c(g);
    IMat r = m;
    for (int k = 0; k < g; ++k) {
      auto [x, y] = pivot[k];
      c[k] = -m[x][y];
      for (int a = 1; a <= N + 1; ++a)
        for (int b = 1; b <= N + 1; ++b) r[a][b] -= c[k] * rho[k][a][b];
    }
    exact = true;
    for (auto& row : r)
      for (long v : row) exact = exact && v == 0;
    return c;
  }
};

// Number of structure-constant mismatches against the classical oracle.
inline int classical_mismatches(const ISOAlgebra& al) {
  ClassicalISO cl(al.basis);
  int g = al.basis.size(), bad = 0;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      if (!al.lambda[i][j].is_one()) ++bad;
      bool exact = false;
      auto c = cl.decompose(cl.bracket(i, j), exact);
      if (!exact) ++bad;
      for (int k = 0; k < g; ++k) {
        auto it = al.C[i * g + j].find(k);
        Scalar got = it == al.C[i * g + j].end() ? Scalar(0) : it->second;
        if (got != Scalar(c[k])) ++bad;
      }
    }
  return bad;
}

inline ISOAlgebra substitute(ISOAlgebra al, const std::string& v, long x) {
  for (auto& row : al.lambda)
    for (auto& s : row) s = s.substitute(v, x);
  for (auto& row : al.C) {
    for (auto& [k, s] : row) s = s.substitute(v, x);
    for (auto it = row.begin(); it != row.end();) it = it->second.is_zero() ? row.erase(it) : std::next(it);
  }
  return al;
}

}  // namespace qg::oracle

#endif
