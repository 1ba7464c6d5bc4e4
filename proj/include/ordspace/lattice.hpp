#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ordspace/rational.hpp"

namespace ordspace {

using Mat = std::vector<std::vector<Int>>;

inline Mat mat_identity(int n) {
  Mat I(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline Mat mat_transpose(const Mat& A) {
  if (A.empty()) return {};
  Mat T(A[0].size(), std::vector<Int>(A.size()));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A[0].size(); ++j) T[j][i] = A[i][j];
  return T;
}

inline Mat mat_mul(const Mat& A, const Mat& B) {
  Mat C(A.size(), std::vector<Int>(B.empty() ? 0 : B[0].size(), 0));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t k = 0; k < B.size(); ++k) {
      if (A[i][k] == 0) continue;
      for (std::size_t j = 0; j < B[0].size(); ++j)
        C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

/// Row-style Hermite normal form with transform: returns (H, U) with
/// U unimodular and U*A = H.  Pivots positive, entries above a pivot
/// reduced into [0, pivot), zero rows at the bottom.
inline std::pair<Mat, Mat> row_hnf_transform(Mat A) {
  int m = static_cast<int>(A.size());
  int n = m == 0 ? 0 : static_cast<int>(A[0].size());
  Mat U = mat_identity(m);
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    // Euclidean elimination below row r in column c.
    for (;;) {
      int piv = -1;
      for (int i = r; i < m; ++i)
        if (A[i][c] != 0 &&
            (piv < 0 ||
             boost::multiprecision::abs(A[i][c]) <
                 boost::multiprecision::abs(A[piv][c])))
          piv = i;
      if (piv < 0) break;
      std::swap(A[r], A[piv]);
      std::swap(U[r], U[piv]);
      bool cleared = true;
      for (int i = r + 1; i < m; ++i) {
        if (A[i][c] == 0) continue;
        Int q = floor_div(A[i][c], A[r][c]);
        for (int j = 0; j < n; ++j) A[i][j] -= q * A[r][j];
        for (int j = 0; j < m; ++j) U[i][j] -= q * U[r][j];
        if (A[i][c] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (A[r][c] == 0) continue;
    if (A[r][c] < 0) {
      for (int j = 0; j < n; ++j) A[r][j] = -A[r][j];
      for (int j = 0; j < m; ++j) U[r][j] = -U[r][j];
    }
    for (int i = 0; i < r; ++i) {
      Int q = floor_div(A[i][c], A[r][c]);
      if (q == 0) continue;
      for (int j = 0; j < n; ++j) A[i][j] -= q * A[r][j];
      for (int j = 0; j < m; ++j) U[i][j] -= q * U[r][j];
    }
    ++r;
  }
  return {A, U};
}

inline Mat row_hnf(Mat A) { return row_hnf_transform(std::move(A)).first; }

inline int mat_rank(const Mat& A) {
  Mat H = row_hnf(A);
  int r = 0;
  for (const auto& row : H) {
    bool nz = false;
    for (const Int& x : row) nz = nz || x != 0;
    if (nz) ++r;
  }
  return r;
}

/// Basis of the integer kernel {x : A x = 0}, rows in HNF.
inline Mat int_kernel(const Mat& A, int ncols) {
  Mat T = mat_transpose(A);
  if (T.empty()) T = Mat(ncols, std::vector<Int>());
  auto [H, U] = row_hnf_transform(T);
  Mat ker;
  for (std::size_t i = 0; i < H.size(); ++i) {
    bool zero = true;
    for (const Int& x : H[i]) zero = zero && x == 0;
    if (zero) ker.push_back(U[i]);
  }
  return row_hnf(std::move(ker));
}

/// Smith normal form with tracked transforms: U*A*V = D, and the
/// inverses Uinv, Vinv maintained alongside (A = Uinv*D*Vinv).
struct SmithResult {
  Mat D, U, Uinv, V, Vinv;
  int rank = 0;
};

inline SmithResult smith_normal_form(Mat A) {
  int m = static_cast<int>(A.size());
  int n = m == 0 ? 0 : static_cast<int>(A[0].size());
  SmithResult R;
  R.U = mat_identity(m);
  R.Uinv = mat_identity(m);
  R.V = mat_identity(n);
  R.Vinv = mat_identity(n);

  auto row_op = [&](int dst, int src, const Int& q) {
    // row dst -= q * row src;  Uinv column update is the inverse op.
    for (int j = 0; j < n; ++j) A[dst][j] -= q * A[src][j];
    for (int j = 0; j < m; ++j) R.U[dst][j] -= q * R.U[src][j];
    for (int i = 0; i < m; ++i) R.Uinv[i][src] += q * R.Uinv[i][dst];
  };
  auto col_op = [&](int dst, int src, const Int& q) {
    for (int i = 0; i < m; ++i) A[i][dst] -= q * A[i][src];
    for (int i = 0; i < n; ++i) R.V[i][dst] -= q * R.V[i][src];
    for (int j = 0; j < n; ++j) R.Vinv[src][j] += q * R.Vinv[dst][j];
  };
  auto row_swap = [&](int a, int b) {
    std::swap(A[a], A[b]);
    std::swap(R.U[a], R.U[b]);
    for (int i = 0; i < m; ++i) std::swap(R.Uinv[i][a], R.Uinv[i][b]);
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < m; ++i) std::swap(A[i][a], A[i][b]);
    for (int i = 0; i < n; ++i) std::swap(R.V[i][a], R.V[i][b]);
    std::swap(R.Vinv[a], R.Vinv[b]);
  };
  auto row_neg = [&](int a) {
    for (int j = 0; j < n; ++j) A[a][j] = -A[a][j];
    for (int j = 0; j < m; ++j) R.U[a][j] = -R.U[a][j];
    for (int i = 0; i < m; ++i) R.Uinv[i][a] = -R.Uinv[i][a];
  };

  int t = 0;
  while (t < m && t < n) {
    // locate a minimal nonzero pivot in the trailing block
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (A[i][j] != 0 &&
            (pi < 0 || boost::multiprecision::abs(A[i][j]) <
                           boost::multiprecision::abs(A[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);
    bool dirty = false;
    for (int i = t + 1; i < m; ++i)
      if (A[i][t] != 0) {
        row_op(i, t, floor_div(A[i][t], A[t][t]));
        dirty = dirty || A[i][t] != 0;
      }
    for (int j = t + 1; j < n; ++j)
      if (A[t][j] != 0) {
        col_op(j, t, floor_div(A[t][j], A[t][t]));
        dirty = dirty || A[t][j] != 0;
      }
    if (dirty) continue;
    // divisibility fix: pivot must divide every remaining entry
    bool fixed = true;
    for (int i = t + 1; i < m && fixed; ++i)
      for (int j = t + 1; j < n && fixed; ++j)
        if (A[i][j] % A[t][t] != 0) {
          row_op(t, i, Int(-1));  // add row i into row t
          fixed = false;
        }
    if (!fixed) continue;
    if (A[t][t] < 0) row_neg(t);
    ++t;
  }
  R.D = std::move(A);
  R.rank = t;
  return R;
}

/// Sublattice of Z^k; `rows` holds the basis vectors as rows in
/// canonical HNF, so equal lattices compare equal componentwise.
struct Lattice {
  int dim = 0;
  Mat rows;

  static Lattice from_generators(int dim, const Mat& gens) {
    Lattice L;
    L.dim = dim;
    Mat H = row_hnf(gens);
    for (auto& r : H) {
      bool nz = false;
      for (const Int& x : r) nz = nz || x != 0;
      if (nz) L.rows.push_back(r);
    }
    return L;
  }
  static Lattice full(int dim) {
    Lattice L;
    L.dim = dim;
    for (const auto& r : mat_identity(dim)) L.rows.push_back(r);
    return L;
  }

  int rank() const { return static_cast<int>(rows.size()); }

  bool contains(std::vector<Int> v) const {
    for (const auto& row : rows) {
      int p = 0;
      while (p < dim && row[p] == 0) ++p;
      if (p == dim) continue;
      if (v[p] % row[p] != 0) {
        // echelon rows: nothing later can touch coordinate p
      } else {
        Int q = v[p] / row[p];
        for (int j = 0; j < dim; ++j) v[j] -= q * row[j];
      }
    }
    for (const Int& x : v)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.dim == b.dim && a.rows == b.rows;
  }

  nlohmann::json to_json() const {
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json r = nlohmann::json::array();
      for (const Int& x : row) r.push_back(x.str());
      rs.push_back(r);
    }
    return nlohmann::json{{"dim", dim}, {"basis", rs}};
  }
};

/// Integer row vectors annihilating every lattice vector.
inline Mat lattice_annihilator(const Lattice& L) {
  if (L.rank() == 0) return mat_identity(L.dim);
  return int_kernel(L.rows, L.dim);  // rows u with L.rows * u = 0
}

/// Saturation (isolator) of L in Z^k: same rank, direct summand.
inline Lattice saturate(const Lattice& L) {
  Mat ann = lattice_annihilator(L);
  if (ann.empty()) return Lattice::full(L.dim);
  return Lattice::from_generators(L.dim, int_kernel(ann, L.dim));
}

/// Index of L inside its saturation (finite; 1 iff saturated).
inline Int saturation_index(const Lattice& L) {
  if (L.rank() == 0) return 1;
  SmithResult S = smith_normal_form(mat_transpose(L.rows));
  Int idx = 1;
  for (int i = 0; i < S.rank; ++i) idx *= S.D[i][i];
  return idx;
}

/// For a saturated lattice L of rank r, a basis of Z^k adapted to it:
/// first r columns span L, the rest a complement.
inline Mat adapted_basis(const Lattice& L) {
  SmithResult S = smith_normal_form(mat_transpose(L.rows));
  // L = Uinv * span(d_1 e_1 .. d_r e_r); saturated means all d_i = 1.
  return S.Uinv;  // columns
}

}  // namespace ordspace
