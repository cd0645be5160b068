#pragma once

#include <span>
#include <vector>

namespace netgeo {

// Dense symmetric n x n matrix, row-major. Symmetry holds by construction:
// `set(i, j, v)` writes both (i, j) and (j, i).
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n);

  static SymMatrix identity(int n);
  static SymMatrix diagonal(std::span<const double> diag);
  // Throws std::invalid_argument unless rows form an exactly symmetric square grid.
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int n() const noexcept { return n_; }
  double operator()(int i, int j) const { return entries_[index(i, j)]; }
  void set(int i, int j, double value) {
    entries_[index(i, j)] = value;
    entries_[index(j, i)] = value;
  }
  std::span<const double> data() const noexcept { return entries_; }

  double trace() const;
  SymMatrix hadamard_square() const;
  // Rows/columns relabelled so that result(p[i], p[j]) = (*this)(i, j), i.e. P M P^t.
  SymMatrix permuted(std::span<const int> mapping) const;
  // Leading k x k block.
  SymMatrix leading(int k) const;
  // Dense row-major product this * other (not symmetric in general).
  std::vector<double> multiply(const SymMatrix& other) const;

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<double> entries_;
};

struct PDReport {
  bool is_pd = false;
  std::vector<double> leading_minors;
};

// Closed forms for n <= 3, partial-pivoting LU otherwise.
double determinant(const SymMatrix& m);

// adj(m)(i, j) = (-1)^(i+j) det(m without row j and column i), built from
// n^2 cofactor determinants so it stays bounded as det(m) -> 0.
SymMatrix adjugate(const SymMatrix& m);

// Strict positivity of every pivot of an unpivoted elimination; no epsilon.
PDReport pd_test(const SymMatrix& m);

// adj(m)/det(m) for n <= 6, Gauss-Jordan with partial pivoting otherwise.
// Throws SingularMatrixError on det == 0 or a zero pivot.
SymMatrix inverse(const SymMatrix& m);

// Always the factorization route; independent of `adjugate`.
SymMatrix inverse_by_elimination(const SymMatrix& m);

namespace kernels {

// Determinant of the row-major n x n matrix in `a`; `a` is overwritten.
double determinant_in_place(std::span<double> a, int n);

// Cholesky test on the row-major n x n matrix in `a` (overwritten).
bool cholesky_in_place(std::span<double> a, int n);

// Upper triangle (and mirrored lower) of the adjugate of a symmetric
// row-major matrix. `scratch` needs (n-1)^2 entries.
void symmetric_adjugate(std::span<const double> a, int n, std::span<double> out, std::span<double> scratch);

}  // namespace kernels

}  // namespace netgeo
