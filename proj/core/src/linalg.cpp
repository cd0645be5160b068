#include "netgeo/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "netgeo/errors.hpp"

namespace netgeo {

namespace kernels {

double determinant_in_place(std::span<double> a, int n) {
  const auto at = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  };
  switch (n) {
    case 0:
      return 1.0;
    case 1:
      return a[0];
    case 2:
      return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    case 3:
      return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
             at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
             at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    default:
      break;
  }
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(at(k, k));
    for (int r = k + 1; r < n; ++r) {
      if (std::abs(at(r, k)) > best) {
        best = std::abs(at(r, k));
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != k) {
      for (int c = k; c < n; ++c) std::swap(at(k, c), at(pivot, c));
      det = -det;
    }
    const double diag = at(k, k);
    det *= diag;
    for (int r = k + 1; r < n; ++r) {
      const double factor = at(r, k) / diag;
      if (factor == 0.0) continue;
      for (int c = k + 1; c < n; ++c) at(r, c) -= factor * at(k, c);
    }
  }
  return det;
}

bool cholesky_in_place(std::span<double> a, int n) {
  const auto at = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  };
  for (int j = 0; j < n; ++j) {
    double d = at(j, j);
    for (int k = 0; k < j; ++k) d -= at(j, k) * at(j, k);
    if (!(d > 0.0)) return false;
    const double l = std::sqrt(d);
    at(j, j) = l;
    for (int i = j + 1; i < n; ++i) {
      double s = at(i, j);
      for (int k = 0; k < j; ++k) s -= at(i, k) * at(j, k);
      at(i, j) = s / l;
    }
  }
  return true;
}

void symmetric_adjugate(std::span<const double> a, int n, std::span<double> out, std::span<double> scratch) {
  const auto nn = static_cast<std::size_t>(n);
  if (n == 1) {
    out[0] = 1.0;
    return;
  }
  const int m = n - 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      // Minor with row j and column i removed; symmetric input makes it the
      // transpose of the (i, j) minor, so the determinant is shared.
      std::size_t w = 0;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0; c < n; ++c) {
          if (c == i) continue;
          scratch[w++] = a[static_cast<std::size_t>(r) * nn + static_cast<std::size_t>(c)];
        }
      }
      double cofactor = determinant_in_place(scratch.first(static_cast<std::size_t>(m) * m), m);
      if ((i + j) % 2 != 0) cofactor = -cofactor;
      out[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(j)] = cofactor;
      out[static_cast<std::size_t>(j) * nn + static_cast<std::size_t>(i)] = cofactor;
    }
  }
}

}  // namespace kernels

SymMatrix::SymMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {
  if (n < 1) throw std::invalid_argument("SymMatrix: dimension must be positive");
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.n(); ++i) m.set(i, i, diag[static_cast<std::size_t>(i)]);
  return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw std::invalid_argument("SymMatrix: rows must form a square grid");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v != rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
        throw std::invalid_argument("SymMatrix: input is not symmetric");
      }
      m.set(i, j, v);
    }
  }
  return m;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

SymMatrix SymMatrix::hadamard_square() const {
  SymMatrix out = *this;
  for (double& v : out.entries_) v *= v;
  return out;
}

SymMatrix SymMatrix::permuted(std::span<const int> mapping) const {
  if (static_cast<int>(mapping.size()) != n_) throw std::invalid_argument("SymMatrix: permutation size mismatch");
  SymMatrix out(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      out.entries_[out.index(mapping[static_cast<std::size_t>(i)], mapping[static_cast<std::size_t>(j)])] =
          (*this)(i, j);
    }
  }
  return out;
}

SymMatrix SymMatrix::leading(int k) const {
  if (k < 1 || k > n_) throw std::out_of_range("SymMatrix: leading block size out of range");
  SymMatrix out(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) out.entries_[out.index(i, j)] = (*this)(i, j);
  }
  return out;
}

std::vector<double> SymMatrix::multiply(const SymMatrix& other) const {
  if (other.n_ != n_) throw std::invalid_argument("SymMatrix: dimension mismatch in product");
  std::vector<double> out(entries_.size(), 0.0);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      const double aik = (*this)(i, k);
      for (int j = 0; j < n_; ++j) out[index(i, j)] += aik * other(k, j);
    }
  }
  return out;
}

double determinant(const SymMatrix& m) {
  std::vector<double> work(m.data().begin(), m.data().end());
  return kernels::determinant_in_place(work, m.n());
}

SymMatrix adjugate(const SymMatrix& m) {
  const int n = m.n();
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  std::vector<double> scratch(static_cast<std::size_t>(std::max(1, (n - 1) * (n - 1))));
  kernels::symmetric_adjugate(m.data(), n, out, scratch);
  SymMatrix adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) adj.set(i, j, out[static_cast<std::size_t>(i) * n + j]);
  }
  return adj;
}

PDReport pd_test(const SymMatrix& m) {
  const int n = m.n();
  PDReport report;
  report.leading_minors.resize(static_cast<std::size_t>(n));
  std::vector<double> a(m.data().begin(), m.data().end());
  const auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  bool all_positive = true;
  double minor = 1.0;
  int k = 0;
  for (; k < n; ++k) {
    const double pivot = at(k, k);
    if (pivot == 0.0) break;
    if (!(pivot > 0.0)) all_positive = false;
    minor *= pivot;
    report.leading_minors[static_cast<std::size_t>(k)] = minor;
    for (int r = k + 1; r < n; ++r) {
      const double factor = at(r, k) / pivot;
      for (int c = k + 1; c < n; ++c) at(r, c) -= factor * at(k, c);
    }
  }
  if (k < n) {
    // Zero pivot: elimination cannot continue, the remaining minors come
    // from their own determinants.
    all_positive = false;
    for (int j = k; j < n; ++j) report.leading_minors[static_cast<std::size_t>(j)] = determinant(m.leading(j + 1));
  }
  report.is_pd = all_positive;
  return report;
}

SymMatrix inverse(const SymMatrix& m) {
  if (m.n() > 6) return inverse_by_elimination(m);
  const double det = determinant(m);
  if (det == 0.0) throw SingularMatrixError("inverse: matrix is singular (det = 0)");
  const SymMatrix adj = adjugate(m);
  SymMatrix out(m.n());
  for (int i = 0; i < m.n(); ++i) {
    for (int j = i; j < m.n(); ++j) out.set(i, j, adj(i, j) / det);
  }
  return out;
}

SymMatrix inverse_by_elimination(const SymMatrix& m) {
  const int n = m.n();
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> a(m.data().begin(), m.data().end());
  std::vector<double> inv(nn * nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i) inv[i * nn + i] = 1.0;

  for (std::size_t k = 0; k < nn; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < nn; ++r) {
      if (std::abs(a[r * nn + k]) > std::abs(a[pivot * nn + k])) pivot = r;
    }
    if (a[pivot * nn + k] == 0.0) throw SingularMatrixError("inverse: zero pivot in elimination");
    if (pivot != k) {
      for (std::size_t c = 0; c < nn; ++c) {
        std::swap(a[k * nn + c], a[pivot * nn + c]);
        std::swap(inv[k * nn + c], inv[pivot * nn + c]);
      }
    }
    const double diag = a[k * nn + k];
    for (std::size_t c = 0; c < nn; ++c) {
      a[k * nn + c] /= diag;
      inv[k * nn + c] /= diag;
    }
    for (std::size_t r = 0; r < nn; ++r) {
      if (r == k) continue;
      const double factor = a[r * nn + k];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < nn; ++c) {
        a[r * nn + c] -= factor * a[k * nn + c];
        inv[r * nn + c] -= factor * inv[k * nn + c];
      }
    }
  }

  // The exact inverse of a symmetric matrix is symmetric; average away the
  // rounding asymmetry.
  SymMatrix out(n);
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = i; j < nn; ++j) {
      out.set(static_cast<int>(i), static_cast<int>(j), 0.5 * (inv[i * nn + j] + inv[j * nn + i]));
    }
  }
  return out;
}

}  // namespace netgeo
