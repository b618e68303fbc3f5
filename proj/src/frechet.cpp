#include "coverart/frechet.h"

#include <cmath>
#include <stdexcept>

#include "coverart/eig.h"

namespace coverart {

GaussianSummary summarize(const double* X, size_t n, size_t dim) {
  if (n < 2) throw std::invalid_argument("summarize: need at least 2 samples");
  GaussianSummary s;
  s.dim = dim;
  s.mean.assign(dim, 0.0);
  s.cov.assign(dim * dim, 0.0);
  for (size_t r = 0; r < n; ++r)
    for (size_t j = 0; j < dim; ++j) s.mean[j] += X[r * dim + j];
  for (size_t j = 0; j < dim; ++j) s.mean[j] /= static_cast<double>(n);
  for (size_t r = 0; r < n; ++r)
    for (size_t i = 0; i < dim; ++i) {
      const double di = X[r * dim + i] - s.mean[i];
      for (size_t j = 0; j < dim; ++j)
        s.cov[i * dim + j] += di * (X[r * dim + j] - s.mean[j]);
    }
  const double denom = static_cast<double>(n - 1);
  for (auto& c : s.cov) c /= denom;
  return s;
}

GaussianSummary summarize(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("summarize: empty");
  const size_t dim = rows[0].size();
  std::vector<double> flat(rows.size() * dim);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != dim)
      throw std::invalid_argument("summarize: ragged rows");
    for (size_t j = 0; j < dim; ++j) flat[r * dim + j] = rows[r][j];
  }
  return summarize(flat.data(), rows.size(), dim);
}

static double mean_gap_sq(const GaussianSummary& p, const GaussianSummary& q) {
  if (p.dim != q.dim)
    throw std::invalid_argument("frechet: dimension mismatch");
  double d = 0.0;
  for (size_t i = 0; i < p.dim; ++i) {
    const double g = p.mean[i] - q.mean[i];
    d += g * g;
  }
  return d;
}

double frechet_distance(const GaussianSummary& p, const GaussianSummary& q) {
  const size_t n = p.dim;
  const std::vector<double> r1 = spd_sqrt(p.cov, n);
  const std::vector<double> inner = mat_mul(mat_mul(r1, q.cov, n), r1, n);
  const std::vector<double> cross = spd_sqrt(inner, n);
  return mean_gap_sq(p, q) + mat_trace(p.cov, n) + mat_trace(q.cov, n) -
         2.0 * mat_trace(cross, n);
}

double frechet_distance_product_form(const GaussianSummary& p,
                                     const GaussianSummary& q) {
  const size_t n = p.dim;
  // eigenvalues of C1 C2 = eigenvalues of L^T C1 L, with C2 = L L^T
  const std::vector<double> L = cholesky(q.cov, n, 1e-12);
  std::vector<double> S(n * n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
          acc += L[a * n + i] * p.cov[a * n + b] * L[b * n + j];
      S[i * n + j] = acc;
    }
  // symmetrize away round-off before the eigensolve
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (S[i * n + j] + S[j * n + i]);
      S[i * n + j] = S[j * n + i] = m;
    }
  const SymEig e = sym_eigen(S, n);
  double cross = 0.0;
  for (double lam : e.values) cross += lam > 0.0 ? std::sqrt(lam) : 0.0;
  return mean_gap_sq(p, q) + mat_trace(p.cov, n) + mat_trace(q.cov, n) -
         2.0 * cross;
}

}  // namespace coverart
