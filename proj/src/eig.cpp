#include "coverart/eig.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coverart {

static const size_t kMaxDim = 64;

SymEig sym_eigen(const std::vector<double>& A, size_t n) {
  if (n == 0 || A.size() != n * n) throw std::invalid_argument("sym_eigen: bad shape");
  if (n > kMaxDim) throw std::invalid_argument("sym_eigen: n > 64 unsupported");
  double scale = 0.0;
  for (double v : A) scale = std::max(scale, std::abs(v));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (std::abs(A[i * n + j] - A[j * n + i]) > 1e-10 * std::max(1.0, scale))
        throw std::invalid_argument("sym_eigen: matrix not symmetric");

  std::vector<double> M = A;
  std::vector<double> V(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) V[i * n + i] = 1.0;

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) off += M[p * n + q] * M[p * n + q];
    if (off <= 1e-28 * std::max(1.0, scale * scale)) break;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        const double apq = M[p * n + q];
        if (apq == 0.0) continue;
        const double app = M[p * n + p], aqq = M[q * n + q];
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0)
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (size_t k = 0; k < n; ++k) {
          const double mkp = M[k * n + p], mkq = M[k * n + q];
          M[k * n + p] = c * mkp - s * mkq;
          M[k * n + q] = s * mkp + c * mkq;
        }
        for (size_t k = 0; k < n; ++k) {
          const double mpk = M[p * n + k], mqk = M[q * n + k];
          M[p * n + k] = c * mpk - s * mqk;
          M[q * n + k] = s * mpk + c * mqk;
        }
        for (size_t k = 0; k < n; ++k) {
          const double vkp = V[k * n + p], vkq = V[k * n + q];
          V[k * n + p] = c * vkp - s * vkq;
          V[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return M[a * n + a] < M[b * n + b];
  });

  SymEig out;
  out.n = n;
  out.values.resize(n);
  out.vectors.assign(n * n, 0.0);
  for (size_t j = 0; j < n; ++j) {
    out.values[j] = M[order[j] * n + order[j]];
    for (size_t i = 0; i < n; ++i)
      out.vectors[i * n + j] = V[i * n + order[j]];
  }
  return out;
}

std::vector<double> mat_mul(const std::vector<double>& A,
                            const std::vector<double>& B, size_t n) {
  std::vector<double> C(n * n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      const double a = A[i * n + k];
      if (a == 0.0) continue;
      for (size_t j = 0; j < n; ++j) C[i * n + j] += a * B[k * n + j];
    }
  return C;
}

std::vector<double> mat_transpose(const std::vector<double>& A, size_t n) {
  std::vector<double> T(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) T[j * n + i] = A[i * n + j];
  return T;
}

double mat_trace(const std::vector<double>& A, size_t n) {
  double t = 0.0;
  for (size_t i = 0; i < n; ++i) t += A[i * n + i];
  return t;
}

std::vector<double> spd_sqrt(const std::vector<double>& A, size_t n) {
  SymEig e = sym_eigen(A, n);
  std::vector<double> R(n * n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (size_t k = 0; k < n; ++k) {
        const double lam = e.values[k] > 0.0 ? std::sqrt(e.values[k]) : 0.0;
        acc += e.vectors[i * n + k] * lam * e.vectors[j * n + k];
      }
      R[i * n + j] = acc;
    }
  return R;
}

std::vector<double> cholesky(const std::vector<double>& A, size_t n,
                             double jitter) {
  std::vector<double> L(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      double s = A[i * n + j];
      if (i == j) s += jitter;
      for (size_t k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
      if (i == j) {
        if (s <= 1e-300) throw std::runtime_error("cholesky: matrix not positive definite");
        L[i * n + i] = std::sqrt(s);
      } else {
        L[i * n + j] = s / L[j * n + j];
      }
    }
  }
  return L;
}

}  // namespace coverart
