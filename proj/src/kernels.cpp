#include "coverart/kernels.h"

namespace coverart {

double dot(const double* a, const double* b, size_t n) {
  double lane[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  const size_t n8 = n - n % 8;
  for (size_t i = 0; i < n8; i += 8) {
    lane[0] += a[i + 0] * b[i + 0];
    lane[1] += a[i + 1] * b[i + 1];
    lane[2] += a[i + 2] * b[i + 2];
    lane[3] += a[i + 3] * b[i + 3];
    lane[4] += a[i + 4] * b[i + 4];
    lane[5] += a[i + 5] * b[i + 5];
    lane[6] += a[i + 6] * b[i + 6];
    lane[7] += a[i + 7] * b[i + 7];
  }
  for (size_t i = n8; i < n; ++i) lane[i - n8] += a[i] * b[i];
  return ((lane[0] + lane[1]) + (lane[2] + lane[3])) +
         ((lane[4] + lane[5]) + (lane[6] + lane[7]));
}

void axpy(double alpha, const double* x, double* y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void linear_forward(const double* W, const double* b, const double* x,
                    double* y, size_t out_dim, size_t in_dim) {
  for (size_t o = 0; o < out_dim; ++o)
    y[o] = dot(W + o * in_dim, x, in_dim) + b[o];
}

void linear_forward_batch(const double* W, const double* b, const double* X,
                          double* Y, size_t batch, size_t out_dim,
                          size_t in_dim, bool parallel) {
#pragma omp parallel for schedule(static) if (parallel)
  for (long r = 0; r < static_cast<long>(batch); ++r)
    linear_forward(W, b, X + r * in_dim, Y + r * out_dim, out_dim, in_dim);
}

void linear_backward_data(const double* W, const double* dY, double* dX,
                          size_t batch, size_t out_dim, size_t in_dim,
                          bool parallel) {
#pragma omp parallel for schedule(static) if (parallel)
  for (long r = 0; r < static_cast<long>(batch); ++r) {
    double* dx = dX + r * in_dim;
    const double* dy = dY + r * out_dim;
    for (size_t i = 0; i < in_dim; ++i) dx[i] = 0.0;
    for (size_t o = 0; o < out_dim; ++o)
      axpy(dy[o], W + o * in_dim, dx, in_dim);
  }
}

void linear_backward_weights(const double* X, const double* dY, double* dW,
                             double* db, size_t batch, size_t out_dim,
                             size_t in_dim, bool parallel) {
#pragma omp parallel for schedule(static) if (parallel)
  for (long o = 0; o < static_cast<long>(out_dim); ++o) {
    double* dw = dW + o * in_dim;
    double acc = 0.0;
    for (size_t r = 0; r < batch; ++r) {
      const double g = dY[r * out_dim + o];
      acc += g;
      axpy(g, X + r * in_dim, dw, in_dim);
    }
    db[o] += acc;
  }
}

}  // namespace coverart
