#pragma once

#include <cstddef>

namespace coverart {

// Deterministic 8-lane dot product: lane j accumulates elements j, j+8, ...
// and lanes are reduced in a fixed tree.  The summation order is identical
// for every call, so results are bitwise stable while still vectorizing.
double dot(const double* a, const double* b, size_t n);

// y += alpha * x
void axpy(double alpha, const double* x, double* y, size_t n);

// y[o] = dot(W[o,:], x) + b[o]          W is row-major out x in
void linear_forward(const double* W, const double* b, const double* x,
                    double* y, size_t out_dim, size_t in_dim);

// Batched versions operate on row-major batches and parallelize over rows
// (forward, dX) or over output rows (dW), so each output slot is written by
// exactly one thread and results do not depend on the thread count.

// Y[r,:] = W X[r,:] + b for each batch row r
void linear_forward_batch(const double* W, const double* b, const double* X,
                          double* Y, size_t batch, size_t out_dim,
                          size_t in_dim, bool parallel);

// dX[r,:] = W^T dY[r,:]
void linear_backward_data(const double* W, const double* dY, double* dX,
                          size_t batch, size_t out_dim, size_t in_dim,
                          bool parallel);

// dW[o,:] += sum_r dY[r,o] X[r,:];  db[o] += sum_r dY[r,o]
void linear_backward_weights(const double* X, const double* dY, double* dW,
                             double* db, size_t batch, size_t out_dim,
                             size_t in_dim, bool parallel);

}  // namespace coverart
