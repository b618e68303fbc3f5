#pragma once

#include <cstddef>
#include <vector>

namespace coverart {

struct GaussianSummary {
  size_t dim = 0;
  std::vector<double> mean;
  std::vector<double> cov;  // row-major dim x dim, n-1 denominator
};

// Fit mean and covariance to a set of vectors (rows of a flat row-major
// matrix).  Needs at least two samples.
GaussianSummary summarize(const double* X, size_t n, size_t dim);
GaussianSummary summarize(const std::vector<std::vector<double>>& rows);

// Squared Frechet distance between two Gaussians:
//   |mu1 - mu2|^2 + tr(C1 + C2 - 2 (C1^1/2 C2 C1^1/2)^1/2)
// Matrix roots use the symmetric eigensolver; eigenvalues that come out
// slightly negative are clipped to zero.
double frechet_distance(const GaussianSummary& p, const GaussianSummary& q);

// Same quantity with the cross term computed as sum_i sqrt(lambda_i(C1 C2)),
// where the eigenvalues are found through a Cholesky similarity transform.
// Used as an independent cross-check of frechet_distance.
double frechet_distance_product_form(const GaussianSummary& p,
                                     const GaussianSummary& q);

}  // namespace coverart
