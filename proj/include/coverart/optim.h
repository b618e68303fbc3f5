#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "coverart/dense_net.h"

namespace coverart {

enum class OptKind { adam, rmsprop };

const char* opt_name(OptKind k);
OptKind opt_from_name(const std::string& s);

// Adam (bias-corrected) and RMSprop (no bias correction) over a flat
// parameter vector.  step() applies a descent step; negate the gradient for
// ascent.
class Optimizer {
 public:
  Optimizer(OptKind kind, double lr, size_t n);

  void step(double* params, const double* grads);

  OptKind kind() const { return kind_; }
  double lr() const { return lr_; }

  double beta1 = 0.9, beta2 = 0.999;  // adam
  double rho = 0.9;                   // rmsprop
  double eps = 1e-8;

 private:
  OptKind kind_;
  double lr_;
  uint64_t t_ = 0;
  std::vector<double> m_, v_;
};

// Same update rule applied layer by layer to a network's weights.
class NetOptimizer {
 public:
  NetOptimizer(OptKind kind, double lr, const DenseNet& net);
  void step(DenseNet& net, const Grads& g);
  Optimizer& core() { return opt_; }

 private:
  Optimizer opt_;
  std::vector<double> flat_p_, flat_g_;
};

}  // namespace coverart
