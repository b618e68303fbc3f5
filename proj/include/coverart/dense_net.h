#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coverart/rng.h"

namespace coverart {

enum class Act { relu, sigmoid, tanh_fn, identity };

const char* act_name(Act a);
Act act_from_name(const std::string& s);

struct Layer {
  size_t in = 0, out = 0;
  Act act = Act::identity;
  std::vector<double> W;  // row-major out x in
  std::vector<double> b;
};

struct Grads {
  std::vector<std::vector<double>> dW, db;
};

// Post-activation values per layer for one batch; acts[0] is the input.
struct BatchTrace {
  size_t batch = 0;
  std::vector<std::vector<double>> acts;
};

// Plain fully-connected network, double precision throughout.
struct DenseNet {
  std::vector<Layer> layers;
  bool frozen = false;

  size_t input_dim() const { return layers.front().in; }
  size_t output_dim() const { return layers.back().out; }
  size_t param_count() const;

  std::vector<double> forward(const std::vector<double>& x) const;

  // Batched forward; X is batch x input_dim row-major.  The per-sample math
  // is shared with the single-sample path, so both give bitwise-equal
  // results and the batch result does not depend on the thread count.
  void forward_batch(const double* X, double* Y, size_t batch,
                     bool parallel) const;
  void forward_batch(const double* X, size_t batch, BatchTrace& tr,
                     bool parallel) const;

  // Backward from dL/dY (batch x output_dim).  Accumulates into g if given;
  // writes dL/dX into dX if given.
  void backward_batch(const BatchTrace& tr, const double* dY, Grads* g,
                      double* dX, bool parallel) const;

  // Activations of the layer just before the output layer.
  std::vector<double> penultimate(const std::vector<double>& x) const;

  Grads zero_grads() const;
  bool finite() const;
};

// dims has one more entry than acts; weights get He init for relu layers and
// Xavier for the rest, biases start at zero.
DenseNet build_net(const std::vector<size_t>& dims,
                   const std::vector<Act>& acts, Rng& rng);

void apply_activation(Act a, double* y, size_t n);
// dz = dy * act'(y) where y is the post-activation value
void activation_backward(Act a, const double* y, double* dy, size_t n);

}  // namespace coverart
