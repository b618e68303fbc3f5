#include "coverart/dense_net.h"

#include <cmath>
#include <stdexcept>

#include "coverart/kernels.h"

namespace coverart {

const char* act_name(Act a) {
  switch (a) {
    case Act::relu: return "relu";
    case Act::sigmoid: return "sigmoid";
    case Act::tanh_fn: return "tanh";
    case Act::identity: return "identity";
  }
  return "?";
}

Act act_from_name(const std::string& s) {
  if (s == "relu") return Act::relu;
  if (s == "sigmoid") return Act::sigmoid;
  if (s == "tanh") return Act::tanh_fn;
  if (s == "identity") return Act::identity;
  throw std::runtime_error("unknown activation: " + s);
}

void apply_activation(Act a, double* y, size_t n) {
  switch (a) {
    case Act::relu:
      for (size_t i = 0; i < n; ++i) y[i] = y[i] > 0.0 ? y[i] : 0.0;
      break;
    case Act::sigmoid:
      for (size_t i = 0; i < n; ++i) y[i] = 1.0 / (1.0 + std::exp(-y[i]));
      break;
    case Act::tanh_fn:
      for (size_t i = 0; i < n; ++i) y[i] = std::tanh(y[i]);
      break;
    case Act::identity:
      break;
  }
}

void activation_backward(Act a, const double* y, double* dy, size_t n) {
  switch (a) {
    case Act::relu:
      for (size_t i = 0; i < n; ++i)
        if (y[i] <= 0.0) dy[i] = 0.0;
      break;
    case Act::sigmoid:
      for (size_t i = 0; i < n; ++i) dy[i] *= y[i] * (1.0 - y[i]);
      break;
    case Act::tanh_fn:
      for (size_t i = 0; i < n; ++i) dy[i] *= 1.0 - y[i] * y[i];
      break;
    case Act::identity:
      break;
  }
}

size_t DenseNet::param_count() const {
  size_t n = 0;
  for (const auto& l : layers) n += l.W.size() + l.b.size();
  return n;
}

static void forward_one(const DenseNet& net, const double* x, double* scratch_a,
                        double* scratch_b, double* y) {
  const double* cur = x;
  double* buf[2] = {scratch_a, scratch_b};
  for (size_t li = 0; li < net.layers.size(); ++li) {
    const Layer& l = net.layers[li];
    double* out = (li + 1 == net.layers.size()) ? y : buf[li % 2];
    linear_forward(l.W.data(), l.b.data(), cur, out, l.out, l.in);
    apply_activation(l.act, out, l.out);
    cur = out;
  }
}

static size_t max_hidden(const DenseNet& net) {
  size_t m = 1;
  for (const auto& l : net.layers) m = std::max(m, l.out);
  return m;
}

std::vector<double> DenseNet::forward(const std::vector<double>& x) const {
  if (x.size() != input_dim())
    throw std::invalid_argument("DenseNet::forward: bad input size");
  std::vector<double> a(max_hidden(*this)), b(max_hidden(*this));
  std::vector<double> y(output_dim());
  forward_one(*this, x.data(), a.data(), b.data(), y.data());
  return y;
}

void DenseNet::forward_batch(const double* X, double* Y, size_t batch,
                             bool parallel) const {
  const size_t in = input_dim(), out = output_dim(), mh = max_hidden(*this);
#pragma omp parallel for schedule(static) if (parallel)
  for (long r = 0; r < static_cast<long>(batch); ++r) {
    std::vector<double> a(mh), b(mh);
    forward_one(*this, X + r * in, a.data(), b.data(), Y + r * out);
  }
}

void DenseNet::forward_batch(const double* X, size_t batch, BatchTrace& tr,
                             bool parallel) const {
  tr.batch = batch;
  tr.acts.assign(layers.size() + 1, {});
  tr.acts[0].assign(X, X + batch * input_dim());
  for (size_t li = 0; li < layers.size(); ++li)
    tr.acts[li + 1].assign(batch * layers[li].out, 0.0);
  for (size_t li = 0; li < layers.size(); ++li) {
    const Layer& l = layers[li];
    linear_forward_batch(l.W.data(), l.b.data(), tr.acts[li].data(),
                         tr.acts[li + 1].data(), batch, l.out, l.in, parallel);
    double* y = tr.acts[li + 1].data();
#pragma omp parallel for schedule(static) if (parallel)
    for (long r = 0; r < static_cast<long>(batch); ++r)
      apply_activation(l.act, y + r * l.out, l.out);
  }
}

void DenseNet::backward_batch(const BatchTrace& tr, const double* dY, Grads* g,
                              double* dX, bool parallel) const {
  const size_t batch = tr.batch;
  std::vector<double> cur(dY, dY + batch * output_dim());
  std::vector<double> next;
  for (size_t li = layers.size(); li-- > 0;) {
    const Layer& l = layers[li];
    const double* y = tr.acts[li + 1].data();
    double* dy = cur.data();
#pragma omp parallel for schedule(static) if (parallel)
    for (long r = 0; r < static_cast<long>(batch); ++r)
      activation_backward(l.act, y + r * l.out, dy + r * l.out, l.out);
    if (g)
      linear_backward_weights(tr.acts[li].data(), dy, g->dW[li].data(),
                              g->db[li].data(), batch, l.out, l.in, parallel);
    const bool need_dx = li > 0 || dX != nullptr;
    if (!need_dx) break;
    next.assign(batch * l.in, 0.0);
    linear_backward_data(l.W.data(), dy, next.data(), batch, l.out, l.in,
                         parallel);
    if (li == 0) {
      for (size_t i = 0; i < next.size(); ++i) dX[i] = next[i];
      break;
    }
    cur.swap(next);
  }
}

std::vector<double> DenseNet::penultimate(const std::vector<double>& x) const {
  if (layers.size() < 2)
    throw std::runtime_error("DenseNet::penultimate: need >= 2 layers");
  BatchTrace tr;
  forward_batch(x.data(), 1, tr, false);
  return tr.acts[layers.size() - 1];
}

Grads DenseNet::zero_grads() const {
  Grads g;
  g.dW.resize(layers.size());
  g.db.resize(layers.size());
  for (size_t i = 0; i < layers.size(); ++i) {
    g.dW[i].assign(layers[i].W.size(), 0.0);
    g.db[i].assign(layers[i].b.size(), 0.0);
  }
  return g;
}

bool DenseNet::finite() const {
  for (const auto& l : layers) {
    for (double w : l.W)
      if (!std::isfinite(w)) return false;
    for (double v : l.b)
      if (!std::isfinite(v)) return false;
  }
  return true;
}

DenseNet build_net(const std::vector<size_t>& dims,
                   const std::vector<Act>& acts, Rng& rng) {
  if (dims.size() != acts.size() + 1 || acts.empty())
    throw std::invalid_argument("build_net: dims/acts mismatch");
  DenseNet net;
  net.layers.resize(acts.size());
  for (size_t i = 0; i < acts.size(); ++i) {
    Layer& l = net.layers[i];
    l.in = dims[i];
    l.out = dims[i + 1];
    l.act = acts[i];
    l.W.resize(l.out * l.in);
    l.b.assign(l.out, 0.0);
    // He init for relu layers, Xavier for the rest
    const double stddev = (l.act == Act::relu)
                              ? std::sqrt(2.0 / static_cast<double>(l.in))
                              : std::sqrt(1.0 / static_cast<double>(l.in));
    for (auto& w : l.W) w = rng.normal(0.0, stddev);
  }
  return net;
}

}  // namespace coverart
