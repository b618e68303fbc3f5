#include "coverart/optim.h"

#include <cmath>
#include <stdexcept>

namespace coverart {

const char* opt_name(OptKind k) {
  return k == OptKind::adam ? "adam" : "rmsprop";
}

OptKind opt_from_name(const std::string& s) {
  if (s == "adam") return OptKind::adam;
  if (s == "rmsprop") return OptKind::rmsprop;
  throw std::runtime_error("unknown optimizer: " + s);
}

Optimizer::Optimizer(OptKind kind, double lr, size_t n)
    : kind_(kind), lr_(lr), m_(n, 0.0), v_(n, 0.0) {}

void Optimizer::step(double* params, const double* grads) {
  ++t_;
  const size_t n = v_.size();
  if (kind_ == OptKind::adam) {
    const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t_));
    for (size_t i = 0; i < n; ++i) {
      m_[i] = beta1 * m_[i] + (1.0 - beta1) * grads[i];
      v_[i] = beta2 * v_[i] + (1.0 - beta2) * grads[i] * grads[i];
      const double mhat = m_[i] / c1;
      const double vhat = v_[i] / c2;
      params[i] -= lr_ * mhat / (std::sqrt(vhat) + eps);
    }
  } else {
    for (size_t i = 0; i < n; ++i) {
      v_[i] = rho * v_[i] + (1.0 - rho) * grads[i] * grads[i];
      params[i] -= lr_ * grads[i] / (std::sqrt(v_[i]) + eps);
    }
  }
}

NetOptimizer::NetOptimizer(OptKind kind, double lr, const DenseNet& net)
    : opt_(kind, lr, net.param_count()) {
  flat_p_.resize(net.param_count());
  flat_g_.resize(net.param_count());
}

void NetOptimizer::step(DenseNet& net, const Grads& g) {
  size_t off = 0;
  for (size_t li = 0; li < net.layers.size(); ++li) {
    Layer& l = net.layers[li];
    for (size_t i = 0; i < l.W.size(); ++i, ++off) {
      flat_p_[off] = l.W[i];
      flat_g_[off] = g.dW[li][i];
    }
    for (size_t i = 0; i < l.b.size(); ++i, ++off) {
      flat_p_[off] = l.b[i];
      flat_g_[off] = g.db[li][i];
    }
  }
  opt_.step(flat_p_.data(), flat_g_.data());
  off = 0;
  for (auto& l : net.layers) {
    for (size_t i = 0; i < l.W.size(); ++i, ++off) l.W[i] = flat_p_[off];
    for (size_t i = 0; i < l.b.size(); ++i, ++off) l.b[i] = flat_p_[off];
  }
}

}  // namespace coverart
