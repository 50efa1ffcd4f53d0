#include "artiprior/nn.hpp"

#include <cmath>
#include <stdexcept>

namespace artiprior::nn {

Mat apply_act(Act act, const Mat& x) {
  switch (act) {
    case Act::None:
      return x;
    case Act::ReLU:
      return x.cwiseMax(0.0);
    case Act::Tanh:
      return x.array().tanh().matrix();
    case Act::Sigmoid:
      return (1.0 / (1.0 + (-x.array()).exp())).matrix();
  }
  return x;
}

Mat act_backward(Act act, const Mat& dy, const Mat& x_pre, const Mat& y_post) {
  switch (act) {
    case Act::None:
      return dy;
    case Act::ReLU:
      return (x_pre.array() > 0.0).select(dy, Mat::Zero(dy.rows(), dy.cols()));
    case Act::Tanh:
      return (dy.array() * (1.0 - y_post.array().square())).matrix();
    case Act::Sigmoid:
      return (dy.array() * y_post.array() * (1.0 - y_post.array())).matrix();
  }
  return dy;
}

Linear::Linear(int in, int out, Rng& rng, double gain) {
  W.resize(out, in);
  // He-style fan-in scaling.
  const double scale = gain * std::sqrt(2.0 / static_cast<double>(in));
  for (int r = 0; r < out; ++r) {
    for (int c = 0; c < in; ++c) W(r, c) = scale * rng.normal();
  }
  b = Vec::Zero(out);
  gW = Mat::Zero(out, in);
  gb = Vec::Zero(out);
  mW = Mat::Zero(out, in);
  vW = Mat::Zero(out, in);
  mb = Vec::Zero(out);
  vb = Vec::Zero(out);
}

Mat Linear::forward(const Mat& x) {
  x_cache = x;
  return (W * x).colwise() + b;
}

Mat Linear::backward(const Mat& dy) {
  gW.noalias() += dy * x_cache.transpose();
  gb.noalias() += dy.rowwise().sum();
  return W.transpose() * dy;
}

void Linear::zero_grad() {
  gW.setZero();
  gb.setZero();
}

void Linear::adam_step(double lr, double beta1, double beta2, double eps, int t) {
  const double bc1 = 1.0 - std::pow(beta1, t);
  const double bc2 = 1.0 - std::pow(beta2, t);
  mW = beta1 * mW + (1.0 - beta1) * gW;
  vW = beta2 * vW + (1.0 - beta2) * gW.cwiseProduct(gW);
  W -= (lr / bc1) * mW.cwiseQuotient(((vW / bc2).cwiseSqrt().array() + eps).matrix());
  mb = beta1 * mb + (1.0 - beta1) * gb;
  vb = beta2 * vb + (1.0 - beta2) * gb.cwiseProduct(gb);
  b -= (lr / bc1) * mb.cwiseQuotient(((vb / bc2).cwiseSqrt().array() + eps).matrix());
}

void Linear::soft_update_from(const Linear& src, double tau) {
  W = (1.0 - tau) * W + tau * src.W;
  b = (1.0 - tau) * b + tau * src.b;
}

void Linear::copy_from(const Linear& src) {
  W = src.W;
  b = src.b;
}

MLP::MLP(const std::vector<int>& dims, Act hidden_act, Act out_act_, Rng& rng)
    : hidden(hidden_act), out_act(out_act_) {
  if (dims.size() < 2) throw std::invalid_argument("MLP needs at least two dims");
  for (size_t i = 0; i + 1 < dims.size(); ++i) {
    layers.emplace_back(dims[i], dims[i + 1], rng);
  }
}

Mat MLP::forward(const Mat& x) {
  pre_cache.assign(layers.size(), Mat());
  post_cache.assign(layers.size(), Mat());
  Mat h = x;
  for (size_t i = 0; i < layers.size(); ++i) {
    const Act act = (i + 1 == layers.size()) ? out_act : hidden;
    pre_cache[i] = layers[i].forward(h);
    post_cache[i] = apply_act(act, pre_cache[i]);
    h = post_cache[i];
  }
  return h;
}

Mat MLP::infer(const Mat& x) const {
  Mat h = x;
  for (size_t i = 0; i < layers.size(); ++i) {
    const Act act = (i + 1 == layers.size()) ? out_act : hidden;
    h = apply_act(act, layers[i].infer(h));
  }
  return h;
}

Mat MLP::backward(const Mat& dy) {
  Mat g = dy;
  for (int i = static_cast<int>(layers.size()) - 1; i >= 0; --i) {
    const Act act = (i + 1 == static_cast<int>(layers.size())) ? out_act : hidden;
    g = act_backward(act, g, pre_cache[i], post_cache[i]);
    g = layers[i].backward(g);
  }
  return g;
}

void MLP::zero_grad() {
  for (auto& l : layers) l.zero_grad();
}

void MLP::soft_update_from(const MLP& src, double tau) {
  for (size_t i = 0; i < layers.size(); ++i) layers[i].soft_update_from(src.layers[i], tau);
}

void MLP::copy_from(const MLP& src) {
  for (size_t i = 0; i < layers.size(); ++i) layers[i].copy_from(src.layers[i]);
}

std::vector<Linear*> MLP::params() {
  std::vector<Linear*> out;
  for (auto& l : layers) out.push_back(&l);
  return out;
}

void Adam::add(MLP& mlp) {
  for (auto* l : mlp.params()) params.push_back(l);
}

void Adam::add(Linear& layer) { params.push_back(&layer); }

void Adam::step() {
  ++t;
  for (auto* p : params) p->adam_step(lr, beta1, beta2, eps, t);
}

void Adam::zero_grad() {
  for (auto* p : params) p->zero_grad();
}

void collect_tensors(const Linear& l, const std::string& prefix, TensorMap& out) {
  out[prefix + ".W"] = l.W;
  out[prefix + ".b"] = l.b;
}

void assign_tensors(Linear& l, const std::string& prefix, const TensorMap& in) {
  const auto w = in.find(prefix + ".W");
  const auto b = in.find(prefix + ".b");
  if (w == in.end() || b == in.end()) {
    throw std::runtime_error("checkpoint missing tensor " + prefix);
  }
  if (w->second.rows() != l.W.rows() || w->second.cols() != l.W.cols()) {
    throw std::runtime_error("checkpoint shape mismatch for " + prefix);
  }
  l.W = w->second;
  l.b = b->second.col(0);
}

void collect_tensors(const MLP& mlp, const std::string& prefix, TensorMap& out) {
  for (size_t i = 0; i < mlp.layers.size(); ++i) {
    collect_tensors(mlp.layers[i], prefix + ".l" + std::to_string(i), out);
  }
}

void assign_tensors(MLP& mlp, const std::string& prefix, const TensorMap& in) {
  for (size_t i = 0; i < mlp.layers.size(); ++i) {
    assign_tensors(mlp.layers[i], prefix + ".l" + std::to_string(i), in);
  }
}

double bce_with_logits(const Mat& logits, const Mat& labels, Mat& grad) {
  // softplus(x) - y*x, gradient sigma(x) - y; averaged over all entries.
  const auto x = logits.array();
  const auto y = labels.array();
  const auto softplus = (x > 30.0).select(x, (1.0 + x.exp()).log());
  const double n = static_cast<double>(logits.size());
  const double loss = (softplus - y * x).sum() / n;
  const auto sig = 1.0 / (1.0 + (-x).exp());
  grad = ((sig - y) / n).matrix();
  return loss;
}

double l1_loss(const Mat& pred, const Mat& target, Mat& grad) {
  const auto diff = (pred - target).array();
  const double n = static_cast<double>(pred.size());
  grad = (diff.sign() / n).matrix();
  return diff.abs().sum() / n;
}

double mse_loss(const Mat& pred, const Mat& target, Mat& grad) {
  const auto diff = (pred - target).array();
  const double n = static_cast<double>(pred.size());
  grad = (2.0 * diff / n).matrix();
  return diff.square().sum() / n;
}

}  // namespace artiprior::nn
