#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "artiprior/rng.hpp"

namespace artiprior::nn {

// Dense layers in double precision. Data layout is features x batch, so a
// layer is y = W x + b applied column-wise. Forward caches the input for the
// following backward; gradients accumulate until zero_grad().
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

enum class Act { None, ReLU, Tanh, Sigmoid };

Mat apply_act(Act act, const Mat& x);
// dy combined with the cached post-activation value y.
Mat act_backward(Act act, const Mat& dy, const Mat& x_pre, const Mat& y_post);

struct Linear {
  Mat W;
  Vec b;
  Mat gW;
  Vec gb;
  Mat mW, vW;
  Vec mb, vb;
  Mat x_cache;

  Linear() = default;
  Linear(int in, int out, Rng& rng, double gain = 1.0);

  int in_dim() const { return static_cast<int>(W.cols()); }
  int out_dim() const { return static_cast<int>(W.rows()); }

  Mat forward(const Mat& x);
  Mat infer(const Mat& x) const { return (W * x).colwise() + b; }
  Mat backward(const Mat& dy);

  void zero_grad();
  void adam_step(double lr, double beta1, double beta2, double eps, int t);
  void soft_update_from(const Linear& src, double tau);
  void copy_from(const Linear& src);
};

// Plain multi-layer perceptron: `dims` lists layer widths including input
// and output; `hidden` activation sits after every layer but the last,
// `out_act` after the last.
struct MLP {
  std::vector<Linear> layers;
  Act hidden = Act::ReLU;
  Act out_act = Act::None;
  std::vector<Mat> pre_cache;
  std::vector<Mat> post_cache;

  MLP() = default;
  MLP(const std::vector<int>& dims, Act hidden_act, Act out_act_, Rng& rng);

  Mat forward(const Mat& x);
  Mat infer(const Mat& x) const;
  Mat backward(const Mat& dy);

  void zero_grad();
  void soft_update_from(const MLP& src, double tau);
  void copy_from(const MLP& src);
  std::vector<Linear*> params();
};

// Adam over a set of layers; owns the shared step counter.
struct Adam {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  int t = 0;
  std::vector<Linear*> params;

  void add(MLP& mlp);
  void add(Linear& layer);
  void step();
  void zero_grad();
};

// Named tensor archive used by the checkpoint format.
using TensorMap = std::map<std::string, Mat>;

void collect_tensors(const MLP& mlp, const std::string& prefix, TensorMap& out);
void assign_tensors(MLP& mlp, const std::string& prefix, const TensorMap& in);
void collect_tensors(const Linear& l, const std::string& prefix, TensorMap& out);
void assign_tensors(Linear& l, const std::string& prefix, const TensorMap& in);

// Losses return the scalar value and write d(loss)/d(input) into grad.
double bce_with_logits(const Mat& logits, const Mat& labels, Mat& grad);
double l1_loss(const Mat& pred, const Mat& target, Mat& grad);
double mse_loss(const Mat& pred, const Mat& target, Mat& grad);

}  // namespace artiprior::nn
