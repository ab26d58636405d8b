#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qpgan/rng.hpp"

namespace qpgan {

inline constexpr double kProbClamp = 1e-7;

inline double clamp_prob(double p) {
  return std::min(std::max(p, kProbClamp), 1.0 - kProbClamp);
}

// L_G = mean(log D(G(z)))
inline double loss_g(const std::vector<double>& d_fake) {
  double s = 0.0;
  for (double p : d_fake) s += std::log(clamp_prob(p));
  return s / static_cast<double>(d_fake.size());
}

// L_D = mean(log D(x) + log(1 - D(G(z))))
inline double loss_d(const std::vector<double>& d_real,
                     const std::vector<double>& d_fake) {
  if (d_real.size() != d_fake.size())
    throw std::invalid_argument("loss_d: batch size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < d_real.size(); ++i)
    s += std::log(clamp_prob(d_real[i])) +
         std::log(1.0 - clamp_prob(d_fake[i]));
  return s / static_cast<double>(d_real.size());
}

// Classical MLP 64 -> 64 -> 1, leaky-rectifier (slope 0.2) hidden layer,
// logistic output. Trained by plain gradient ascent on L_D.
class Discriminator {
 public:
  static constexpr double kLeakSlope = 0.2;

  Discriminator(int input = 64, int hidden = 64)
      : w1_(Eigen::MatrixXd::Zero(hidden, input)),
        b1_(Eigen::VectorXd::Zero(hidden)),
        w2_(Eigen::VectorXd::Zero(hidden)),
        b2_(0.0) {}

  // Small Gaussian init (0.1 / sqrt(fan_in)). The deliberately weak start
  // keeps the discriminator from outrunning the gradient-free generator in
  // the opening phase of adversarial training.
  static Discriminator random_init(std::uint64_t seed, int input = 64,
                                   int hidden = 64) {
    Discriminator d(input, hidden);
    Rng rng(seed);
    const double s1 = 0.1 / std::sqrt(static_cast<double>(input));
    const double s2 = 0.1 / std::sqrt(static_cast<double>(hidden));
    for (int i = 0; i < hidden; ++i)
      for (int j = 0; j < input; ++j) d.w1_(i, j) = s1 * rng.normal();
    for (int i = 0; i < hidden; ++i) d.w2_(i) = s2 * rng.normal();
    return d;
  }

  int input_size() const { return static_cast<int>(w1_.cols()); }
  int hidden_size() const { return static_cast<int>(w1_.rows()); }

  // D(x), clamped into [1e-7, 1 - 1e-7]
  double forward(const Eigen::VectorXd& x) const {
    Eigen::VectorXd h = leaky(w1_ * x + b1_);
    const double o = w2_.dot(h) + b2_;
    return clamp_prob(sigmoid(o));
  }

  struct Grads {
    Eigen::MatrixXd w1;
    Eigen::VectorXd b1;
    Eigen::VectorXd w2;
    double b2 = 0.0;
  };

  Grads zero_grads() const {
    return {Eigen::MatrixXd::Zero(w1_.rows(), w1_.cols()),
            Eigen::VectorXd::Zero(b1_.size()),
            Eigen::VectorXd::Zero(w2_.size()), 0.0};
  }

  // Gradient of L_D w.r.t. all weights, by backpropagation.
  Grads loss_d_gradient(const std::vector<Eigen::VectorXd>& real_batch,
                        const std::vector<Eigen::VectorXd>& fake_batch) const {
    if (real_batch.size() != fake_batch.size())
      throw std::invalid_argument("loss_d_gradient: batch size mismatch");
    Grads g = zero_grads();
    const double inv_n = 1.0 / static_cast<double>(real_batch.size());
    for (const auto& x : real_batch) accumulate(g, x, /*real=*/true, inv_n);
    for (const auto& x : fake_batch) accumulate(g, x, /*real=*/false, inv_n);
    return g;
  }

  void ascend(const Grads& g, double lr) {
    w1_ += lr * g.w1;
    b1_ += lr * g.b1;
    w2_ += lr * g.w2;
    b2_ += lr * g.b2;
  }

  const Eigen::MatrixXd& w1() const { return w1_; }
  const Eigen::VectorXd& b1() const { return b1_; }
  const Eigen::VectorXd& w2() const { return w2_; }
  double b2() const { return b2_; }
  void set_weights(Eigen::MatrixXd w1, Eigen::VectorXd b1, Eigen::VectorXd w2,
                   double b2) {
    w1_ = std::move(w1);
    b1_ = std::move(b1);
    w2_ = std::move(w2);
    b2_ = b2;
  }

 private:
  static double sigmoid(double o) { return 1.0 / (1.0 + std::exp(-o)); }

  static Eigen::VectorXd leaky(const Eigen::VectorXd& a) {
    return a.unaryExpr(
        [](double v) { return v > 0.0 ? v : kLeakSlope * v; });
  }

  // dL/do = (1 - p) for a real sample (log p term), -p for a fake one
  // (log(1 - p) term); both already include the logistic derivative.
  void accumulate(Grads& g, const Eigen::VectorXd& x, bool real,
                  double weight) const {
    Eigen::VectorXd a1 = w1_ * x + b1_;
    Eigen::VectorXd h = leaky(a1);
    const double p = sigmoid(w2_.dot(h) + b2_);
    const double dout = weight * (real ? (1.0 - p) : -p);
    g.w2 += dout * h;
    g.b2 += dout;
    Eigen::VectorXd dh = dout * w2_;
    Eigen::VectorXd da1 = dh.array() * a1.unaryExpr([](double v) {
                                           return v > 0.0 ? 1.0 : kLeakSlope;
                                         }).array();
    g.w1 += da1 * x.transpose();
    g.b1 += da1;
  }

  Eigen::MatrixXd w1_;
  Eigen::VectorXd b1_;
  Eigen::VectorXd w2_;
  double b2_;
};

}  // namespace qpgan
