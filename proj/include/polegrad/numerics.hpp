#pragma once

#include <functional>
#include <span>
#include <vector>

namespace polegrad {

// Smallest float32 eps such that 1.0f + eps != 1.0f; used when normalizing
// returns to guard the division by a zero standard deviation.
inline constexpr double kFloat32Eps = 1.1920928955078125e-07;

struct AdamConfig {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps_hat = 1e-7;
};

// Per-parameter first/second moment buffers plus the step counter. apply()
// performs one bias-corrected Adam update in place:
//   m' = b1*m + (1-b1)*g,  v' = b2*v + (1-b2)*g^2
//   p' = p - lr * m_hat / (sqrt(v_hat) + eps_hat)
class AdamState {
 public:
  AdamState(std::size_t size, AdamConfig config);

  void apply(std::span<double> params, std::span<const double> grads);

  long step_count() const { return t_; }
  const AdamConfig& config() const { return config_; }
  std::span<const double> first_moment() const { return m_; }
  std::span<const double> second_moment() const { return v_; }

 private:
  std::vector<double> m_;
  std::vector<double> v_;
  long t_ = 0;
  AdamConfig config_;
};

// Huber loss with delta = 1: quadratic within one unit of the target,
// linear outside.
double huber(double value, double target);

using ScalarFn = std::function<double(std::span<const double>)>;

// Forward difference (f(theta + eps*e_k) - f(theta)) / eps, one entry per
// coordinate.
std::vector<double> finite_diff_forward(const ScalarFn& f,
                                        std::span<const double> theta,
                                        double eps);

// Central difference (f(theta + eps*e_k) - f(theta - eps*e_k)) / (2*eps);
// lower truncation error, used as the oracle in gradient checks.
std::vector<double> finite_diff_central(const ScalarFn& f,
                                        std::span<const double> theta,
                                        double eps);

}  // namespace polegrad
