#include "polegrad/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace polegrad {

AdamState::AdamState(std::size_t size, AdamConfig config)
    : m_(size, 0.0), v_(size, 0.0), config_(config) {}

void AdamState::apply(std::span<double> params, std::span<const double> grads) {
  if (params.size() != m_.size() || grads.size() != m_.size()) {
    throw std::invalid_argument("AdamState::apply: shape mismatch");
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * g;
    v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * g * g;
    const double m_hat = m_[i] / bc1;
    const double v_hat = v_[i] / bc2;
    params[i] -= config_.lr * m_hat / (std::sqrt(v_hat) + config_.eps_hat);
  }
}

double huber(double value, double target) {
  const double r = target - value;
  const double a = std::abs(r);
  return a <= 1.0 ? 0.5 * r * r : a - 0.5;
}

std::vector<double> finite_diff_forward(const ScalarFn& f,
                                        std::span<const double> theta,
                                        double eps) {
  std::vector<double> point(theta.begin(), theta.end());
  const double base = f(point);
  std::vector<double> grad(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    point[k] = theta[k] + eps;
    grad[k] = (f(point) - base) / eps;
    point[k] = theta[k];
  }
  return grad;
}

std::vector<double> finite_diff_central(const ScalarFn& f,
                                        std::span<const double> theta,
                                        double eps) {
  std::vector<double> point(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    point[k] = theta[k] + eps;
    const double hi = f(point);
    point[k] = theta[k] - eps;
    const double lo = f(point);
    point[k] = theta[k];
    grad[k] = (hi - lo) / (2.0 * eps);
  }
  return grad;
}

}  // namespace polegrad
