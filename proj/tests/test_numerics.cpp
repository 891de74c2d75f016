#include <cmath>
#include <vector>

#include "doctest.h"
#include "polegrad/numerics.hpp"
#include "polegrad/rng.hpp"

using namespace polegrad;

TEST_CASE("rng uniform rejects empty interval") {
  Rng rng(1);
  CHECK_THROWS_AS(rng.uniform(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rng.uniform(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("rng uniform sample mean matches uniform moments") {
  Rng rng(7);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += rng.uniform(0.0, 1.0);
  const double mean = sum / n;
  CHECK(mean > 0.49);
  CHECK(mean < 0.51);
}

TEST_CASE("rng is deterministic per seed") {
  Rng a(123);
  Rng b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform(-2.0, 5.0) == b.uniform(-2.0, 5.0));
}

TEST_CASE("rng choice degenerate distribution") {
  Rng rng(3);
  const std::vector<double> probs = {1.0, 0.0};
  for (int i = 0; i < 50; ++i) CHECK(rng.choice(probs) == 0);
}

TEST_CASE("rng choice frequency converges") {
  Rng rng(11);
  const std::vector<double> probs = {0.5, 0.5};
  int zeros = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    if (rng.choice(probs) == 0) ++zeros;
  }
  const double freq = static_cast<double>(zeros) / n;
  CHECK(freq > 0.49);
  CHECK(freq < 0.51);
}

TEST_CASE("rng choice rejects bad distributions") {
  Rng rng(5);
  CHECK_THROWS_AS(rng.choice(std::vector<double>{0.3, 0.8}), std::invalid_argument);
  CHECK_THROWS_AS(rng.choice(std::vector<double>{1.5, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(rng.choice(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("adam zero gradient leaves parameters unchanged") {
  AdamState adam(3, {});
  std::vector<double> params = {1.0, -2.0, 0.5};
  const std::vector<double> grads(3, 0.0);
  adam.apply(params, grads);
  CHECK(params[0] == 1.0);
  CHECK(params[1] == -2.0);
  CHECK(params[2] == 0.5);
  CHECK(adam.step_count() == 1);
}

TEST_CASE("adam single hand-evaluated step") {
  // m_hat = v_hat = 1 after the first step, so the update is lr / (1 + eps).
  AdamState adam(1, {.lr = 0.01, .beta1 = 0.9, .beta2 = 0.999, .eps_hat = 1e-7});
  std::vector<double> params = {0.0};
  adam.apply(params, std::vector<double>{1.0});
  CHECK(params[0] == doctest::Approx(-0.01 / (1.0 + 1e-7)).epsilon(1e-12));
}

TEST_CASE("adam is pure given identical state") {
  const std::vector<double> grads = {0.3, -1.2};
  AdamState a(2, {});
  AdamState b(2, {});
  std::vector<double> pa = {1.0, 2.0};
  std::vector<double> pb = {1.0, 2.0};
  a.apply(pa, grads);
  b.apply(pb, grads);
  CHECK(pa == pb);
}

TEST_CASE("adam rejects shape mismatch") {
  AdamState adam(2, {});
  std::vector<double> params = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(adam.apply(params, std::vector<double>{1.0, 1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("adam first-step direction invariant to gradient scale") {
  const std::vector<double> grads = {0.4, -0.7, 2.0, -1e-3};
  std::vector<double> scaled = grads;
  for (double& g : scaled) g *= 1000.0;

  AdamState a(4, {});
  AdamState b(4, {});
  std::vector<double> pa(4, 0.0);
  std::vector<double> pb(4, 0.0);
  a.apply(pa, grads);
  b.apply(pb, scaled);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::signbit(pa[i]) == std::signbit(pb[i]));
  }
}

TEST_CASE("huber branches") {
  CHECK(huber(3.0, 3.0) == 0.0);
  CHECK(huber(0.0, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(huber(0.0, 2.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(huber(2.0, 0.0) == doctest::Approx(1.5).epsilon(1e-15));  // symmetric in residual
}

TEST_CASE("finite differences on quadratic") {
  const ScalarFn f = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  };
  const std::vector<double> theta = {1.0, 0.0};
  const auto grad = finite_diff_forward(f, theta, 1e-6);
  CHECK(grad[0] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(grad[1] == doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("finite difference of constant is zero") {
  const ScalarFn f = [](std::span<const double>) { return 4.2; };
  const std::vector<double> theta = {3.0, -1.0, 0.5};
  for (double g : finite_diff_forward(f, theta, 1e-6)) CHECK(g == 0.0);
  for (double g : finite_diff_central(f, theta, 1e-6)) CHECK(g == 0.0);
}

TEST_CASE("finite difference exact on linear function") {
  const ScalarFn f = [](std::span<const double> x) { return x[0]; };
  const std::vector<double> theta = {2.0, -5.0};
  const auto grad = finite_diff_forward(f, theta, 1e-6);
  CHECK(grad[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(grad[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("central difference matches analytic gradient on degree-2 polynomials") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    const double c = rng.uniform(-2.0, 2.0);
    const ScalarFn f = [&](std::span<const double> x) {
      return a * x[0] * x[0] + b * x[0] + c;
    };
    const std::vector<double> theta = {rng.uniform(-1.0, 1.0)};
    const auto grad = finite_diff_central(f, theta, 1e-4);
    CHECK(std::abs(grad[0] - (2.0 * a * theta[0] + b)) < 1e-8);
  }
}
