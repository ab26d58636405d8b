#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qpgan/rng.hpp"

namespace qpgan {

// Simultaneous Perturbation Stochastic Approximation, ascent form.
// Standard gain schedules a_k = a / (A + k + 1)^alpha, c_k = c / (k + 1)^gamma
// with the Spall exponents; `a` is usually calibrated from the first
// pseudo-gradient via calibrate_step().
struct SpsaState {
  double a = 0.0;
  double c = 0.1;
  double big_a = 0.0;    // stability constant A
  double alpha = 0.602;
  double gamma = 0.101;
  long long iteration = 0;
  long long evaluations = 0;  // objective calls made so far
  Rng rng;

  explicit SpsaState(std::uint64_t seed) : rng(seed) {}

  // Choose `a` so the first update has elementwise magnitude ~ target_step
  // given the magnitude of the initial pseudo-gradient.
  void calibrate_step(double g0_magnitude, double target_step = 0.1) {
    const double g = std::max(g0_magnitude, 1e-12);
    a = target_step * std::pow(big_a + 1.0, alpha) / g;
  }
};

using Objective = std::function<double(const std::vector<double>&)>;

// One two-sided pseudo-gradient at the current iteration's c_k.
// Exactly 2 objective evaluations.
inline std::vector<double> spsa_gradient(const Objective& f,
                                         const std::vector<double>& params,
                                         SpsaState& state) {
  const std::size_t p = params.size();
  const double ck =
      state.c / std::pow(static_cast<double>(state.iteration) + 1.0,
                         state.gamma);
  std::vector<int> delta(p);
  for (auto& d : delta) d = state.rng.rademacher();
  std::vector<double> plus = params, minus = params;
  for (std::size_t i = 0; i < p; ++i) {
    plus[i] += ck * delta[i];
    minus[i] -= ck * delta[i];
  }
  const double fp = f(plus);
  const double fm = f(minus);
  state.evaluations += 2;
  if (!std::isfinite(fp) || !std::isfinite(fm))
    throw std::runtime_error("spsa: non-finite objective value");
  const double scale = (fp - fm) / (2.0 * ck);
  std::vector<double> g(p);
  for (std::size_t i = 0; i < p; ++i) g[i] = scale * delta[i];
  return g;
}

// One ascent step; advances the iteration counter.
inline void spsa_step(const Objective& f, std::vector<double>& params,
                      SpsaState& state) {
  std::vector<double> g = spsa_gradient(f, params, state);
  const double ak =
      state.a / std::pow(state.big_a + static_cast<double>(state.iteration) +
                             1.0,
                         state.alpha);
  for (std::size_t i = 0; i < params.size(); ++i) params[i] += ak * g[i];
  ++state.iteration;
}

inline double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct InitResult {
  std::vector<double> params;
  std::vector<double> g0;
  int tries = 0;
  bool exhausted = false;  // max_tries hit without reaching g_min
};

// Random restarts in [0, 2pi)^P until the initial pseudo-gradient is large
// enough for a useful first SPSA step.
inline InitResult init_generator_params(std::size_t param_count,
                                        const Objective& f, double g_min,
                                        int max_tries, SpsaState& state) {
  if (g_min <= 0.0)
    throw std::invalid_argument("init_generator_params: need g_min > 0");
  InitResult r;
  for (r.tries = 1; r.tries <= max_tries; ++r.tries) {
    r.params.resize(param_count);
    for (auto& p : r.params) p = state.rng.uniform(0.0, 2.0 * std::numbers::pi);
    r.g0 = spsa_gradient(f, r.params, state);
    if (inf_norm(r.g0) >= g_min) return r;
  }
  r.tries = max_tries;
  r.exhausted = true;
  return r;
}

}  // namespace qpgan
