#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qpgan/dataset.hpp"
#include "qpgan/discriminator.hpp"
#include "qpgan/generator.hpp"
#include "qpgan/spsa.hpp"

namespace qpgan {

struct TrainingConfig {
  int batch_size = 4;
  double disc_lr = 0.002;
  int spsa_steps_per_iter = 7;
  int iterations = 1500;      // iterations to run in this call
  int schedule_iterations = 0;  // full planned schedule (0 = iterations);
                                // fixes the SPSA gain decay across resumes
  int disc_steps = 1;  // discriminator ascent steps per outer iteration
  int digit = 0;
  std::uint64_t seed = 0;
  double g_min = 0.05;       // reinitialization threshold on ||g0||_inf
  int reinit_max_tries = 50;
  int snapshot_every = 100;
  int threads = 1;
  double spsa_a = 0.0;  // 0 = calibrate from the initial pseudo-gradient
  double spsa_c = 0.1;
  double spsa_step_target = 0.1;  // first-update elementwise magnitude
};

struct LossRecord {
  int iter;
  double loss_g;
  double loss_d;
};

struct LossHistory {
  std::vector<LossRecord> records;
};

struct TrainCounters {
  long long spsa_steps = 0;
  long long disc_steps = 0;
  long long objective_evaluations = 0;
};

struct TrainResult {
  LossHistory history;
  TrainCounters counters;
  double spsa_a = 0.0;  // calibrated step scale actually used
  bool reinit_exhausted = false;
};

namespace detail {

// seed-derivation stream ids; fixed so resumed and parallel runs agree
inline constexpr std::uint64_t kStreamParamInit = 2;
inline constexpr std::uint64_t kStreamSpsa = 3;
inline constexpr std::uint64_t kStreamRealBatch = 10;
inline constexpr std::uint64_t kStreamNoiseBatch = 11;
inline constexpr std::uint64_t kStreamShots = 12;
inline constexpr std::uint64_t kStreamLogging = 13;

inline std::vector<std::vector<double>> draw_noise_batch(int batch, int dim,
                                                         std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> z(static_cast<std::size_t>(batch));
  for (auto& v : z) {
    v.resize(static_cast<std::size_t>(dim));
    for (auto& x : v) x = rng.normal();
  }
  return z;
}

inline Eigen::VectorXd to_vec(const std::vector<double>& image) {
  return Eigen::Map<const Eigen::VectorXd>(
      image.data(), static_cast<Eigen::Index>(image.size()));
}

inline Eigen::VectorXd to_vec(const ImageSample& s) {
  return Eigen::Map<const Eigen::VectorXd>(
      s.pixels.data(), static_cast<Eigen::Index>(s.pixels.size()));
}

}  // namespace detail

// Adversarial loop: per outer iteration, `disc_steps` gradient-ascent steps
// on L_D with fresh real and fake batches, then `spsa_steps_per_iter` SPSA
// ascent steps on L_G with fresh noise batches. When start_iteration is 0 and
// cfg.spsa_a is 0, generator parameters are (re)initialized until the first
// pseudo-gradient clears cfg.g_min, and the SPSA step scale is calibrated
// from it.
//
// snapshot(iter, images) is invoked every cfg.snapshot_every iterations with
// a batch of freshly generated images.
template <class SnapshotFn>
TrainResult train(const TrainingConfig& cfg, const Dataset& dataset,
                  Generator& gen, Discriminator& disc, SnapshotFn&& snapshot,
                  int start_iteration = 0) {
  gen.validate();
  if (cfg.batch_size < 1 || cfg.iterations < 1 || cfg.spsa_steps_per_iter < 1 ||
      cfg.disc_steps < 1)
    throw std::invalid_argument("train: counts must be positive");
  Dataset digit_ds = filter_digit(dataset, cfg.digit);

  const std::uint64_t root = cfg.seed;
  const int noise_dim = gen.noise_dim();
  TrainResult result;

  SpsaState spsa(0);
  spsa.c = cfg.spsa_c;
  const int schedule =
      cfg.schedule_iterations > 0 ? cfg.schedule_iterations : cfg.iterations;
  spsa.big_a = 0.1 * static_cast<double>(schedule) * cfg.spsa_steps_per_iter;
  spsa.iteration =
      static_cast<long long>(start_iteration) * cfg.spsa_steps_per_iter;

  // objective over the concatenated sub-generator parameter vector
  auto make_objective = [&](std::uint64_t noise_seed,
                            std::uint64_t shot_seed) -> Objective {
    auto z_batch = detail::draw_noise_batch(cfg.batch_size, noise_dim,
                                            noise_seed);
    return [&, z_batch, shot_seed](const std::vector<double>& p) {
      Generator candidate = gen;
      candidate.set_concatenated_params(p);
      auto images = generate_image_batch(candidate, z_batch, shot_seed,
                                         cfg.threads);
      std::vector<double> d_fake;
      d_fake.reserve(images.size());
      for (const auto& img : images)
        d_fake.push_back(disc.forward(detail::to_vec(img)));
      ++result.counters.objective_evaluations;
      return loss_g(d_fake);
    };
  };

  if (start_iteration == 0 && cfg.spsa_a == 0.0) {
    spsa.rng = Rng(derive_seed(root, detail::kStreamParamInit));
    Objective f0 = make_objective(
        derive_seed(root, detail::kStreamParamInit, 1),
        derive_seed(root, detail::kStreamParamInit, 2));
    InitResult init = init_generator_params(
        static_cast<std::size_t>(gen.total_param_count()), f0, cfg.g_min,
        cfg.reinit_max_tries, spsa);
    gen.set_concatenated_params(init.params);
    spsa.calibrate_step(inf_norm(init.g0), cfg.spsa_step_target);
    result.reinit_exhausted = init.exhausted;
  } else {
    spsa.a = cfg.spsa_a;
  }
  result.spsa_a = spsa.a;

  for (int iter = start_iteration; iter < start_iteration + cfg.iterations;
       ++iter) {
    const std::uint64_t it = static_cast<std::uint64_t>(iter);

    double last_loss_d = 0.0;
    for (int j = 0; j < cfg.disc_steps; ++j) {
      const std::uint64_t ctr = it * static_cast<std::uint64_t>(cfg.disc_steps) + static_cast<std::uint64_t>(j);
      auto real = sample_batch(digit_ds, cfg.batch_size,
                               derive_seed(root, detail::kStreamRealBatch, ctr));
      auto z_batch = detail::draw_noise_batch(
          cfg.batch_size, noise_dim,
          derive_seed(root, detail::kStreamNoiseBatch, 2 * ctr));
      auto fakes = generate_image_batch(
          gen, z_batch, derive_seed(root, detail::kStreamShots, 3 * ctr),
          cfg.threads);

      std::vector<Eigen::VectorXd> real_v, fake_v;
      std::vector<double> d_real, d_fake;
      for (const auto& s : real) {
        real_v.push_back(detail::to_vec(s));
        d_real.push_back(disc.forward(real_v.back()));
      }
      for (const auto& img : fakes) {
        fake_v.push_back(detail::to_vec(img));
        d_fake.push_back(disc.forward(fake_v.back()));
      }
      last_loss_d = loss_d(d_real, d_fake);
      if (!std::isfinite(last_loss_d))
        throw std::runtime_error("train: non-finite discriminator loss");
      disc.ascend(disc.loss_d_gradient(real_v, fake_v), cfg.disc_lr);
      ++result.counters.disc_steps;
    }

    for (int j = 0; j < cfg.spsa_steps_per_iter; ++j) {
      const std::uint64_t step = static_cast<std::uint64_t>(spsa.iteration);
      // per-step reseeding keeps resumed runs on the same perturbation stream
      spsa.rng = Rng(derive_seed(root, detail::kStreamSpsa, step));
      Objective f =
          make_objective(derive_seed(root, detail::kStreamNoiseBatch,
                                     2 * step + 1),
                         derive_seed(root, detail::kStreamShots, 3 * step + 1));
      std::vector<double> params = gen.concatenated_params();
      spsa_step(f, params, spsa);
      gen.set_concatenated_params(params);
      ++result.counters.spsa_steps;
    }

    // logging pass on a dedicated noise batch
    auto z_log = detail::draw_noise_batch(
        cfg.batch_size, noise_dim, derive_seed(root, detail::kStreamLogging, it));
    auto log_images = generate_image_batch(
        gen, z_log, derive_seed(root, detail::kStreamLogging + 1, it),
        cfg.threads);
    std::vector<double> d_fake_log;
    for (const auto& img : log_images)
      d_fake_log.push_back(disc.forward(detail::to_vec(img)));
    const double lg = loss_g(d_fake_log);
    if (!std::isfinite(lg))
      throw std::runtime_error("train: non-finite generator loss");
    result.history.records.push_back({iter + 1, lg, last_loss_d});

    if (cfg.snapshot_every > 0 && (iter + 1) % cfg.snapshot_every == 0)
      snapshot(iter + 1, log_images);
  }
  return result;
}

}  // namespace qpgan
