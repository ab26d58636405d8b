#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "qpgan/qpgan.hpp"

namespace fs = std::filesystem;

namespace {

std::string run_directory(const std::string& base, std::uint64_t seed) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", std::localtime(&t));
  fs::path dir = fs::path(base) / (std::string(buf) + "-seed" +
                                   std::to_string(seed));
  fs::create_directories(dir);
  return dir.string();
}

int cmd_train(const std::string& config_path, const std::string& data_path,
              std::uint64_t seed, bool seed_given, int threads) {
  qpgan::RunConfig config = qpgan::load_run_config(config_path);
  if (seed_given) config.training.seed = seed;
  config.training.threads = threads;
  qpgan::Dataset dataset = qpgan::load_dataset(data_path);

  qpgan::Generator gen = qpgan::build_generator(config);
  qpgan::Discriminator disc = qpgan::Discriminator::random_init(
      qpgan::derive_seed(config.training.seed, 1));

  const std::string dir = run_directory(config.output_dir,
                                        config.training.seed);
  std::cout << "run directory: " << dir << "\n";

  auto snapshot = [&](int iter, const std::vector<std::vector<double>>& imgs) {
    for (std::size_t i = 0; i < imgs.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof(name), "snapshot_%06d_img%zu.pgm", iter, i);
      qpgan::write_pgm(imgs[i], (fs::path(dir) / name).string());
    }
  };

  qpgan::TrainResult result =
      qpgan::train(config.training, dataset, gen, disc, snapshot);
  if (result.reinit_exhausted)
    std::cerr << "warning: parameter reinitialization budget exhausted; "
                 "initial pseudo-gradient below g_min\n";

  qpgan::write_loss_csv(result.history, (fs::path(dir) / "loss.csv").string());
  qpgan::save_model(gen, disc, config, result.spsa_a,
                    config.training.iterations,
                    (fs::path(dir) / "model.json").string());
  std::cout << "iterations: " << result.history.records.size()
            << ", spsa steps: " << result.counters.spsa_steps
            << ", disc steps: " << result.counters.disc_steps << "\n";
  std::cout << "final loss_g: " << result.history.records.back().loss_g
            << ", loss_d: " << result.history.records.back().loss_d << "\n";
  return 0;
}

int cmd_sample(const std::string& model_path, int count, std::uint64_t seed,
               const std::string& out_dir) {
  qpgan::LoadedModel m = qpgan::load_model(model_path);
  fs::create_directories(out_dir);
  const int dim = m.generator.noise_dim();
  for (int i = 0; i < count; ++i) {
    qpgan::Rng rng(qpgan::derive_seed(seed, 20,
                                      static_cast<std::uint64_t>(i)));
    std::vector<double> z(static_cast<std::size_t>(dim));
    for (auto& v : z) v = rng.normal();
    auto image = qpgan::generate_image(
        m.generator, z,
        qpgan::derive_seed(seed, 21, static_cast<std::uint64_t>(i)));
    char name[32];
    std::snprintf(name, sizeof(name), "sample_%04d.pgm", i);
    qpgan::write_pgm(image, (fs::path(out_dir) / name).string());
  }
  std::cout << "wrote " << count << " images to " << out_dir << "\n";
  return 0;
}

int cmd_map(int modes, int photons, const std::string& detector, bool lossy) {
  qpgan::MappingSpec spec{modes, photons,
                          detector == "pnr" ? qpgan::DetectorKind::PNR
                                            : qpgan::DetectorKind::Threshold,
                          lossy, 0};
  auto outcomes = qpgan::canonical_outcomes(spec);
  std::cout << "integer,outcome\n";
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    std::cout << i << ',' << qpgan::to_label(outcomes[i]) << '\n';
  return 0;
}

int cmd_dist(const std::string& config_path, std::uint64_t z_seed) {
  qpgan::RunConfig config = qpgan::load_run_config(config_path);
  qpgan::Generator gen = qpgan::build_generator(config);
  const auto& g = gen.sub_generators.front();

  qpgan::Rng rng(z_seed);
  std::vector<double> z(static_cast<std::size_t>(g.ansatz.noise_dim));
  for (auto& v : z) v = rng.normal();

  Eigen::MatrixXcd u = qpgan::compose_unitary(g.ansatz, g.params, z);
  qpgan::OutputDistribution dist = qpgan::simulate(u, g.input_state, g.noise);
  qpgan::OutputDistribution post =
      qpgan::detect_and_postselect(dist, g.noise, g.input_state.photons());

  std::cout << "outcome,probability\n";
  std::cout.precision(12);
  for (std::size_t i = 0; i < post.support.size(); ++i)
    std::cout << qpgan::to_label(post.support[i]) << ',' << post.probs[i]
              << '\n';
  std::cerr << "kept_fraction: " << post.kept_fraction << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"photonic quantum GAN trainer and simulator"};
  app.require_subcommand(1);

  std::string config_path, data_path, model_path, out_dir = "samples";
  std::uint64_t seed = 0;
  int count = 16;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  int modes = 3, photons = 3;
  std::string detector = "pnr";
  bool lossy = false;

  auto* train = app.add_subcommand("train", "train a model from a config");
  train->add_option("--config", config_path, "run config JSON")->required();
  train->add_option("--data", data_path, "dataset CSV (optdigits format)")
      ->required();
  auto* seed_opt = train->add_option("--seed", seed, "root seed override");
  train->add_option("--threads", threads, "worker threads");

  auto* sample = app.add_subcommand("sample", "generate images from a model");
  sample->add_option("--model", model_path, "model file")->required();
  sample->add_option("--count", count, "number of images");
  sample->add_option("--seed", seed, "noise seed");
  sample->add_option("--out", out_dir, "output directory");

  auto* map = app.add_subcommand("map", "print the integer-outcome table");
  map->add_option("--modes", modes, "mode count")->required();
  map->add_option("--photons", photons, "photon count")->required();
  map->add_option("--detector", detector, "pnr|threshold")
      ->check(CLI::IsMember({"pnr", "threshold"}));
  map->add_flag("--lossy", lossy, "lossy threshold regime");

  auto* dist = app.add_subcommand(
      "dist", "print the first sub-generator's output distribution");
  dist->add_option("--config", config_path, "run config JSON")->required();
  dist->add_option("--seed", seed, "noise sample seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed())
      return cmd_train(config_path, data_path, seed, seed_opt->count() > 0,
                       threads);
    if (sample->parsed()) return cmd_sample(model_path, count, seed, out_dir);
    if (map->parsed()) return cmd_map(modes, photons, detector, lossy);
    if (dist->parsed()) return cmd_dist(config_path, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
