#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpgan/generator.hpp"
#include "qpgan/train.hpp"

namespace qpgan {

// All experiment knobs of one run: model geometry, noise settings, and the
// training schedule.
struct RunConfig {
  int modes = 6;
  int photons = 3;
  std::vector<int> input_state;       // length = modes, sums to photons
  std::string ansatz = "C";           // preset letter or a V/E sequence
  int sub_generators = 2;             // 2 or 4
  std::string detector = "pnr";       // "pnr" | "threshold"
  double transmission = 1.0;
  double indistinguishability = 1.0;
  long long shots = 0;  // 0 = exact distributions
  std::string output_dir = "runs";
  TrainingConfig training;
};

namespace detail {

template <class T>
T get_field(const nlohmann::json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::runtime_error("config: field '" + key + "' has the wrong type");
  }
}

}  // namespace detail

inline AnsatzSpec resolve_ansatz(const std::string& name, int modes) {
  if (name.size() == 1 && name.find_first_of("ABCD") == 0)
    return preset_ansatz(name, modes);
  return ansatz_from_sequence(name, modes);
}

inline void validate_run_config(const RunConfig& c) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::runtime_error("config: field '" + field + "': " + why);
  };
  if (c.modes < 2) fail("modes", "must be >= 2");
  if (c.photons < 1) fail("photons", "must be >= 1");
  if (static_cast<int>(c.input_state.size()) != c.modes)
    fail("input_state", "length must equal modes");
  int total = 0;
  for (int v : c.input_state) {
    if (v < 0) fail("input_state", "occupations must be non-negative");
    total += v;
  }
  if (total != c.photons) fail("input_state", "occupations must sum to photons");
  if (c.sub_generators != 2 && c.sub_generators != 4)
    fail("sub_generators", "must be 2 or 4");
  if (c.detector != "pnr" && c.detector != "threshold")
    fail("detector", "must be 'pnr' or 'threshold'");
  if (c.transmission < 0.0 || c.transmission > 1.0)
    fail("transmission", "must be in [0, 1]");
  if (c.indistinguishability < 0.0 || c.indistinguishability > 1.0)
    fail("indistinguishability", "must be in [0, 1]");
  if (c.shots < 0) fail("shots", "must be >= 0");
  if (c.training.digit < 0 || c.training.digit > 9)
    fail("digit", "must be in 0..9");
  if (c.training.batch_size < 1) fail("batch_size", "must be >= 1");
  if (c.training.iterations < 1) fail("iterations", "must be >= 1");
  if (c.training.spsa_steps_per_iter < 1)
    fail("spsa_steps_per_iter", "must be >= 1");
  if (c.training.disc_steps < 1) fail("disc_steps", "must be >= 1");
  if (c.training.disc_lr <= 0.0) fail("disc_lr", "must be > 0");

  const bool lossy_threshold = c.detector == "threshold" && c.transmission < 1.0;
  if (lossy_threshold && c.photons > c.modes)
    fail("photons", "lossy threshold detection needs photons <= modes");
  MappingSpec ms{c.modes, c.photons,
                 c.detector == "pnr" ? DetectorKind::PNR
                                     : DetectorKind::Threshold,
                 lossy_threshold, Generator::kImagePixels / c.sub_generators};
  if (available_integers(ms) < ms.patch_pixels)
    fail("sub_generators",
         "mapping provides fewer integers than pixels per patch (increase "
         "modes/photons or sub_generators)");
  // the ansatz must parse for the given mode count
  resolve_ansatz(c.ansatz, c.modes);
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.modes = detail::get_field(j, "modes", c.modes);
  c.photons = detail::get_field(j, "photons", c.photons);
  c.input_state =
      detail::get_field(j, "input_state", std::vector<int>{});
  c.ansatz = detail::get_field(j, "ansatz", c.ansatz);
  c.sub_generators = detail::get_field(j, "sub_generators", c.sub_generators);
  c.detector = detail::get_field(j, "detector", c.detector);
  c.transmission = detail::get_field(j, "transmission", c.transmission);
  c.indistinguishability =
      detail::get_field(j, "indistinguishability", c.indistinguishability);
  c.shots = detail::get_field(j, "shots", c.shots);
  c.output_dir = detail::get_field(j, "output_dir", c.output_dir);
  c.training.batch_size =
      detail::get_field(j, "batch_size", c.training.batch_size);
  c.training.disc_lr = detail::get_field(j, "disc_lr", c.training.disc_lr);
  c.training.spsa_steps_per_iter =
      detail::get_field(j, "spsa_steps_per_iter",
                        c.training.spsa_steps_per_iter);
  c.training.iterations =
      detail::get_field(j, "iterations", c.training.iterations);
  c.training.disc_steps =
      detail::get_field(j, "disc_steps", c.training.disc_steps);
  c.training.digit = detail::get_field(j, "digit", c.training.digit);
  c.training.seed = detail::get_field(j, "seed", c.training.seed);
  c.training.g_min = detail::get_field(j, "g_min", c.training.g_min);
  c.training.reinit_max_tries =
      detail::get_field(j, "reinit_max_tries", c.training.reinit_max_tries);
  c.training.snapshot_every =
      detail::get_field(j, "snapshot_every", c.training.snapshot_every);
  validate_run_config(c);
  return c;
}

inline nlohmann::json run_config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["modes"] = c.modes;
  j["photons"] = c.photons;
  j["input_state"] = c.input_state;
  j["ansatz"] = c.ansatz;
  j["sub_generators"] = c.sub_generators;
  j["detector"] = c.detector;
  j["transmission"] = c.transmission;
  j["indistinguishability"] = c.indistinguishability;
  j["shots"] = c.shots;
  j["output_dir"] = c.output_dir;
  j["batch_size"] = c.training.batch_size;
  j["disc_lr"] = c.training.disc_lr;
  j["spsa_steps_per_iter"] = c.training.spsa_steps_per_iter;
  j["iterations"] = c.training.iterations;
  j["disc_steps"] = c.training.disc_steps;
  j["digit"] = c.training.digit;
  j["seed"] = c.training.seed;
  j["g_min"] = c.training.g_min;
  j["reinit_max_tries"] = c.training.reinit_max_tries;
  j["snapshot_every"] = c.training.snapshot_every;
  return j;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config: invalid JSON in " + path + ": " +
                             e.what());
  }
  return run_config_from_json(j);
}

// Instantiate the generator described by a run config. All sub-generators
// share the ansatz structure; parameters start at zero until initialized.
inline Generator build_generator(const RunConfig& c) {
  const bool lossy_threshold = c.detector == "threshold" && c.transmission < 1.0;
  AnsatzSpec ansatz = resolve_ansatz(c.ansatz, c.modes);
  NoiseModel noise{c.transmission, c.indistinguishability,
                   c.detector == "pnr" ? DetectorKind::PNR
                                       : DetectorKind::Threshold};
  MappingSpec mapping{c.modes, c.photons, noise.detector, lossy_threshold,
                      Generator::kImagePixels / c.sub_generators};
  Generator gen;
  for (int i = 0; i < c.sub_generators; ++i) {
    SubGenerator g;
    g.ansatz = ansatz;
    g.params.assign(static_cast<std::size_t>(ansatz.trainable_count), 0.0);
    g.input_state = FockState{c.input_state};
    g.mapping = mapping;
    g.noise = noise;
    g.shots = c.shots;
    gen.sub_generators.push_back(std::move(g));
  }
  gen.validate();
  return gen;
}

}  // namespace qpgan
