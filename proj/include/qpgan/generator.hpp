#pragma once

#include <future>
#include <stdexcept>
#include <vector>

#include "qpgan/circuit.hpp"
#include "qpgan/fock.hpp"
#include "qpgan/mapping.hpp"
#include "qpgan/simulator.hpp"

namespace qpgan {

// One patch producer: a parametrized linear-optical circuit, its detection /
// noise settings, and the distribution-based pixel mapping.
struct SubGenerator {
  AnsatzSpec ansatz;
  std::vector<double> params;
  FockState input_state;
  MappingSpec mapping;
  NoiseModel noise;
  long long shots = 0;  // 0 = exact distribution

  void validate() const {
    if (input_state.modes() != ansatz.modes)
      throw std::invalid_argument(
          "sub-generator: input state mode count differs from the ansatz");
    if (static_cast<int>(params.size()) != ansatz.trainable_count)
      throw std::invalid_argument("sub-generator: parameter count mismatch");
    if (available_integers(mapping) < mapping.patch_pixels)
      throw std::invalid_argument(
          "sub-generator: mapping provides fewer integers than patch pixels");
  }
};

// Pipeline of one patch: circuit unitary -> noisy output distribution ->
// detection and postselection -> (optional sampling) -> integer vector ->
// tail trim -> min-max normalization.
inline std::vector<double> generate_patch(const SubGenerator& g,
                                          const std::vector<double>& z,
                                          std::uint64_t shot_seed = 0) {
  Eigen::MatrixXcd u = compose_unitary(g.ansatz, g.params, z);
  OutputDistribution dist = simulate(u, g.input_state, g.noise);
  OutputDistribution post =
      detect_and_postselect(dist, g.noise, g.input_state.photons());
  if (g.shots > 0)
    post = empirical_distribution(sample_shots(post, g.shots, shot_seed));
  std::vector<double> v = distribution_to_integers(post, g.mapping);
  return minmax_normalize(trim_tails(v, g.mapping.patch_pixels));
}

// Patch-based image generator: sub-generators produce horizontal strips that
// are stacked vertically (sub-generator 0 = top rows). All sub-generators
// receive the same latent vector z.
struct Generator {
  std::vector<SubGenerator> sub_generators;
  static constexpr int kImagePixels = 64;

  void validate() const {
    if (sub_generators.empty())
      throw std::invalid_argument("generator: no sub-generators");
    int total = 0;
    for (const auto& g : sub_generators) {
      g.validate();
      total += g.mapping.patch_pixels;
    }
    if (total != kImagePixels)
      throw std::invalid_argument(
          "generator: patch pixels must sum to 64");
  }

  int noise_dim() const { return sub_generators.front().ansatz.noise_dim; }

  int total_param_count() const {
    int t = 0;
    for (const auto& g : sub_generators) t += g.ansatz.trainable_count;
    return t;
  }

  std::vector<double> concatenated_params() const {
    std::vector<double> all;
    for (const auto& g : sub_generators)
      all.insert(all.end(), g.params.begin(), g.params.end());
    return all;
  }

  void set_concatenated_params(const std::vector<double>& all) {
    if (static_cast<int>(all.size()) != total_param_count())
      throw std::invalid_argument("generator: parameter count mismatch");
    std::size_t off = 0;
    for (auto& g : sub_generators) {
      const std::size_t k = g.params.size();
      std::copy(all.begin() + static_cast<std::ptrdiff_t>(off),
                all.begin() + static_cast<std::ptrdiff_t>(off + k),
                g.params.begin());
      off += k;
    }
  }
};

inline std::vector<double> generate_image(const Generator& gen,
                                          const std::vector<double>& z,
                                          std::uint64_t shot_seed = 0) {
  std::vector<double> image;
  image.reserve(Generator::kImagePixels);
  for (std::size_t i = 0; i < gen.sub_generators.size(); ++i) {
    std::vector<double> patch =
        generate_patch(gen.sub_generators[i], z, derive_seed(shot_seed, i));
    image.insert(image.end(), patch.begin(), patch.end());
  }
  return image;
}

// Images of a batch are independent; they may be generated in parallel but
// are always collected in batch order.
inline std::vector<std::vector<double>> generate_image_batch(
    const Generator& gen, const std::vector<std::vector<double>>& z_batch,
    std::uint64_t shot_seed = 0, int threads = 1) {
  std::vector<std::vector<double>> images(z_batch.size());
  if (threads <= 1 || z_batch.size() <= 1) {
    for (std::size_t i = 0; i < z_batch.size(); ++i)
      images[i] = generate_image(gen, z_batch[i], derive_seed(shot_seed, 1, i));
    return images;
  }
  std::vector<std::future<std::vector<double>>> tasks;
  tasks.reserve(z_batch.size());
  for (std::size_t i = 0; i < z_batch.size(); ++i)
    tasks.push_back(std::async(std::launch::async, [&, i] {
      return generate_image(gen, z_batch[i], derive_seed(shot_seed, 1, i));
    }));
  for (std::size_t i = 0; i < z_batch.size(); ++i) images[i] = tasks[i].get();
  return images;
}

}  // namespace qpgan
