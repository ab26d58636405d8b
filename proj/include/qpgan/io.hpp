#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpgan/config.hpp"
#include "qpgan/discriminator.hpp"
#include "qpgan/generator.hpp"
#include "qpgan/train.hpp"

namespace qpgan {

// Plain-text PGM, byte-exact: "P2", "8 8", "255", then 8 rows of 8 integers
// round(pixel * 255) half-up.
inline void write_pgm(const std::vector<double>& image,
                      const std::string& path) {
  if (image.size() != 64)
    throw std::invalid_argument("write_pgm: image must have 64 pixels");
  for (double p : image)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("write_pgm: pixel outside [0, 1]");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
  out << "P2\n8 8\n255\n";
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      if (c) out << ' ';
      out << static_cast<int>(
          std::floor(image[static_cast<std::size_t>(8 * r + c)] * 255.0 + 0.5));
    }
    out << '\n';
  }
}

inline void write_loss_csv(const LossHistory& history,
                           const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_loss_csv: cannot open " + path);
  out << "iter,loss_g,loss_d\n";
  out.precision(17);
  for (const auto& r : history.records)
    out << r.iter << ',' << r.loss_g << ',' << r.loss_d << '\n';
}

inline constexpr const char* kModelFormat = "qpgan-model";
inline constexpr int kModelVersion = 1;

// Model file: run-config echo, every sub-generator parameter vector, the
// discriminator weights, the calibrated SPSA scale and the root seed.
// Doubles round-trip exactly through nlohmann::json.
inline void save_model(const Generator& gen, const Discriminator& disc,
                       const RunConfig& config, double spsa_a,
                       int iterations_done, const std::string& path) {
  nlohmann::json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["run_config"] = run_config_to_json(config);
  j["spsa_a"] = spsa_a;
  j["iterations_done"] = iterations_done;

  nlohmann::json subs = nlohmann::json::array();
  for (const auto& g : gen.sub_generators) subs.push_back({{"params", g.params}});
  j["sub_generators"] = subs;

  nlohmann::json d;
  std::vector<std::vector<double>> w1(
      static_cast<std::size_t>(disc.w1().rows()));
  for (Eigen::Index r = 0; r < disc.w1().rows(); ++r) {
    auto& row = w1[static_cast<std::size_t>(r)];
    row.resize(static_cast<std::size_t>(disc.w1().cols()));
    for (Eigen::Index c = 0; c < disc.w1().cols(); ++c)
      row[static_cast<std::size_t>(c)] = disc.w1()(r, c);
  }
  d["w1"] = w1;
  d["b1"] = std::vector<double>(disc.b1().data(),
                                disc.b1().data() + disc.b1().size());
  d["w2"] = std::vector<double>(disc.w2().data(),
                                disc.w2().data() + disc.w2().size());
  d["b2"] = disc.b2();
  j["discriminator"] = d;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_model: cannot open " + path);
  out << j.dump(2) << '\n';
}

struct LoadedModel {
  RunConfig config;
  Generator generator;
  Discriminator discriminator;
  double spsa_a = 0.0;
  int iterations_done = 0;
};

inline LoadedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("load_model: corrupt file: " +
                             std::string(e.what()));
  }
  if (!j.contains("format") || j["format"] != kModelFormat)
    throw std::runtime_error("load_model: not a model file");
  if (!j.contains("version") || j["version"].get<int>() != kModelVersion)
    throw std::runtime_error("load_model: unsupported model version");

  LoadedModel m;
  m.config = run_config_from_json(j.at("run_config"));
  m.generator = build_generator(m.config);
  const auto& subs = j.at("sub_generators");
  if (subs.size() != m.generator.sub_generators.size())
    throw std::runtime_error("load_model: sub-generator count mismatch");
  for (std::size_t i = 0; i < subs.size(); ++i) {
    auto params = subs[i].at("params").get<std::vector<double>>();
    if (params.size() != m.generator.sub_generators[i].params.size())
      throw std::runtime_error("load_model: parameter vector size mismatch");
    m.generator.sub_generators[i].params = std::move(params);
  }

  const auto& d = j.at("discriminator");
  auto w1v = d.at("w1").get<std::vector<std::vector<double>>>();
  auto b1v = d.at("b1").get<std::vector<double>>();
  auto w2v = d.at("w2").get<std::vector<double>>();
  const auto rows = static_cast<Eigen::Index>(w1v.size());
  const auto cols = rows ? static_cast<Eigen::Index>(w1v[0].size()) : 0;
  Eigen::MatrixXd w1(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      w1(r, c) = w1v[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  m.discriminator = Discriminator(static_cast<int>(cols),
                                  static_cast<int>(rows));
  m.discriminator.set_weights(
      std::move(w1),
      Eigen::Map<const Eigen::VectorXd>(b1v.data(),
                                        static_cast<Eigen::Index>(b1v.size())),
      Eigen::Map<const Eigen::VectorXd>(w2v.data(),
                                        static_cast<Eigen::Index>(w2v.size())),
      d.at("b2").get<double>());
  m.spsa_a = j.at("spsa_a").get<double>();
  m.iterations_done = j.at("iterations_done").get<int>();
  return m;
}

}  // namespace qpgan
