#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpgan {

enum class ComponentKind { PhaseShifter, BeamSplitter };
enum class SlotKind { Trainable, Noise };
enum class LayerKind { Variational, Encoding };

// One optical component in the mesh. A phase shifter acts on `mode`; a beam
// splitter acts on the adjacent pair (mode, mode+1). The angle is read at
// composition time from either the trainable parameter vector or the noise
// vector, at position `slot`.
struct ComponentPlacement {
  ComponentKind kind;
  int mode;
  SlotKind slot_kind;
  int slot;
};

struct LayerSpec {
  LayerKind kind;
  std::vector<ComponentPlacement> placements;
};

// Layered circuit description. Variational layer V = one trainable phase
// shifter per mode followed by a brick-wall of trainable beam splitters on
// pairs (0,1),(2,3),... then (1,2),(3,4),...; encoding layer E = one
// noise-slot phase shifter per mode.
struct AnsatzSpec {
  int modes = 0;
  std::vector<LayerSpec> layers;
  std::string sequence;  // e.g. "VEV"
  std::string preset;    // "A".."D" or "custom"
  int trainable_count = 0;
  int noise_dim = 0;
};

namespace detail {

inline LayerSpec make_variational_layer(int m, int& trainable_slot) {
  LayerSpec layer{LayerKind::Variational, {}};
  for (int j = 0; j < m; ++j)
    layer.placements.push_back({ComponentKind::PhaseShifter, j,
                                SlotKind::Trainable, trainable_slot++});
  for (int j = 0; j + 1 < m; j += 2)
    layer.placements.push_back({ComponentKind::BeamSplitter, j,
                                SlotKind::Trainable, trainable_slot++});
  for (int j = 1; j + 1 < m; j += 2)
    layer.placements.push_back({ComponentKind::BeamSplitter, j,
                                SlotKind::Trainable, trainable_slot++});
  return layer;
}

inline LayerSpec make_encoding_layer(int m, int& noise_slot) {
  LayerSpec layer{LayerKind::Encoding, {}};
  for (int j = 0; j < m; ++j)
    layer.placements.push_back(
        {ComponentKind::PhaseShifter, j, SlotKind::Noise, noise_slot++});
  return layer;
}

}  // namespace detail

inline AnsatzSpec ansatz_from_sequence(const std::string& seq, int m,
                                       const std::string& preset = "custom") {
  if (m < 2) throw std::invalid_argument("ansatz: need m >= 2");
  bool has_v = false, has_e = false;
  AnsatzSpec a;
  a.modes = m;
  a.sequence = seq;
  a.preset = preset;
  int t = 0, z = 0;
  for (char c : seq) {
    if (c == 'V') {
      a.layers.push_back(detail::make_variational_layer(m, t));
      has_v = true;
    } else if (c == 'E') {
      a.layers.push_back(detail::make_encoding_layer(m, z));
      has_e = true;
    } else {
      throw std::invalid_argument("ansatz: layer sequence must be over {V,E}");
    }
  }
  if (!has_v || !has_e)
    throw std::invalid_argument(
        "ansatz: need at least one variational and one encoding layer");
  a.trainable_count = t;
  a.noise_dim = z;
  return a;
}

// Named circuit setups. A and C have one encoding layer, D two, B three.
inline AnsatzSpec preset_ansatz(const std::string& name, int m) {
  if (name == "A") return ansatz_from_sequence("VEV", m, "A");
  if (name == "B") return ansatz_from_sequence("VEVEVEV", m, "B");
  if (name == "C") return ansatz_from_sequence("VVEVV", m, "C");
  if (name == "D") return ansatz_from_sequence("VVEVEV", m, "D");
  throw std::invalid_argument("preset_ansatz: unknown preset '" + name + "'");
}

struct ParamCounts {
  int trainable;
  int noise_dim;
};

inline ParamCounts param_count(const AnsatzSpec& a) {
  return {a.trainable_count, a.noise_dim};
}

// Full m x m matrix of a single component.
// PS on mode j: diag entry exp(i phi). BS on (j, j+1):
// [[cos t, i sin t], [i sin t, cos t]] block.
inline Eigen::MatrixXcd component_unitary(const ComponentPlacement& c,
                                          double value, int m) {
  if (!std::isfinite(value))
    throw std::invalid_argument("component_unitary: non-finite angle");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
  if (c.kind == ComponentKind::PhaseShifter) {
    if (c.mode < 0 || c.mode >= m)
      throw std::invalid_argument("component_unitary: mode out of range");
    u(c.mode, c.mode) = std::polar(1.0, value);
  } else {
    if (c.mode < 0 || c.mode + 1 >= m)
      throw std::invalid_argument("component_unitary: mode pair out of range");
    const double ct = std::cos(value), st = std::sin(value);
    u(c.mode, c.mode) = ct;
    u(c.mode + 1, c.mode + 1) = ct;
    u(c.mode, c.mode + 1) = std::complex<double>(0.0, st);
    u(c.mode + 1, c.mode) = std::complex<double>(0.0, st);
  }
  return u;
}

// Left-to-right product of all component unitaries; trainable slots read from
// `params`, noise slots from `z`. Applied in place as row operations, which
// equals multiplying the full component matrices in sequence.
inline Eigen::MatrixXcd compose_unitary(const AnsatzSpec& a,
                                        const std::vector<double>& params,
                                        const std::vector<double>& z) {
  if (static_cast<int>(params.size()) != a.trainable_count)
    throw std::invalid_argument("compose_unitary: parameter count mismatch");
  if (static_cast<int>(z.size()) != a.noise_dim)
    throw std::invalid_argument("compose_unitary: noise dimension mismatch");
  const int m = a.modes;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
  for (const auto& layer : a.layers) {
    for (const auto& c : layer.placements) {
      const double angle = (c.slot_kind == SlotKind::Trainable)
                               ? params[static_cast<std::size_t>(c.slot)]
                               : z[static_cast<std::size_t>(c.slot)];
      if (!std::isfinite(angle))
        throw std::invalid_argument("compose_unitary: non-finite angle");
      if (c.kind == ComponentKind::PhaseShifter) {
        u.row(c.mode) *= std::polar(1.0, angle);
      } else {
        const std::complex<double> ct(std::cos(angle), 0.0);
        const std::complex<double> ist(0.0, std::sin(angle));
        Eigen::RowVectorXcd r0 = u.row(c.mode);
        Eigen::RowVectorXcd r1 = u.row(c.mode + 1);
        u.row(c.mode) = ct * r0 + ist * r1;
        u.row(c.mode + 1) = ist * r0 + ct * r1;
      }
    }
  }
  return u;
}

}  // namespace qpgan
