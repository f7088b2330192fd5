#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sht/affine.hpp"
#include "sht/bench/sequence.hpp"
#include "sht/image.hpp"

namespace sht::bench {

enum class Scenario {
  smooth_motion,               ///< two-tone square drifting at bounded speed
  abrupt_jump,                 ///< smooth motion plus a teleport every jump_every frames
  occlusion,                   ///< smooth motion with a bar sweeping across the target twice
  color_constant_deformation,  ///< skin-toned ellipse whose aspect oscillates
};

Scenario parse_scenario(std::string_view name);
std::string_view to_string(Scenario s);

struct SynthOptions {
  Scenario scenario = Scenario::smooth_motion;
  int frames = 200;
  int width = 640;
  int height = 360;
  double target_size = 40.0;
  double speed = 3.0;      ///< max center displacement per frame outside jumps
  int jump_every = 50;
  double min_jump = 150.0;
  std::uint64_t seed = 1;
};

struct SynthSequence {
  std::vector<RgbFrame> frames;
  std::vector<Box> groundtruth;
};

SynthSequence render_sequence(const SynthOptions& options);

/// Renders and writes an OTB-layout sequence (`img/0001.png`...,
/// `groundtruth_rect.txt`) under `dir`.
SequenceSpec synth_sequence(const SynthOptions& options, const std::filesystem::path& dir);

}  // namespace sht::bench
