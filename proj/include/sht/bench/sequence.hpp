#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "sht/affine.hpp"

namespace sht::bench {

/// An image sequence in the OTB layout: `img/` with numbered frames and
/// `groundtruth_rect.txt` with one 1-based "x,y,w,h" line per frame.
struct SequenceSpec {
  std::string name;
  std::vector<std::filesystem::path> frames;  ///< sorted by filename
  std::vector<Box> groundtruth;               ///< 0-based, at most one per frame
};

/// Parses groundtruth lines (comma, space or tab separated) and converts the
/// 1-based coordinates to 0-based. `source` names the input in error
/// messages. Throws std::runtime_error on malformed lines or an empty input.
std::vector<Box> parse_groundtruth(std::istream& in, const std::string& source);

SequenceSpec load_sequence(const std::filesystem::path& dir);

/// Writes boxes back in the 1-based comma-separated form.
void write_groundtruth(const std::filesystem::path& file, std::span<const Box> boxes);

/// Copies frames into `dir/img` and writes `dir/groundtruth_rect.txt`.
void write_sequence(const SequenceSpec& seq, const std::filesystem::path& dir);

/// Shortest decimal form that parses back to the same double.
std::string format_number(double v);

}  // namespace sht::bench
