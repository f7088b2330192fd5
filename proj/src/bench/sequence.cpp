#include "sht/bench/sequence.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace fs = std::filesystem;

namespace sht::bench {

namespace {

bool is_image(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".jpg" || ext == ".jpeg" || ext == ".png" || ext == ".bmp";
}

bool is_separator(char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<Box> parse_groundtruth(std::istream& in, const std::string& source) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  while (!lines.empty() &&
         std::all_of(lines.back().begin(), lines.back().end(), [](char c) { return is_separator(c); })) {
    lines.pop_back();
  }
  if (lines.empty()) throw std::runtime_error(source + ": groundtruth file is empty");

  std::vector<Box> boxes;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    const std::string where = source + ":" + std::to_string(n + 1);
    double v[4];
    int count = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && is_separator(*p)) ++p;
      if (p == end) break;
      if (count == 4) throw std::runtime_error(where + ": expected 4 values");
      const auto res = std::from_chars(p, end, v[count]);
      if (res.ec != std::errc() || (res.ptr < end && !is_separator(*res.ptr))) {
        throw std::runtime_error(where + ": malformed number");
      }
      ++count;
      p = res.ptr;
    }
    if (count != 4) throw std::runtime_error(where + ": expected 4 values, got " + std::to_string(count));
    if (!(v[2] >= 1.0 && v[3] >= 1.0)) throw std::runtime_error(where + ": box width and height must be >= 1");
    boxes.push_back({v[0] - 1.0, v[1] - 1.0, v[2], v[3]});
  }
  return boxes;
}

SequenceSpec load_sequence(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + ": not a directory");
  const fs::path img = dir / "img";
  if (!fs::is_directory(img)) throw std::runtime_error(img.string() + ": missing img/ folder");
  const fs::path gt = dir / "groundtruth_rect.txt";
  std::ifstream in(gt);
  if (!in) throw std::runtime_error(gt.string() + ": cannot open groundtruth file");

  SequenceSpec seq;
  seq.name = fs::absolute(dir).lexically_normal().filename().string();
  if (seq.name.empty()) seq.name = fs::absolute(dir).lexically_normal().parent_path().filename().string();
  for (const auto& entry : fs::directory_iterator(img)) {
    if (entry.is_regular_file() && is_image(entry.path())) seq.frames.push_back(entry.path());
  }
  std::sort(seq.frames.begin(), seq.frames.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  if (seq.frames.empty()) throw std::runtime_error(img.string() + ": no image frames");
  seq.groundtruth = parse_groundtruth(in, gt.string());
  if (seq.groundtruth.size() > seq.frames.size()) {
    throw std::runtime_error(gt.string() + ": " + std::to_string(seq.groundtruth.size()) + " boxes for " +
                             std::to_string(seq.frames.size()) + " frames");
  }
  return seq;
}

void write_groundtruth(const fs::path& file, std::span<const Box> boxes) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error(file.string() + ": cannot write");
  for (const Box& b : boxes) {
    out << format_number(b.x + 1.0) << ',' << format_number(b.y + 1.0) << ',' << format_number(b.w) << ','
        << format_number(b.h) << '\n';
  }
}

void write_sequence(const SequenceSpec& seq, const fs::path& dir) {
  fs::create_directories(dir / "img");
  for (const fs::path& f : seq.frames) {
    fs::copy_file(f, dir / "img" / f.filename(), fs::copy_options::overwrite_existing);
  }
  write_groundtruth(dir / "groundtruth_rect.txt", seq.groundtruth);
}

}  // namespace sht::bench
