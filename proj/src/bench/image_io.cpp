#include "sht/bench/image_io.hpp"

#include <stdexcept>
#include <vector>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

namespace sht::bench {

namespace {

cv::Mat to_bgr(const RgbFrame& frame) {
  const auto bytes = frame.to_bytes();
  cv::Mat rgb(frame.height(), frame.width(), CV_8UC3, const_cast<std::uint8_t*>(bytes.data()));
  cv::Mat bgr;
  cv::cvtColor(rgb, bgr, cv::COLOR_RGB2BGR);
  return bgr;
}

void write_png(const std::filesystem::path& file, const cv::Mat& bgr) {
  const std::vector<int> params = {cv::IMWRITE_PNG_COMPRESSION, 3};
  if (!cv::imwrite(file.string(), bgr, params)) throw std::runtime_error(file.string() + ": cannot write image");
}

}  // namespace

RgbFrame read_frame(const std::filesystem::path& file) {
  const cv::Mat bgr = cv::imread(file.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) throw std::runtime_error(file.string() + ": cannot decode image");
  cv::Mat rgb;
  cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
  if (!rgb.isContinuous()) rgb = rgb.clone();
  return RgbFrame::from_bytes(rgb.cols, rgb.rows,
                              std::span<const std::uint8_t>(rgb.data, static_cast<std::size_t>(rgb.total() * 3)));
}

void write_frame(const std::filesystem::path& file, const RgbFrame& frame) { write_png(file, to_bgr(frame)); }

void write_annotated(const std::filesystem::path& file, const RgbFrame& frame, std::span<const Overlay> overlays) {
  cv::Mat bgr = to_bgr(frame);
  for (const Overlay& o : overlays) {
    const auto m = affine_matrix(o.state);
    std::vector<cv::Point> quad;
    for (auto [u, v] : {std::pair{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}) {
      quad.emplace_back(cvRound(o.state.tx + m[0] * u + m[1] * v), cvRound(o.state.ty + m[2] * u + m[3] * v));
    }
    cv::polylines(bgr, quad, true, cv::Scalar(o.b, o.g, o.r), 2);
  }
  write_png(file, bgr);
}

}  // namespace sht::bench
