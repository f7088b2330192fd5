#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sht/bench/config_json.hpp"
#include "sht/bench/metrics.hpp"
#include "sht/bench/runner.hpp"
#include "sht/bench/sequence.hpp"
#include "sht/bench/synth.hpp"
#include "sht/refinement.hpp"
#include "sht/saliency.hpp"
#include "sht/tracker.hpp"

namespace py = pybind11;
using namespace sht;

namespace {

using Pixels = py::array_t<double, py::array::c_style | py::array::forcecast>;

// (H, W, 3) floats in [0, 1] or uint8.
RgbFrame to_frame(const py::array& image) {
  if (image.ndim() != 3 || image.shape(2) != 3) throw std::invalid_argument("frame must have shape (H, W, 3)");
  const int h = static_cast<int>(image.shape(0));
  const int w = static_cast<int>(image.shape(1));
  if (py::isinstance<py::array_t<std::uint8_t>>(image)) {
    const auto bytes = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>::ensure(image);
    return RgbFrame::from_bytes(w, h, {bytes.data(), static_cast<std::size_t>(bytes.size())});
  }
  const Pixels px = Pixels::ensure(image);
  return RgbFrame(w, h, std::vector<double>(px.data(), px.data() + px.size()));
}

Pixels from_frame(const RgbFrame& f) {
  Pixels out({f.height(), f.width(), 3});
  std::copy(f.data().begin(), f.data().end(), out.mutable_data());
  return out;
}

py::tuple box_tuple(const Box& b) { return py::make_tuple(b.x, b.y, b.w, b.h); }

Box to_box(const py::sequence& s) {
  if (py::len(s) != 4) throw std::invalid_argument("box must be (x, y, w, h)");
  return {s[0].cast<double>(), s[1].cast<double>(), s[2].cast<double>(), s[3].cast<double>()};
}

TrackerConfig to_config(const py::object& cfg) {
  if (cfg.is_none()) return {};
  const py::module_ json = py::module_::import("json");
  return bench::config_from_json(json.attr("dumps")(cfg).cast<std::string>());
}

py::dict config_dict(const TrackerConfig& c) {
  return py::module_::import("json").attr("loads")(bench::config_to_json(c));
}

py::dict state_dict(const AffineState& s) {
  py::dict d;
  d["tx"] = s.tx;
  d["ty"] = s.ty;
  d["rotation"] = s.rotation;
  d["scale"] = s.scale;
  d["aspect"] = s.aspect;
  d["skew"] = s.skew;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sht, m) {
  m.doc() = "Saliency guided hierarchical tracker";

  m.def("default_config", [] { return config_dict(TrackerConfig{}); }, "Every tracker setting with its default.");
  m.def(
      "validate_config", [](const py::object& cfg) { return config_dict(to_config(cfg)); }, py::arg("config"),
      "Fill in defaults and validate; raises on unknown keys or bad values.");

  py::class_<Tracker>(m, "Tracker")
      .def(py::init([](const py::array& frame, const py::sequence& box, const py::object& config) {
             return Tracker(to_frame(frame), to_box(box), to_config(config));
           }),
           py::arg("frame"), py::arg("box"), py::arg("config") = py::none())
      .def(
          "step",
          [](Tracker& t, const py::array& frame) {
            const RgbFrame f = to_frame(frame);
            StepResult r;
            {
              py::gil_scoped_release release;
              r = t.step(f);
            }
            py::dict d;
            d["box"] = box_tuple(r.box);
            d["state"] = state_dict(r.estimate);
            d["mode"] = std::string(to_string(r.diagnostics.mode));
            d["confidence"] = r.diagnostics.confidence;
            d["global_confidence"] = r.diagnostics.global_confidence;
            d["regions"] = r.diagnostics.regions;
            d["weights_updated"] = r.diagnostics.weights_updated;
            return d;
          },
          py::arg("frame"), "Track one frame and return the estimate with diagnostics.")
      .def_property_readonly("state", [](const Tracker& t) { return state_dict(t.state().estimate); })
      .def_property_readonly("saliency_weights",
                             [](const Tracker& t) { return Eigen::VectorXd(t.state().weights); });

  m.def("overlap_rate", [](const py::sequence& a, const py::sequence& b) { return bench::overlap_rate(to_box(a), to_box(b)); });
  m.def("center_error", [](const py::sequence& a, const py::sequence& b) { return bench::center_error(to_box(a), to_box(b)); });
  m.def(
      "success_curve",
      [](const std::vector<double>& overlaps) {
        const auto c = bench::success_curve(overlaps);
        return py::make_tuple(std::vector<double>(c.thresholds.begin(), c.thresholds.end()),
                              std::vector<double>(c.rates.begin(), c.rates.end()));
      },
      py::arg("overlaps"), "Thresholds 0, 0.1, ..., 1 and the fraction of overlaps at or above each.");

  m.def(
      "refine",
      [](const Eigen::MatrixXd& candidates, const Eigen::MatrixXd& basis, const Eigen::VectorXd& alpha0, double kappa,
         int max_iter, double tol) {
        const auto s = refine::refine(candidates, basis, alpha0, {kappa, max_iter, tol});
        py::dict d;
        d["alpha"] = s.alpha;
        d["beta"] = s.beta;
        d["iterations"] = s.iterations;
        d["objective_trace"] = s.objective_trace;
        d["regularized"] = s.regularized;
        return d;
      },
      py::arg("candidates"), py::arg("basis"), py::arg("alpha0"), py::arg("kappa") = 0.005, py::arg("max_iter") = 10,
      py::arg("tol") = 1e-6);

  m.def(
      "connected_regions",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& mask, int min_area) {
        if (mask.ndim() != 2) throw std::invalid_argument("mask must be 2-D");
        BinaryMap b(static_cast<int>(mask.shape(1)), static_cast<int>(mask.shape(0)));
        for (std::size_t i = 0; i < b.data.size(); ++i) b.data[i] = mask.data()[i] ? 1 : 0;
        py::list out;
        for (const auto& r : saliency::connected_regions(b, min_area)) {
          py::dict d;
          d["label"] = r.label;
          d["area"] = r.area;
          d["center"] = py::make_tuple(r.center.x, r.center.y);
          d["bbox"] = py::make_tuple(r.min_x, r.min_y, r.max_x, r.max_y);
          out.append(d);
        }
        return out;
      },
      py::arg("mask"), py::arg("min_area") = 1, "8-connected regions with at least min_area pixels.");

  m.def(
      "render_synthetic",
      [](const std::string& scenario, int frames, int width, int height, double target_size, std::uint64_t seed) {
        bench::SynthOptions o;
        o.scenario = bench::parse_scenario(scenario);
        o.frames = frames;
        o.width = width;
        o.height = height;
        o.target_size = target_size;
        o.seed = seed;
        const auto s = bench::render_sequence(o);
        py::list imgs, boxes;
        for (const auto& f : s.frames) imgs.append(from_frame(f));
        for (const auto& b : s.groundtruth) boxes.append(box_tuple(b));
        return py::make_tuple(imgs, boxes);
      },
      py::arg("scenario"), py::arg("frames") = 200, py::arg("width") = 640, py::arg("height") = 360,
      py::arg("target_size") = 40.0, py::arg("seed") = 1, "Frames as (H, W, 3) float arrays and the groundtruth boxes.");

  m.def(
      "track_directory",
      [](const std::filesystem::path& seq, const std::filesystem::path& out, const py::object& config) {
        const auto cfg = to_config(config);
        const auto spec = bench::load_sequence(seq);
        bench::TrackRun run;
        {
          py::gil_scoped_release release;
          run = bench::track_sequence(spec, cfg, out);
        }
        return py::make_tuple(run.metrics.average_overlap, run.metrics.average_center_error);
      },
      py::arg("sequence"), py::arg("out"), py::arg("config") = py::none(),
      "Track an OTB-layout directory, write results.csv and metrics.json, return (overlap, center error).");
}
