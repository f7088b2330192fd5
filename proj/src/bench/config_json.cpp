#include "sht/bench/config_json.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sht::bench {

using nlohmann::json;

namespace {

// One reader and one writer per key; both close over the same field.
struct Field {
  std::function<void(const json&)> read;
  std::function<json()> write;
};

Field bool_field(bool& ref) {
  return {[&ref](const json& j) {
            if (!j.is_boolean()) throw std::runtime_error("expected a boolean");
            ref = j.get<bool>();
          },
          [&ref] { return json(ref); }};
}

Field int_field(int& ref) {
  return {[&ref](const json& j) {
            if (!j.is_number_integer()) throw std::runtime_error("expected an integer");
            ref = j.get<int>();
          },
          [&ref] { return json(ref); }};
}

Field number_field(double& ref) {
  return {[&ref](const json& j) {
            if (!j.is_number()) throw std::runtime_error("expected a number");
            ref = j.get<double>();
          },
          [&ref] { return json(ref); }};
}

std::map<std::string, Field> fields(TrackerConfig& c) {
  std::map<std::string, Field> f;
  f["n_particles"] = int_field(c.n_particles);
  f["n_superpixel_candidates"] = int_field(c.n_superpixel_candidates);
  f["n_refine_candidates"] = int_field(c.n_refine_candidates);
  f["lambda_s"] = number_field(c.lambda_s);
  f["delta_s"] = number_field(c.delta_s);
  f["penalty_form"] = {[&c](const json& j) {
                         if (!j.is_string()) throw std::runtime_error("expected \"exponential\" or \"linear\"");
                         const auto s = j.get<std::string>();
                         if (s == "exponential") c.penalty_form = saliency::PenaltyForm::exponential;
                         else if (s == "linear") c.penalty_form = saliency::PenaltyForm::linear;
                         else throw std::runtime_error("expected \"exponential\" or \"linear\"");
                       },
                       [&c] {
                         return json(c.penalty_form == saliency::PenaltyForm::linear ? "linear" : "exponential");
                       }};
  f["delta_b"] = number_field(c.delta_b);
  f["sigma_s"] = int_field(c.sigma_s);
  f["skin"] = {[&c](const json& j) {
                 if (!j.is_object()) throw std::runtime_error("expected an object");
                 std::map<std::string, double*> sub{{"mean_r", &c.skin.mean_r},
                                                    {"mean_g", &c.skin.mean_g},
                                                    {"std_r", &c.skin.std_r},
                                                    {"std_g", &c.skin.std_g}};
                 for (const auto& [k, v] : j.items()) {
                   auto it = sub.find(k);
                   if (it == sub.end()) throw std::runtime_error("unknown key skin." + k);
                   if (!v.is_number()) throw std::runtime_error("skin." + k + " must be a number");
                   *it->second = v.get<double>();
                 }
               },
               [&c] {
                 return json{{"mean_r", c.skin.mean_r},
                             {"mean_g", c.skin.mean_g},
                             {"std_r", c.skin.std_r},
                             {"std_g", c.skin.std_g}};
               }};
  f["tau_c"] = number_field(c.tau_c);
  f["tau_c_bar"] = number_field(c.tau_c_bar);
  f["tau_cw"] = number_field(c.tau_cw);
  f["lambda"] = number_field(c.lambda);
  f["basis_lambda"] = number_field(c.basis_lambda);
  f["delta_c"] = number_field(c.delta_c);
  f["update_batch"] = int_field(c.update_batch);
  f["forgetting"] = number_field(c.forgetting);
  f["max_basis"] = int_field(c.max_basis);
  f["n_superpixels"] = int_field(c.n_superpixels);
  f["compactness"] = number_field(c.compactness);
  f["slic_iterations"] = int_field(c.slic_iterations);
  f["color_patch_side"] = int_field(c.color_patch_side);
  f["k_o"] = number_field(c.k_o);
  f["k_h"] = number_field(c.k_h);
  f["gamma"] = number_field(c.gamma);
  f["mu1"] = number_field(c.mu1);
  f["mu2"] = number_field(c.mu2);
  f["kappa"] = number_field(c.kappa);
  f["refine_max_iter"] = int_field(c.refine_max_iter);
  f["refine_tol"] = number_field(c.refine_tol);
  f["motion_sigma"] = {[&c](const json& j) {
                         if (!j.is_array() || j.size() != c.motion.sigma.size()) {
                           throw std::runtime_error("expected an array of 6 numbers");
                         }
                         for (std::size_t i = 0; i < j.size(); ++i) {
                           if (!j[i].is_number()) throw std::runtime_error("expected an array of 6 numbers");
                           c.motion.sigma[i] = j[i].get<double>();
                         }
                       },
                       [&c] { return json(c.motion.sigma); }};
  f["seed"] = {[&c](const json& j) {
                 if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
                   throw std::runtime_error("expected a non-negative integer");
                 }
                 c.seed = j.get<std::uint64_t>();
               },
               [&c] { return json(c.seed); }};
  f["disable_global"] = bool_field(c.disable_global);
  f["disable_superpixel"] = bool_field(c.disable_superpixel);
  f["disable_refinement"] = bool_field(c.disable_refinement);
  return f;
}

}  // namespace

TrackerConfig config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("config: top level must be a JSON object");
  TrackerConfig cfg;
  auto table = fields(cfg);
  for (const auto& [key, value] : doc.items()) {
    auto it = table.find(key);
    if (it == table.end()) throw std::runtime_error("config: unknown key '" + key + "'");
    try {
      it->second.read(value);
    } catch (const std::exception& e) {
      throw std::runtime_error("config: key '" + key + "': " + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
  return cfg;
}

TrackerConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("config: cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return config_from_json(ss.str());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(file.string() + ": " + e.what());
  }
}

std::string config_to_json(const TrackerConfig& config) {
  TrackerConfig copy = config;
  json out = json::object();
  for (const auto& [key, field] : fields(copy)) out[key] = field.write();
  return out.dump(2);
}

}  // namespace sht::bench
