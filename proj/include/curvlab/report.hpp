#pragma once

// Whole-tensor analysis bundled for presentation.  analyze() runs the
// residuals, constancy sweeps, the model fit and every per-tensor verifier
// in one deterministic pass; report_to_json() is the canonical serialization
// and render_report_text() walks that same JSON, so the text and JSON views
// of a report always show identical numbers.

#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvlab/curvature.hpp"
#include "curvlab/verifiers.hpp"

namespace curvlab {

struct AnalyzeOptions {
  double tol = 1e-8;          // relative threshold fed to the verifiers
  int samples = 200;          // random planes / trials per check
  std::uint64_t seed = 0;
};

struct Report {
  std::string input;  // label for the analyzed tensor (usually a file path)
  int dim = 0;
  double norm = 0.0;
  AnalyzeOptions options;
  SymmetryResiduals residuals;
  double rk = 0.0;
  ConstancySummary holomorphic;
  ConstancySummary antiholomorphic;
  ModelParameters fit;
  std::vector<VerifierVerdict> verdicts;
};

inline Report analyze(const CurvatureTensor& R, const AnalyzeOptions& options,
                      std::string input_label = "<memory>") {
  if (options.tol <= 0.0) throw std::invalid_argument("analyze: tol must be > 0");
  if (options.samples < 1) throw std::invalid_argument("analyze: samples must be >= 1");

  Report rep;
  rep.input = std::move(input_label);
  rep.dim = R.dim();
  rep.norm = R.norm();
  rep.options = options;
  rep.residuals = R.symmetry_residuals();
  rep.rk = rk_defect(R);

  std::mt19937_64 rng(options.seed);
  rep.holomorphic =
      constancy_report(R, PlaneFamily::holomorphic, options.samples, rng());
  rep.antiholomorphic =
      constancy_report(R, PlaneFamily::antiholomorphic, options.samples, rng());
  rep.fit = fit_model(R);

  rep.verdicts.push_back(check_j_invariance(R, options.tol));
  rep.verdicts.push_back(
      check_constant_holomorphic(R, options.samples, rng(), options.tol));
  rep.verdicts.push_back(
      check_model_membership(R, options.samples, rng(), options.tol));
  rep.verdicts.push_back(
      verify_identity_suite(R, options.samples, rng(), options.tol));
  return rep;
}

inline nlohmann::json verdict_to_json(const VerifierVerdict& v) {
  nlohmann::json j;
  j["name"] = v.name;
  j["holds"] = v.holds;
  j["numeric"] = v.numeric;
  j["witnesses"] = v.witnesses;
  j["notes"] = v.notes;
  return j;
}

inline nlohmann::json report_to_json(const Report& rep) {
  nlohmann::json j;
  j["input"] = {{"path", rep.input},
                {"dim", rep.dim},
                {"m", rep.dim / 2},
                {"norm", rep.norm},
                {"tol", rep.options.tol},
                {"samples", rep.options.samples},
                {"seed", rep.options.seed}};
  j["residuals"] = {{"antisymmetry_first_pair", rep.residuals.antisym_first},
                    {"first_bianchi", rep.residuals.bianchi},
                    {"antisymmetry_second_pair", rep.residuals.antisym_second},
                    {"pair_symmetry", rep.residuals.pair_symmetry}};
  j["rk_defect"] = rep.rk;
  j["constancy"] = {{"holomorphic",
                     {{"mean", rep.holomorphic.mean},
                      {"max_deviation", rep.holomorphic.max_deviation},
                      {"planes", rep.holomorphic.plane_count}}},
                    {"antiholomorphic",
                     {{"mean", rep.antiholomorphic.mean},
                      {"max_deviation", rep.antiholomorphic.max_deviation},
                      {"planes", rep.antiholomorphic.plane_count}}}};
  j["fit"] = {{"K", rep.fit.K}, {"c", rep.fit.c}, {"residual", rep.fit.residual}};
  nlohmann::json verdicts = nlohmann::json::array();
  for (const VerifierVerdict& v : rep.verdicts) verdicts.push_back(verdict_to_json(v));
  j["verdicts"] = std::move(verdicts);
  return j;
}

namespace detail {

// dump() of a scalar JSON value prints exactly what the serialized document
// contains, which is what keeps the text view numerically identical to the
// JSON view.
inline std::string scalar(const nlohmann::json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace detail

inline std::string render_report_text(const nlohmann::json& j) {
  using detail::scalar;
  std::ostringstream out;
  const nlohmann::json& in = j.at("input");
  out << "input: " << scalar(in.at("path")) << " (dim " << scalar(in.at("dim"))
      << ", m " << scalar(in.at("m")) << ")\n";
  out << "norm: " << scalar(in.at("norm")) << "\n";
  out << "options: tol " << scalar(in.at("tol")) << ", samples "
      << scalar(in.at("samples")) << ", seed " << scalar(in.at("seed")) << "\n";

  out << "residuals:\n";
  const nlohmann::json& res = j.at("residuals");
  for (const char* key : {"antisymmetry_first_pair", "first_bianchi",
                          "antisymmetry_second_pair", "pair_symmetry"})
    out << "  " << key << ": " << scalar(res.at(key)) << "\n";
  out << "rk_defect: " << scalar(j.at("rk_defect")) << "\n";

  out << "constancy:\n";
  for (const char* family : {"holomorphic", "antiholomorphic"}) {
    const nlohmann::json& c = j.at("constancy").at(family);
    out << "  " << family << ": mean " << scalar(c.at("mean")) << ", max deviation "
        << scalar(c.at("max_deviation")) << " (" << scalar(c.at("planes"))
        << " planes)\n";
  }
  const nlohmann::json& fit = j.at("fit");
  out << "fit: K " << scalar(fit.at("K")) << ", c " << scalar(fit.at("c"))
      << " (residual " << scalar(fit.at("residual")) << ")\n";

  out << "verdicts:\n";
  for (const nlohmann::json& v : j.at("verdicts")) {
    out << "  [" << (v.at("holds").get<bool>() ? "pass" : "fail") << "] "
        << scalar(v.at("name")) << "\n";
    for (const auto& [key, value] : v.at("numeric").items())
      out << "      " << key << ": " << scalar(value) << "\n";
    for (const auto& [key, value] : v.at("notes").items())
      out << "      " << key << ": " << scalar(value) << "\n";
    for (const nlohmann::json& w : v.at("witnesses"))
      out << "      witness: " << scalar(w) << "\n";
  }
  return out.str();
}

inline std::string render_report_text(const Report& rep) {
  return render_report_text(report_to_json(rep));
}

}  // namespace curvlab
