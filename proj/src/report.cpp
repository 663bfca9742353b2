#include "igac/report.hpp"

#include <cmath>

#include "igac/io.hpp"

namespace igac {

const char* kToolVersion = "0.1.0";

std::string verdict_of(const std::optional<ExponentFit>& fit,
                       const std::optional<GrowthClassification>& cls) {
  if (!fit || !cls) return "inconclusive";

  const bool stretching =
      fit->exponent > 0.0 && fit->r2 >= kVerdictJacobiR2 && fit->exponential_model;
  const bool no_stretching = std::abs(fit->exponent) <= kVerdictLambdaZero ||
                             fit->r2 < kVerdictExpFitFloor ||
                             !fit->exponential_model;

  if (stretching && cls->cls == GrowthClass::Linear) return "chaotic";
  if (no_stretching && cls->cls == GrowthClass::Logarithmic) return "regular";
  return "inconclusive";
}

ChaosReport chaos_report(const std::string& manifold,
                         const std::optional<CurvatureSummary>& curvature,
                         const std::optional<JacobiSummary>& jacobi,
                         const std::optional<IgeSummary>& ige,
                         bool ensemble_folding, uint64_t seed) {
  uint64_t hash = 0;
  bool have_hash = false;
  auto take_hash = [&](uint64_t h) {
    if (!have_hash) {
      hash = h;
      have_hash = true;
    } else if (h != hash) {
      throw ValidationError(
          "chaos_report: inputs come from different experiments "
          "(config hashes disagree)");
    }
  };
  if (curvature) take_hash(curvature->config_hash);
  if (jacobi) take_hash(jacobi->config_hash);
  if (ige) take_hash(ige->config_hash);

  ChaosReport r;
  r.manifold = manifold;
  r.curvature = curvature;
  if (jacobi) r.jacobi_fit = jacobi->fit;
  if (ige) r.ige = ige->classification;
  r.verdict = verdict_of(r.jacobi_fit, r.ige);
  if (ensemble_folding)
    r.folding_note =
        "trajectory folding is supplied statistically by averaging over the "
        "frequency spectrum";
  r.config_hash = hash;
  r.seed = seed;
  r.version = kToolVersion;
  return r;
}

std::string report_to_json(const ChaosReport& r) {
  JsonWriter w;
  w.begin_object();
  w.field("manifold", r.manifold);
  if (r.curvature) {
    w.begin_object("scalar_curvature");
    w.field("min", r.curvature->scalar_min);
    w.field("max", r.curvature->scalar_max);
    w.field("samples", r.curvature->samples);
    w.field("sign", r.curvature->sign());
    w.end_object();
  }
  if (r.jacobi_fit) {
    w.begin_object("jacobi");
    w.field("lambda", r.jacobi_fit->exponent);
    w.field("raw_slope", r.jacobi_fit->raw_slope);
    w.field("r2", r.jacobi_fit->r2);
    w.field("exponential_model", r.jacobi_fit->exponential_model);
    w.field("window", std::vector<double>{r.jacobi_fit->window_lo,
                                          r.jacobi_fit->window_hi});
    w.end_object();
  }
  if (r.ige) {
    w.begin_object("ige");
    w.field("class", std::string(to_string(r.ige->cls)));
    w.field("rate", r.ige->rate);
    w.field("r2_linear", r.ige->r2_linear);
    w.field("r2_log", r.ige->r2_log);
    w.field("window", std::vector<double>{r.ige->window_lo, r.ige->window_hi});
    w.end_object();
  }
  w.field("verdict", r.verdict);
  if (!r.folding_note.empty()) w.field("folding_note", r.folding_note);
  w.begin_object("provenance");
  w.field("config_hash", hex64(r.config_hash));
  w.field("seed", r.seed);
  w.field("version", r.version);
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

}  // namespace igac
