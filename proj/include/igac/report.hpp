#pragma once

#include <optional>
#include <string>

#include "igac/ige.hpp"
#include "igac/jacobi.hpp"

namespace igac {

/// Scalar curvature sampled over the run (a single value for the built-ins,
/// which have constant scalar curvature).
struct CurvatureSummary {
  double scalar_min = 0.0;
  double scalar_max = 0.0;
  int samples = 0;
  uint64_t config_hash = 0;

  int sign() const {
    if (scalar_max < -1e-9) return -1;
    if (scalar_min > 1e-9) return 1;
    return 0;
  }
};

struct JacobiSummary {
  ExponentFit fit;
  uint64_t config_hash = 0;
};

struct IgeSummary {
  GrowthClassification classification;
  uint64_t config_hash = 0;
};

/// Aggregated chaoticity indicators and the verdict. The verdict couples
/// stretching (positive Jacobi exponent) with the entropy-growth class;
/// curvature sign is reported as supporting evidence only.
struct ChaosReport {
  std::string manifold;
  std::optional<CurvatureSummary> curvature;
  std::optional<ExponentFit> jacobi_fit;
  std::optional<GrowthClassification> ige;
  std::string verdict;  // chaotic | regular | inconclusive
  std::string folding_note;
  uint64_t config_hash = 0;
  uint64_t seed = 0;
  std::string version;
};

/// Fixed thresholds of the verdict rule.
constexpr double kVerdictJacobiR2 = 0.98;
constexpr double kVerdictLambdaZero = 0.05;
constexpr double kVerdictExpFitFloor = 0.9;

/// Applies the verdict rule:
///   chaotic  <=> lambda_J > 0 with exponential fit r^2 >= 0.98
///                AND entropy growth LINEAR
///   regular  <=> (|lambda_J| <= 0.05 OR exponential fit r^2 < 0.9)
///                AND entropy growth LOGARITHMIC
///   inconclusive otherwise.
/// Every (fit, classification) pair maps to exactly one verdict.
std::string verdict_of(const std::optional<ExponentFit>& fit,
                       const std::optional<GrowthClassification>& cls);

/// Assembles the report from per-analysis summaries. Inputs carrying
/// different config hashes are rejected (mixed provenance).
ChaosReport chaos_report(const std::string& manifold,
                         const std::optional<CurvatureSummary>& curvature,
                         const std::optional<JacobiSummary>& jacobi,
                         const std::optional<IgeSummary>& ige,
                         bool ensemble_folding, uint64_t seed);

/// JSON form of the report (deterministic field order and formatting).
std::string report_to_json(const ChaosReport& r);

extern const char* kToolVersion;

}  // namespace igac
