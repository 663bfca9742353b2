#pragma once

#include <string>

#include "igac/config.hpp"
#include "igac/report.hpp"

namespace igac {

/// Runs the enabled analyses in order (curvature -> geodesic -> jacobi ->
/// ige), writes the artifact files into the output directory, and returns
/// the aggregated report.
///
/// Artifacts (subject to the configured formats):
///   geodesic.csv    tau,theta_1..theta_n,thetadot_1..thetadot_n,norm_drift
///   jacobi.csv      tau,intensity
///   ige_series.csv  tau,weight,V,S
///   report.json     indicators, verdict, provenance
///   run_manifest.json  config copy, seed, version
ChaosReport run_experiment(const ExperimentConfig& cfg,
                           const std::string& output_dir_override = "");

}  // namespace igac
