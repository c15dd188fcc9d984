#pragma once

#include <string>

#include "pbrl/config.hpp"
#include "pbrl/harness.hpp"
#include "pbrl/series.hpp"

namespace pbrl {

struct ArtifactPaths {
  std::string success_curve;
  std::string variety;
  std::string fom;
  std::string manifest;
};

/// Writes success_curve.csv, variety.csv, fom.txt and manifest.cfg into
/// `dir` (created if missing). Output depends only on (config, curves), so
/// replaying a manifest reproduces the files byte-identically.
ArtifactPaths write_simulation_artifacts(const RunConfig& config, const ExperimentCurves& curves,
                                         const std::string& dir);

/// `lag,rho` rows for lags 1..max_lag.
void write_autocorr_csv(const AutocorrelationProfile& profile, const std::string& path);

}  // namespace pbrl
