#include "pbrl/artifacts.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace pbrl {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void write_metadata(std::ofstream& out, const RunConfig& cfg) {
  out << "# agent=" << (cfg.agent == AgentKind::kPbrl ? "pbrl" : "qlearning") << '\n';
  out << "# source=" << cfg.source.to_string() << '\n';
  out << "# stride=" << cfg.stride << '\n';
  out << "# rounds=" << cfg.rounds << '\n';
  out << "# episodes=" << cfg.episodes << '\n';
  out << "# base_seed=" << cfg.base_seed << '\n';
  if (cfg.agent == AgentKind::kPbrl) {
    out << "# params=delta_th:" << cfg.pbrl.delta_th << ",a0:" << cfg.pbrl.a0
        << ",gamma:" << cfg.pbrl.gamma << '\n';
  } else {
    out << "# params=r_penalty:" << cfg.q.r_penalty << ",gamma:" << cfg.q.gamma
        << ",alpha:" << cfg.q.alpha << ",epsilon0:" << cfg.q.epsilon0 << '\n';
  }
}

}  // namespace

ArtifactPaths write_simulation_artifacts(const RunConfig& config, const ExperimentCurves& curves,
                                         const std::string& dir) {
  std::filesystem::create_directories(dir);
  ArtifactPaths paths;
  paths.success_curve = dir + "/success_curve.csv";
  paths.variety = dir + "/variety.csv";
  paths.fom = dir + "/fom.txt";
  paths.manifest = dir + "/manifest.cfg";

  {
    auto out = open_out(paths.success_curve);
    write_metadata(out, config);
    out << "episode,mean_steps\n";
    for (std::size_t e = 0; e < curves.mean_success.size(); ++e) {
      out << (e + 1) << ',' << fixed6(curves.mean_success[e]) << '\n';
    }
  }
  {
    auto out = open_out(paths.variety);
    write_metadata(out, config);
    out << "window_start_episode,mean_distinct_states\n";
    for (std::size_t w = 0; w < curves.mean_variety.size(); ++w) {
      out << (w * kWindowEpisodes + 1) << ',' << fixed6(curves.mean_variety[w]) << '\n';
    }
  }
  {
    auto out = open_out(paths.fom);
    out << curves.fom << '\n';
  }
  {
    auto out = open_out(paths.manifest);
    out << serialize_config(config);
  }
  return paths;
}

void write_autocorr_csv(const AutocorrelationProfile& profile, const std::string& path) {
  auto out = open_out(path);
  out << "lag,rho\n";
  for (std::size_t i = 0; i < profile.lags.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.8f", profile.rho[i]);
    out << profile.lags[i] << ',' << buf << '\n';
  }
}

}  // namespace pbrl
