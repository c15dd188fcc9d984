#include "pbrl/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pbrl {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw std::invalid_argument("config key '" + key + "': " + why);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    bad_key(key, "expected a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    bad_key(key, "expected an integer, got '" + value + "'");
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SourceSpec SourceSpec::parse(const std::string& text) {
  const std::string s = trim(text);
  SourceSpec spec;
  if (s == "uniform") {
    spec.kind = SourceKind::kUniform;
  } else if (s == "normal") {
    spec.kind = SourceKind::kNormal;
  } else if (s == "synthetic-chaos") {
    spec.kind = SourceKind::kSyntheticChaos;
  } else if (s.rfind("chaos-file:", 0) == 0) {
    spec.kind = SourceKind::kChaosFile;
    spec.path = trim(s.substr(std::string("chaos-file:").size()));
    if (spec.path.empty()) throw std::invalid_argument("chaos-file source needs a path");
  } else if (s.rfind("surrogate-of:", 0) == 0) {
    spec.kind = SourceKind::kSurrogate;
    spec.inner = std::make_shared<SourceSpec>(
        SourceSpec::parse(s.substr(std::string("surrogate-of:").size())));
  } else {
    throw std::invalid_argument("unknown source spec '" + s + "'");
  }
  return spec;
}

std::string SourceSpec::to_string() const {
  switch (kind) {
    case SourceKind::kUniform:
      return "uniform";
    case SourceKind::kNormal:
      return "normal";
    case SourceKind::kSyntheticChaos:
      return "synthetic-chaos";
    case SourceKind::kChaosFile:
      return "chaos-file:" + path;
    case SourceKind::kSurrogate:
      return "surrogate-of:" + (inner ? inner->to_string() : std::string("?"));
  }
  return "?";
}

bool SourceSpec::series_backed() const {
  return kind == SourceKind::kChaosFile || kind == SourceKind::kSyntheticChaos ||
         kind == SourceKind::kSurrogate;
}

KeyValueMap parse_config_text(std::istream& in) {
  KeyValueMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string entry = trim(line);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    }
    map[key] = value;
  }
  return map;
}

KeyValueMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return parse_config_text(in);
}

PbrlParams default_pbrl_params(const SourceSpec& source) {
  PbrlParams p;
  p.gamma = 0.6774;
  switch (source.kind) {
    case SourceKind::kChaosFile:
    case SourceKind::kSyntheticChaos:
    case SourceKind::kSurrogate:
      p.delta_th = 1.767;
      p.a0 = 301.3;
      break;
    case SourceKind::kNormal:
      p.delta_th = 2.151;
      p.a0 = 366.8;
      break;
    case SourceKind::kUniform:
      p.delta_th = 4.881;
      p.a0 = 832.5;
      break;
  }
  return p;
}

RunConfig resolve_config(const KeyValueMap& overrides) {
  RunConfig cfg;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"agent",
       [&](const std::string& k, const std::string& v) {
         if (v == "pbrl") {
           cfg.agent = AgentKind::kPbrl;
         } else if (v == "qlearning") {
           cfg.agent = AgentKind::kQLearning;
         } else {
           bad_key(k, "expected 'pbrl' or 'qlearning', got '" + v + "'");
         }
       }},
      {"source",
       [&](const std::string& k, const std::string& v) {
         try {
           cfg.source = SourceSpec::parse(v);
         } catch (const std::exception& e) {
           bad_key(k, e.what());
         }
       }},
      {"stride",
       [&](const std::string& k, const std::string& v) {
         cfg.stride = static_cast<int>(parse_int(k, v));
         if (cfg.stride < 1) bad_key(k, "must be >= 1");
       }},
      {"rounds",
       [&](const std::string& k, const std::string& v) {
         cfg.rounds = static_cast<int>(parse_int(k, v));
         if (cfg.rounds < 1) bad_key(k, "must be >= 1");
       }},
      {"episodes",
       [&](const std::string& k, const std::string& v) {
         cfg.episodes = static_cast<int>(parse_int(k, v));
         if (cfg.episodes < 1) bad_key(k, "must be >= 1");
       }},
      {"max_steps",
       [&](const std::string& k, const std::string& v) {
         cfg.max_steps = static_cast<int>(parse_int(k, v));
         if (cfg.max_steps < 1) bad_key(k, "must be >= 1");
       }},
      {"base_seed",
       [&](const std::string& k, const std::string& v) {
         cfg.base_seed = static_cast<std::uint64_t>(parse_int(k, v));
       }},
      {"jobs",
       [&](const std::string& k, const std::string& v) {
         cfg.jobs = static_cast<int>(parse_int(k, v));
         if (cfg.jobs < 0) bad_key(k, "must be >= 0");
       }},
      {"out_dir", [&](const std::string&, const std::string& v) { cfg.out_dir = v; }},
      {"series_length",
       [&](const std::string& k, const std::string& v) {
         const long long n = parse_int(k, v);
         if (n < 2) bad_key(k, "must be >= 2");
         cfg.series_length = static_cast<std::size_t>(n);
       }},
      {"chaos_lag",
       [&](const std::string& k, const std::string& v) {
         cfg.chaos_lag = static_cast<int>(parse_int(k, v));
         if (cfg.chaos_lag < 1) bad_key(k, "must be >= 1");
       }},
      {"normal_sigma",
       [&](const std::string& k, const std::string& v) {
         cfg.normal_sigma = parse_double(k, v);
         if (!(cfg.normal_sigma > 0)) bad_key(k, "must be > 0");
       }},
      {"base_period_ps",
       [&](const std::string& k, const std::string& v) {
         cfg.base_period_ps = parse_double(k, v);
         if (!(cfg.base_period_ps > 0)) bad_key(k, "must be > 0");
       }},
      {"delta_th",
       [&](const std::string& k, const std::string& v) {
         cfg.pbrl.delta_th = parse_double(k, v);
         if (!(cfg.pbrl.delta_th > 0)) bad_key(k, "must be > 0");
       }},
      {"a0",
       [&](const std::string& k, const std::string& v) {
         cfg.pbrl.a0 = parse_double(k, v);
         if (!(cfg.pbrl.a0 > 0)) bad_key(k, "must be > 0");
       }},
      {"pbrl_gamma",
       [&](const std::string& k, const std::string& v) {
         cfg.pbrl.gamma = parse_double(k, v);
         if (!(cfg.pbrl.gamma > 0 && cfg.pbrl.gamma < 1)) bad_key(k, "must be in (0, 1)");
       }},
      {"r_penalty",
       [&](const std::string& k, const std::string& v) {
         cfg.q.r_penalty = parse_double(k, v);
         if (!(cfg.q.r_penalty > 0)) bad_key(k, "must be > 0");
       }},
      {"q_gamma",
       [&](const std::string& k, const std::string& v) {
         cfg.q.gamma = parse_double(k, v);
         if (!(cfg.q.gamma > 0 && cfg.q.gamma < 1)) bad_key(k, "must be in (0, 1)");
       }},
      {"alpha",
       [&](const std::string& k, const std::string& v) {
         cfg.q.alpha = parse_double(k, v);
         if (!(cfg.q.alpha > 0 && cfg.q.alpha < 1)) bad_key(k, "must be in (0, 1)");
       }},
      {"epsilon0",
       [&](const std::string& k, const std::string& v) {
         cfg.q.epsilon0 = parse_double(k, v);
         if (cfg.q.epsilon0 < 0 || cfg.q.epsilon0 >= 1) bad_key(k, "must be in [0, 1)");
       }},
      {"penalty_cutoff_step",
       [&](const std::string& k, const std::string& v) {
         cfg.q.penalty_cutoff_step = static_cast<int>(parse_int(k, v));
         if (cfg.q.penalty_cutoff_step < 1) bad_key(k, "must be >= 1");
       }},
      {"fom_threshold",
       [&](const std::string& k, const std::string& v) {
         cfg.fom_threshold = static_cast<int>(parse_int(k, v));
         if (cfg.fom_threshold < 1) bad_key(k, "must be >= 1");
       }},
      {"gravity",
       [&](const std::string& k, const std::string& v) { cfg.env.gravity = parse_double(k, v); }},
      {"mass_cart",
       [&](const std::string& k, const std::string& v) {
         cfg.env.mass_cart = parse_double(k, v);
         if (!(cfg.env.mass_cart > 0)) bad_key(k, "must be > 0");
       }},
      {"mass_pole",
       [&](const std::string& k, const std::string& v) {
         cfg.env.mass_pole = parse_double(k, v);
         if (!(cfg.env.mass_pole > 0)) bad_key(k, "must be > 0");
       }},
      {"pole_half_length",
       [&](const std::string& k, const std::string& v) {
         cfg.env.pole_half_length = parse_double(k, v);
         if (!(cfg.env.pole_half_length > 0)) bad_key(k, "must be > 0");
       }},
      {"force_mag",
       [&](const std::string& k, const std::string& v) {
         cfg.env.force_mag = parse_double(k, v);
         if (cfg.env.force_mag < 0) bad_key(k, "must be >= 0");
       }},
      {"tau",
       [&](const std::string& k, const std::string& v) {
         cfg.env.tau = parse_double(k, v);
         if (!(cfg.env.tau > 0)) bad_key(k, "must be > 0");
       }},
      {"x_limit",
       [&](const std::string& k, const std::string& v) {
         cfg.env.x_limit = parse_double(k, v);
         if (!(cfg.env.x_limit > 0)) bad_key(k, "must be > 0");
       }},
      {"theta_limit",
       [&](const std::string& k, const std::string& v) {
         cfg.env.theta_limit = parse_double(k, v);
         if (!(cfg.env.theta_limit > 0)) bad_key(k, "must be > 0");
       }},
      {"x_range",
       [&](const std::string& k, const std::string& v) {
         cfg.env.x_range = parse_double(k, v);
         if (!(cfg.env.x_range > 0)) bad_key(k, "must be > 0");
       }},
      {"x_dot_range",
       [&](const std::string& k, const std::string& v) {
         cfg.env.x_dot_range = parse_double(k, v);
         if (!(cfg.env.x_dot_range > 0)) bad_key(k, "must be > 0");
       }},
      {"theta_range",
       [&](const std::string& k, const std::string& v) {
         cfg.env.theta_range = parse_double(k, v);
         if (!(cfg.env.theta_range > 0)) bad_key(k, "must be > 0");
       }},
      {"theta_dot_range",
       [&](const std::string& k, const std::string& v) {
         cfg.env.theta_dot_range = parse_double(k, v);
         if (!(cfg.env.theta_dot_range > 0)) bad_key(k, "must be > 0");
       }},
  };

  // Apply `source` first so per-source parameter defaults resolve before any
  // explicit delta_th/a0/pbrl_gamma override lands on top.
  if (auto it = overrides.find("source"); it != overrides.end()) {
    setters.at("source")(it->first, it->second);
  }
  cfg.pbrl = default_pbrl_params(cfg.source);

  for (const auto& [key, value] : overrides) {
    if (key == "source") continue;
    const auto it = setters.find(key);
    if (it == setters.end()) bad_key(key, "unknown key");
    it->second(key, value);
  }
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "agent = " << (cfg.agent == AgentKind::kPbrl ? "pbrl" : "qlearning") << '\n';
  out << "source = " << cfg.source.to_string() << '\n';
  out << "stride = " << cfg.stride << '\n';
  out << "rounds = " << cfg.rounds << '\n';
  out << "episodes = " << cfg.episodes << '\n';
  out << "max_steps = " << cfg.max_steps << '\n';
  out << "base_seed = " << cfg.base_seed << '\n';
  out << "jobs = " << cfg.jobs << '\n';
  out << "out_dir = " << cfg.out_dir << '\n';
  out << "series_length = " << cfg.series_length << '\n';
  out << "chaos_lag = " << cfg.chaos_lag << '\n';
  out << "normal_sigma = " << format_double(cfg.normal_sigma) << '\n';
  out << "base_period_ps = " << format_double(cfg.base_period_ps) << '\n';
  out << "delta_th = " << format_double(cfg.pbrl.delta_th) << '\n';
  out << "a0 = " << format_double(cfg.pbrl.a0) << '\n';
  out << "pbrl_gamma = " << format_double(cfg.pbrl.gamma) << '\n';
  out << "r_penalty = " << format_double(cfg.q.r_penalty) << '\n';
  out << "q_gamma = " << format_double(cfg.q.gamma) << '\n';
  out << "alpha = " << format_double(cfg.q.alpha) << '\n';
  out << "epsilon0 = " << format_double(cfg.q.epsilon0) << '\n';
  out << "penalty_cutoff_step = " << cfg.q.penalty_cutoff_step << '\n';
  out << "fom_threshold = " << cfg.fom_threshold << '\n';
  out << "gravity = " << format_double(cfg.env.gravity) << '\n';
  out << "mass_cart = " << format_double(cfg.env.mass_cart) << '\n';
  out << "mass_pole = " << format_double(cfg.env.mass_pole) << '\n';
  out << "pole_half_length = " << format_double(cfg.env.pole_half_length) << '\n';
  out << "force_mag = " << format_double(cfg.env.force_mag) << '\n';
  out << "tau = " << format_double(cfg.env.tau) << '\n';
  out << "x_limit = " << format_double(cfg.env.x_limit) << '\n';
  out << "theta_limit = " << format_double(cfg.env.theta_limit) << '\n';
  out << "x_range = " << format_double(cfg.env.x_range) << '\n';
  out << "x_dot_range = " << format_double(cfg.env.x_dot_range) << '\n';
  out << "theta_range = " << format_double(cfg.env.theta_range) << '\n';
  out << "theta_dot_range = " << format_double(cfg.env.theta_dot_range) << '\n';
  return out.str();
}

}  // namespace pbrl
