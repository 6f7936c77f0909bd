#include "aggrnet/config.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace aggrnet {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(ctx + ": expected a number, got '" + v + "'");
  }
}

std::int64_t parse_int(const std::string& v, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    const long long i = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError(ctx + ": expected an integer, got '" + v + "'");
  }
}

std::vector<double> parse_list(const std::string& v, const std::string& ctx) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(item, ctx));
  }
  if (out.empty()) throw ConfigError(ctx + ": empty value list");
  return out;
}

Analysis parse_analysis(const std::string& name, const std::string& ctx) {
  if (name == "throughput") return Analysis::kThroughput;
  if (name == "stability") return Analysis::kStability;
  if (name == "delay-closed") return Analysis::kDelayClosed;
  if (name == "delay-bvp") return Analysis::kDelayBvp;
  if (name == "simulate") return Analysis::kSimulate;
  throw ConfigError(ctx + ": unknown analysis '" + name + "'");
}

}  // namespace

void apply_parameter(NetworkConfig* cfg, const std::string& parameter,
                     double value) {
  if (parameter == "t") {
    cfg->t1 = cfg->t2 = value;
  } else if (parameter == "t1") {
    cfg->t1 = value;
  } else if (parameter == "t2") {
    cfg->t2 = value;
  } else if (parameter == "alpha") {
    cfg->alpha1 = cfg->alpha2 = value;
  } else if (parameter == "gamma") {
    cfg->channel.sinr_threshold = value;
  } else if (parameter == "eta") {
    cfg->channel.noise_power = value;
  } else if (parameter == "m") {
    cfg->m1 = cfg->m2 = static_cast<int>(value);
  } else if (parameter == "lambda_scan") {
    // handled by scenarios, not a raw network parameter
  } else {
    throw ConfigError("unknown sweep parameter '" + parameter + "'");
  }
}

ExperimentSpec parse_config_text(const std::string& text,
                                 const std::string& origin) {
  ExperimentSpec spec;
  spec.analyses = {Analysis::kThroughput, Analysis::kStability};

  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  const std::set<std::string> sections{"network", "channel", "sweep", "sim"};

  while (std::getline(in, line)) {
    ++lineno;
    const std::string ctx = origin + ":" + std::to_string(lineno);
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(ctx + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!sections.count(section))
        throw ConfigError(ctx + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(ctx + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    const std::string kctx = ctx + " (" + key + ")";
    if (section.empty())
      throw ConfigError(ctx + ": key outside of any section");

    if (section == "network") {
      if (key == "m1") spec.network.m1 = static_cast<int>(parse_int(val, kctx));
      else if (key == "m2") spec.network.m2 = static_cast<int>(parse_int(val, kctx));
      else if (key == "t1") spec.network.t1 = parse_double(val, kctx);
      else if (key == "t2") spec.network.t2 = parse_double(val, kctx);
      else if (key == "t") spec.network.t1 = spec.network.t2 = parse_double(val, kctx);
      else if (key == "alpha1") spec.network.alpha1 = parse_double(val, kctx);
      else if (key == "alpha2") spec.network.alpha2 = parse_double(val, kctx);
      else if (key == "alpha")
        spec.network.alpha1 = spec.network.alpha2 = parse_double(val, kctx);
      else if (key == "sensor_sink_distance")
        spec.network.sensor_to_sink[0].distance =
            spec.network.sensor_to_sink[1].distance = parse_double(val, kctx);
      else if (key == "sensor_agg_distance")
        spec.network.sensor_to_agg[0].distance =
            spec.network.sensor_to_agg[1].distance = parse_double(val, kctx);
      else if (key == "agg_sink_distance")
        spec.network.agg_to_sink[0].distance =
            spec.network.agg_to_sink[1].distance = parse_double(val, kctx);
      else if (key == "sensor_power")
        spec.network.sensor_to_sink[0].tx_power =
            spec.network.sensor_to_sink[1].tx_power =
                spec.network.sensor_to_agg[0].tx_power =
                    spec.network.sensor_to_agg[1].tx_power =
                        parse_double(val, kctx);
      else if (key == "agg_power")
        spec.network.agg_to_sink[0].tx_power =
            spec.network.agg_to_sink[1].tx_power = parse_double(val, kctx);
      else if (key == "path_loss_exp") {
        const double theta = parse_double(val, kctx);
        for (int a = 0; a < 2; ++a) {
          spec.network.sensor_to_sink[a].path_loss_exp = theta;
          spec.network.sensor_to_agg[a].path_loss_exp = theta;
          spec.network.agg_to_sink[a].path_loss_exp = theta;
        }
      } else {
        throw ConfigError(kctx + ": unknown [network] key");
      }
    } else if (section == "channel") {
      if (key == "gamma")
        spec.network.channel.sinr_threshold = parse_double(val, kctx);
      else if (key == "eta")
        spec.network.channel.noise_power = parse_double(val, kctx);
      else
        throw ConfigError(kctx + ": unknown [channel] key");
    } else if (section == "sweep") {
      if (key == "scenario") {
        spec.scenario = val;
      } else if (key == "parameter") {
        spec.sweep.push_back(SweepAxis{val, {}});
      } else if (key == "values") {
        if (spec.sweep.empty() || !spec.sweep.back().values.empty())
          throw ConfigError(kctx + ": 'values' must follow a 'parameter' key");
        spec.sweep.back().values = parse_list(val, kctx);
      } else if (key == "analysis") {
        spec.analyses.clear();
        std::stringstream ss(val);
        std::string item;
        while (std::getline(ss, item, ','))
          if (!trim(item).empty())
            spec.analyses.insert(parse_analysis(trim(item), kctx));
        if (spec.analyses.empty())
          throw ConfigError(kctx + ": at least one analysis is required");
      } else {
        throw ConfigError(kctx + ": unknown [sweep] key");
      }
    } else if (section == "sim") {
      if (key == "slots") spec.sim.slots = parse_int(val, kctx);
      else if (key == "warmup") spec.sim.warmup = parse_int(val, kctx);
      else if (key == "seed")
        spec.sim.seed = static_cast<std::uint64_t>(parse_int(val, kctx));
      else if (key == "replications")
        spec.sim.replications = static_cast<int>(parse_int(val, kctx));
      else if (key == "mode") {
        if (val == "independent-success")
          spec.sim.mode = SimMode::kIndependentSuccess;
        else if (val == "full-sinr")
          spec.sim.mode = SimMode::kFullSinr;
        else
          throw ConfigError(kctx + ": mode must be independent-success or "
                                   "full-sinr");
      } else if (key == "queue_cap") {
        spec.sim.queue_cap = parse_int(val, kctx);
      } else {
        throw ConfigError(kctx + ": unknown [sim] key");
      }
    }
  }
  for (const SweepAxis& ax : spec.sweep)
    if (ax.values.empty())
      throw ConfigError(origin + ": sweep parameter '" + ax.parameter +
                        "' has no values");

  spec.network.validate();
  spec.sim.validate();

  // Resolved view.
  auto put = [&](const std::string& k, double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    spec.resolved[k] = os.str();
  };
  put("network.m1", spec.network.m1);
  put("network.m2", spec.network.m2);
  put("network.t1", spec.network.t1);
  put("network.t2", spec.network.t2);
  put("network.alpha1", spec.network.alpha1);
  put("network.alpha2", spec.network.alpha2);
  put("network.sensor_sink_distance", spec.network.sensor_to_sink[0].distance);
  put("network.sensor_agg_distance", spec.network.sensor_to_agg[0].distance);
  put("network.agg_sink_distance", spec.network.agg_to_sink[0].distance);
  put("network.sensor_power", spec.network.sensor_to_sink[0].tx_power);
  put("network.agg_power", spec.network.agg_to_sink[0].tx_power);
  put("network.path_loss_exp", spec.network.sensor_to_sink[0].path_loss_exp);
  put("channel.gamma", spec.network.channel.sinr_threshold);
  put("channel.eta", spec.network.channel.noise_power);
  put("sim.slots", static_cast<double>(spec.sim.slots));
  put("sim.warmup", static_cast<double>(spec.sim.effective_warmup()));
  put("sim.seed", static_cast<double>(spec.sim.seed));
  put("sim.replications", spec.sim.replications);
  spec.resolved["sim.mode"] = spec.sim.mode == SimMode::kIndependentSuccess
                                  ? "independent-success"
                                  : "full-sinr";
  spec.resolved["sweep.scenario"] = spec.scenario;
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string config_hash(const ExperimentSpec& spec) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [k, v] : spec.resolved) {
    mix(k);
    mix("=");
    mix(v);
    mix(";");
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace aggrnet
