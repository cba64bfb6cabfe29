#include "gic_region/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "gic_region/errors.hpp"
#include "gic_region/hk_region.hpp"
#include "gic_region/mac_intersection.hpp"
#include "gic_region/oracle.hpp"

namespace gic {

namespace {

using nlohmann::ordered_json;

const std::vector<std::string> kKeys{"command", "a",      "b",     "p1",    "p2",    "points",
                                     "resolution", "mu",  "seed",  "delta", "rho",   "theta",
                                     "power",   "noise",  "layers", "out",  "format"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ValidationError("option " + key + ": not a finite number: '" + text + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("option " + key + ": not a non-negative integer: '" + text + "'");
  }
  return v;
}

Command parse_command(const std::string& name) {
  static const std::map<std::string, Command> names{
      {"trace", Command::Trace},         {"classify", Command::Classify},
      {"sumrate", Command::SumRate},     {"hk-compare", Command::HkCompare},
      {"oracle", Command::Oracle},       {"scsd-demo", Command::ScsdDemo},
      {"keypoints", Command::KeyPoints},
  };
  const auto it = names.find(name);
  if (it == names.end()) throw ValidationError("unknown command '" + name + "'");
  return it->second;
}

double require_mu(const RunConfig& cfg) {
  if (!cfg.mu) throw ValidationError("this command needs --mu");
  if (!(*cfg.mu > 0.0 && *cfg.mu <= 1.0)) throw ValidationError("--mu must lie in (0, 1]");
  return *cfg.mu;
}

const ChannelParams& require_params(const RunConfig& cfg) {
  if (!cfg.params) throw ValidationError("this command needs --a, --b, --p1 and --p2");
  return *cfg.params;
}

ordered_json params_json(const ChannelParams& ch) {
  return {{"a", ch.a()}, {"b", ch.b()}, {"p1", ch.p1()}, {"p2", ch.p2()}, {"t1", ch.t1()}, {"t2", ch.t2()}};
}

ordered_json point_json(const BoundaryPoint& p) {
  return {{"mu", p.mu},       {"rho", p.rho}, {"theta", p.theta},
          {"p1hat", p.p1hat}, {"p2hat", p.p2hat}, {"r1", p.r1},
          {"r2", p.r2},       {"regime", std::string(to_string(p.regime))},
          {"mac_case", std::string(to_string(p.mac_case))}};
}

ordered_json trace_json(const BoundaryTrace& t) {
  ordered_json pts = ordered_json::array();
  for (const BoundaryPoint& p : t.points) pts.push_back(point_json(p));
  return {{"regime", std::string(to_string(t.regime))},
          {"report", t.report},
          {"tangent_condition", t.tangent_condition},
          {"points", pts}};
}

ordered_json rates_json(const HkRates& r) {
  return {{"rU1", r.r_u1}, {"rU2", r.r_u2}, {"rV1", r.r_v1}, {"rV2", r.r_v2}};
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::vector<std::string> point_row(const BoundaryPoint& p) {
  return {num(p.mu), num(p.rho), num(p.theta), num(p.p1hat), num(p.p2hat), num(p.r1), num(p.r2),
          std::string(to_string(p.regime)), std::string(to_string(p.mac_case))};
}

const std::vector<std::string> kPointHeader{"mu", "rho", "theta", "p1hat", "p2hat", "r1", "r2", "regime", "mac_case"};

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string render_trace(const RunConfig& cfg) {
  const ChannelParams& ch = require_params(cfg);
  const BoundaryTrace lower = trace_lower_boundary(ch, cfg.num_points);
  const BoundaryTrace upper = trace_upper_boundary(ch, cfg.num_points);
  if (cfg.format == OutputFormat::Csv) return trace_csv(lower, upper);
  return dump({{"params", params_json(ch)}, {"lower", trace_json(lower)}, {"upper", trace_json(upper)}});
}

std::string render_classify(const RunConfig& cfg) {
  const ChannelParams& ch = require_params(cfg);
  const PowerSplit split(cfg.rho, cfg.theta);
  const MacCorners c = corner_rates(ch, split);
  const MacCase mc = classify(c);
  const PublicRatePair pub = public_rate_pair(c);
  std::string binding;
  for (PublicBound b : pub.decoding.binding) {
    if (!binding.empty()) binding += '|';
    binding += to_string(b);
  }
  const std::string case_id(to_string(mc.id));
  if (cfg.format == OutputFormat::Csv) {
    return csv_table({"r1p1", "r1m1", "r1p2", "r1m2", "r2p2", "r2m2", "r2p1", "r2m1", "sum_y1", "sum_y2", "case_id",
                      "r_u1", "r_u2", "decoding_y1", "decoding_y2", "binding"},
                     {{num(c.r1_plus_1), num(c.r1_minus_1), num(c.r1_plus_2), num(c.r1_minus_2), num(c.r2_plus_2),
                       num(c.r2_minus_2), num(c.r2_plus_1), num(c.r2_minus_1), num(c.sum_y1), num(c.sum_y2), case_id,
                       num(pub.r_u1), num(pub.r_u2), std::string(to_string(pub.decoding.at_y1)),
                       std::string(to_string(pub.decoding.at_y2)), binding}});
  }
  ordered_json vertices = ordered_json::array();
  for (const Vertex& v : intersection_polygon(c)) vertices.push_back({v.x, v.y});
  ordered_json bound_list = ordered_json::array();
  for (PublicBound b : pub.decoding.binding) bound_list.push_back(std::string(to_string(b)));
  return dump({{"params", params_json(ch)},
               {"rho", cfg.rho},
               {"theta", cfg.theta},
               {"corners",
                {{"r1p1", c.r1_plus_1}, {"r1m1", c.r1_minus_1}, {"r1p2", c.r1_plus_2}, {"r1m2", c.r1_minus_2},
                 {"r2p2", c.r2_plus_2}, {"r2m2", c.r2_minus_2}, {"r2p1", c.r2_plus_1}, {"r2m1", c.r2_minus_1},
                 {"sum_y1", c.sum_y1}, {"sum_y2", c.sum_y2}, {"case_id", case_id}}},
               {"requires_joint_decoding_y1", mc.requires_joint_decoding_y1},
               {"public_pair",
                {{"r_u1", pub.r_u1},
                 {"r_u2", pub.r_u2},
                 {"decoding_y1", std::string(to_string(pub.decoding.at_y1))},
                 {"decoding_y2", std::string(to_string(pub.decoding.at_y2))},
                 {"binding", bound_list}}},
               {"polygon", vertices}});
}

std::string render_sumrate(const RunConfig& cfg) {
  const ChannelParams& ch = require_params(cfg);
  const SumRateFront f = sum_rate_front(ch);
  const std::string binding(to_string(f.binding_receiver));
  if (cfg.format == OutputFormat::Csv) {
    return csv_table({"r_sum", "binding", "rho_s", "theta_s"},
                     {{num(f.r_sum), binding, num(f.rho_s), num(f.theta_s)}});
  }
  return dump({{"params", params_json(ch)},
               {"r_sum", f.r_sum},
               {"binding", binding},
               {"rho_s", f.rho_s},
               {"theta_s", f.theta_s}});
}

std::string render_hk_compare(const RunConfig& cfg) {
  const ChannelParams& ch = require_params(cfg);
  const double mu = require_mu(cfg);
  if (cfg.resolution < 2) throw ValidationError("--resolution must be at least 2");
  double worst = 0.0;
  PowerSplit worst_split(0.0, 0.0);
  const std::size_t n = cfg.resolution;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const PowerSplit s(static_cast<double>(i) / static_cast<double>(n - 1),
                         static_cast<double>(j) / static_cast<double>(n - 1));
      const double d = std::abs(lp_optimize_full(ch, s, mu).weighted(mu) - lp_optimize_reduced(ch, s, mu).weighted(mu));
      if (d > worst) {
        worst = d;
        worst_split = s;
      }
    }
  }
  const PowerSplit at(cfg.rho, cfg.theta);
  const HkBounds hk = hk_bounds(ch, at);
  const HkRates full = lp_optimize_full(ch, at, mu);
  const HkRates reduced = lp_optimize_reduced(ch, at, mu);
  const std::size_t active = active_constraints(ch, at, full).size();
  if (cfg.format == OutputFormat::Csv) {
    return csv_table({"mu", "resolution", "samples", "max_discrepancy", "worst_rho", "worst_theta", "rho", "theta",
                      "full_value", "reduced_value", "active_constraints"},
                     {{num(mu), std::to_string(n), std::to_string(n * n), num(worst), num(worst_split.rho()),
                       num(worst_split.theta()), num(cfg.rho), num(cfg.theta), num(full.weighted(mu)),
                       num(reduced.weighted(mu)), std::to_string(active)}});
  }
  ordered_json bounds;
  for (std::size_t k = 1; k <= kNumHkConstraints; ++k) bounds["HK" + std::to_string(k)] = hk(k);
  return dump({{"params", params_json(ch)},
               {"mu", mu},
               {"grid", {{"resolution", n}, {"samples", n * n}, {"max_discrepancy", worst},
                         {"worst_rho", worst_split.rho()}, {"worst_theta", worst_split.theta()}}},
               {"rho", cfg.rho},
               {"theta", cfg.theta},
               {"bounds", bounds},
               {"full", rates_json(full)},
               {"reduced", rates_json(reduced)},
               {"active_constraints", active}});
}

std::string render_oracle(const RunConfig& cfg) {
  const ChannelParams& ch = require_params(cfg);
  const double mu = require_mu(cfg);
  if (cfg.resolution < 2) throw ValidationError("--resolution must be at least 2");
  const BoundaryPoint traced = lower_point_at(ch, mu);
  const double reference = traced.r1 + mu * traced.r2;
  const OracleReport r = grid_oracle(ch, mu, cfg.resolution, reference);
  if (cfg.format == OutputFormat::Csv) {
    return "value=" + num(r.best_value) + " gap=" + num(r.gap_vs_reference) + " rho=" + num(r.best_split.rho()) +
           " theta=" + num(r.best_split.theta()) + " seed=" + std::to_string(r.seed) + "\n";
  }
  return dump({{"params", params_json(ch)},
               {"mu", mu},
               {"best_value", r.best_value},
               {"best_split", {{"rho", r.best_split.rho()}, {"theta", r.best_split.theta()}}},
               {"reference_value", reference},
               {"gap_vs_reference", r.gap_vs_reference},
               {"samples", r.samples},
               {"resolution", r.resolution},
               {"seed", r.seed}});
}

std::string render_scsd(const RunConfig& cfg) {
  const std::vector<double> rates = scsd_layer_rates(cfg.power, cfg.noise, cfg.layers);
  double total = 0.0;
  for (double r : rates) total += r;
  const double single = awgn_capacity(cfg.power, cfg.noise);
  if (cfg.format == OutputFormat::Csv) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t l = 0; l < rates.size(); ++l) rows.push_back({std::to_string(l + 1), num(rates[l])});
    rows.push_back({"sum", num(total)});
    rows.push_back({"single_layer", num(single)});
    rows.push_back({"residual", num(total - single)});
    return csv_table({"layer", "rate"}, rows);
  }
  return dump({{"power", cfg.power},
               {"noise", cfg.noise},
               {"layers", cfg.layers},
               {"rates", rates},
               {"sum", total},
               {"single_layer", single},
               {"residual", total - single}});
}

std::string render_keypoints(const RunConfig& cfg) {
  const ChannelParams& ch = require_params(cfg);
  const KeyPoints kp = key_points(ch);
  const std::vector<std::pair<std::string, const BoundaryPoint*>> named{
      {"A", &kp.point_a}, {"D1", &kp.point_d1}, {"D2", &kp.point_d2}, {"D3", &kp.point_d3}, {"S", &kp.point_s}};
  if (cfg.format == OutputFormat::Csv) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [name, p] : named) {
      std::vector<std::string> row{name};
      const auto cells = point_row(*p);
      row.insert(row.end(), cells.begin(), cells.end());
      rows.push_back(row);
    }
    std::vector<std::string> header{"point"};
    header.insert(header.end(), kPointHeader.begin(), kPointHeader.end());
    return csv_table(header, rows);
  }
  ordered_json pts;
  for (const auto& [name, p] : named) pts[name] = point_json(*p);
  return dump({{"params", params_json(ch)},
               {"mu_at_a", kp.mu_at_a},
               {"d2_p2hat", kp.d2_p2hat},
               {"d3_p2hat", kp.d3_p2hat},
               {"s_split", {{"rho", kp.s_split.rho()}, {"theta", kp.s_split.theta()}}},
               {"points", pts}});
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (!values.emplace(key, value).second) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return values;
}

RunConfig make_config(const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ValidationError("unknown key '" + key + "'");
    }
  }
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };

  RunConfig cfg;
  const std::string* command = get("command");
  if (!command) throw ValidationError("no command given");
  cfg.command = parse_command(*command);

  const std::string* a = get("a");
  const std::string* b = get("b");
  const std::string* p1 = get("p1");
  const std::string* p2 = get("p2");
  if (a || b || p1 || p2) {
    if (!(a && b && p1 && p2)) throw ValidationError("channel needs all of a, b, p1, p2");
    cfg.params.emplace(parse_double("a", *a), parse_double("b", *b), parse_double("p1", *p1),
                       parse_double("p2", *p2));
  }
  if (const auto* v = get("points")) cfg.num_points = parse_count("points", *v);
  if (const auto* v = get("resolution")) cfg.resolution = parse_count("resolution", *v);
  if (const auto* v = get("mu")) cfg.mu = parse_double("mu", *v);
  if (const auto* v = get("seed")) cfg.seed = parse_count("seed", *v);
  if (const auto* v = get("delta")) cfg.delta = parse_double("delta", *v);
  if (const auto* v = get("rho")) cfg.rho = parse_double("rho", *v);
  if (const auto* v = get("theta")) cfg.theta = parse_double("theta", *v);
  if (const auto* v = get("power")) cfg.power = parse_double("power", *v);
  if (const auto* v = get("noise")) cfg.noise = parse_double("noise", *v);
  if (const auto* v = get("layers")) cfg.layers = parse_count("layers", *v);
  if (const auto* v = get("out")) cfg.output_path = *v;
  if (const auto* v = get("format")) {
    if (*v == "csv") {
      cfg.format = OutputFormat::Csv;
    } else if (*v == "json") {
      cfg.format = OutputFormat::Json;
    } else {
      throw ValidationError("format must be csv or json, got '" + *v + "'");
    }
  }

  if (cfg.num_points < 2) throw ValidationError("--points must be at least 2");
  if (cfg.resolution < 2) throw ValidationError("--resolution must be at least 2");
  if (!(cfg.delta > 0.0)) throw ValidationError("--delta must be positive");
  PowerSplit(cfg.rho, cfg.theta);  // range check
  if (cfg.command != Command::ScsdDemo && !cfg.params) {
    throw ValidationError("command needs --a, --b, --p1 and --p2");
  }
  return cfg;
}

std::string trace_csv(const BoundaryTrace& lower, const BoundaryTrace& upper) {
  std::vector<std::vector<std::string>> rows;
  for (const BoundaryPoint& p : lower.points) rows.push_back(point_row(p));
  for (auto it = upper.points.rbegin(); it != upper.points.rend(); ++it) {
    if (it == upper.points.rbegin() && !lower.points.empty()) {
      const BoundaryPoint& last = lower.points.back();
      if (std::abs(last.r1 - it->r1) <= 1e-9 && std::abs(last.r2 - it->r2) <= 1e-9) continue;
    }
    rows.push_back(point_row(*it));
  }
  return csv_table(kPointHeader, rows);
}

std::string render(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Trace: return render_trace(cfg);
    case Command::Classify: return render_classify(cfg);
    case Command::SumRate: return render_sumrate(cfg);
    case Command::HkCompare: return render_hk_compare(cfg);
    case Command::Oracle: return render_oracle(cfg);
    case Command::ScsdDemo: return render_scsd(cfg);
    case Command::KeyPoints: return render_keypoints(cfg);
  }
  return {};
}

void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw ValidationError("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ValidationError("cannot move output into place: " + ec.message());
  }
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary of the two-user weak Gaussian interference channel region", "gic_region"};
  std::string command;
  app.add_option("command", command, "trace | classify | sumrate | hk-compare | oracle | scsd-demo | keypoints");
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value file");
  std::map<std::string, std::string> raw;
  for (const std::string& key : kKeys) {
    if (key == "command") continue;
    app.add_option("--" + key, raw[key]);
  }

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      throw ValidationError(e.what());
    }

    std::map<std::string, std::string> values;
    if (!config_path.empty()) values = read_config_file(config_path);
    for (const std::string& key : kKeys) {
      if (key == "command") continue;
      if (app.count("--" + key) > 0) values[key] = raw[key];
    }
    if (!command.empty()) values["command"] = command;

    const RunConfig cfg = make_config(values);
    const std::string text = render(cfg);
    if (cfg.output_path.empty()) {
      out << text;
    } else {
      write_atomically(cfg.output_path, text);
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error " << kExitValidation << ": " << one_line(e.what()) << "\n";
    return kExitValidation;
  } catch (const RegimeError& e) {
    err << "error " << kExitRegime << ": " << one_line(e.what()) << "\n";
    return kExitRegime;
  } catch (const NumericError& e) {
    err << "error " << kExitNumeric << ": " << one_line(e.what()) << "\n";
    return kExitNumeric;
  }
}

}  // namespace gic
