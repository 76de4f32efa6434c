#include "steklov/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "steklov/io.hpp"

namespace steklov {

namespace {

const char* to_string(Command c) {
  switch (c) {
    case Command::Compute: return "compute";
    case Command::Verify: return "verify";
    case Command::Sweep: return "sweep";
    case Command::Table: return "table";
  }
  return "?";
}

const char* to_string(WarpFamily f) {
  switch (f) {
    case WarpFamily::Ball: return "ball";
    case WarpFamily::Cylinder: return "cylinder";
    case WarpFamily::Sin: return "sin";
    case WarpFamily::Sharpness: return "sharpness";
    case WarpFamily::File: return "file";
  }
  return "?";
}

const char* to_string(OutFormat f) {
  switch (f) {
    case OutFormat::Csv: return "csv";
    case OutFormat::Json: return "json";
    case OutFormat::Both: return "both";
  }
  return "?";
}

template <typename E>
E parse_enum(const std::string& s, std::initializer_list<std::pair<const char*, E>> table,
             const char* what) {
  for (const auto& [name, value] : table)
    if (s == name) return value;
  throw DomainError(std::string("unknown ") + what + " '" + s + "'");
}

Command parse_command(const std::string& s) {
  return parse_enum<Command>(s, {{"compute", Command::Compute},
                                 {"verify", Command::Verify},
                                 {"sweep", Command::Sweep},
                                 {"table", Command::Table}}, "command");
}

WarpFamily parse_family(const std::string& s) {
  return parse_enum<WarpFamily>(s, {{"ball", WarpFamily::Ball},
                                    {"cylinder", WarpFamily::Cylinder},
                                    {"sin", WarpFamily::Sin},
                                    {"sharpness", WarpFamily::Sharpness},
                                    {"file", WarpFamily::File}}, "warp family");
}

OutFormat parse_format(const std::string& s) {
  return parse_enum<OutFormat>(s, {{"csv", OutFormat::Csv},
                                   {"json", OutFormat::Json},
                                   {"both", OutFormat::Both}}, "format");
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw DomainError("config key '" + key + "': cannot parse number '" + value + "'");
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  const double x = parse_double(key, value);
  if (x != std::floor(x) || std::abs(x) > 1e9)
    throw DomainError("config key '" + key + "': expected an integer, got '" + value + "'");
  return static_cast<int>(x);
}

std::vector<double> parse_value_list(const std::string& key, const std::string& csv) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    out.push_back(parse_double(key, token));
  }
  return out;
}

std::string join_values(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += fmt9(values[i]);
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "command") cfg.command = parse_command(value);
  else if (key == "warp") cfg.warp = parse_family(value);
  else if (key == "topology") {
    if (value != "auto" && value != "connected" && value != "two-boundary")
      throw DomainError("config key 'topology': expected auto|connected|two-boundary");
    cfg.topology = value;
  }
  else if (key == "n") cfg.n = parse_int(key, value);
  else if (key == "p") cfg.p = parse_int(key, value);
  else if (key == "R") cfg.R = parse_double(key, value);
  else if (key == "L") cfg.L = parse_double(key, value);
  else if (key == "m_max") cfg.m_max = parse_int(key, value);
  else if (key == "eps") cfg.eps = parse_double(key, value);
  else if (key == "C") cfg.C = parse_double(key, value);
  else if (key == "profile") cfg.profile = value;
  else if (key == "theorem") cfg.theorem = value;
  else if (key == "tol") cfg.tol = parse_double(key, value);
  else if (key == "r0_factor") cfg.r0_factor = parse_double(key, value);
  else if (key == "fem_n") cfg.fem_n = parse_int(key, value);
  else if (key == "output_points") cfg.output_points = parse_int(key, value);
  else if (key == "sweep_param") cfg.sweep_param = value;
  else if (key == "sweep_values") cfg.sweep_values = parse_value_list(key, value);
  else if (key == "out") cfg.out = value;
  else if (key == "format") cfg.format = parse_format(value);
  else if (key == "dump_radial") {
    if (value != "true" && value != "false")
      throw DomainError("config key 'dump_radial': expected true|false");
    cfg.dump_radial = (value == "true");
  }
  else throw DomainError("unknown config key '" + key + "'");
}

HeaderLines config_pairs(const RunConfig& c) {
  HeaderLines pairs;
  pairs.emplace_back("command", to_string(c.command));
  pairs.emplace_back("warp", to_string(c.warp));
  pairs.emplace_back("topology", c.topology);
  pairs.emplace_back("n", std::to_string(c.n));
  pairs.emplace_back("p", std::to_string(c.p));
  pairs.emplace_back("R", fmt9(c.R));
  pairs.emplace_back("L", fmt9(c.L));
  pairs.emplace_back("m_max", std::to_string(c.m_max));
  pairs.emplace_back("eps", fmt9(c.eps));
  pairs.emplace_back("C", fmt9(c.C));
  if (!c.profile.empty()) pairs.emplace_back("profile", c.profile);
  pairs.emplace_back("theorem", c.theorem);
  pairs.emplace_back("tol", fmt9(c.tol));
  pairs.emplace_back("r0_factor", fmt9(c.r0_factor));
  pairs.emplace_back("fem_n", std::to_string(c.fem_n));
  pairs.emplace_back("output_points", std::to_string(c.output_points));
  if (!c.sweep_param.empty()) {
    pairs.emplace_back("sweep_param", c.sweep_param);
    pairs.emplace_back("sweep_values", join_values(c.sweep_values));
  }
  if (!c.out.empty()) pairs.emplace_back("out", c.out);
  pairs.emplace_back("format", to_string(c.format));
  pairs.emplace_back("dump_radial", c.dump_radial ? "true" : "false");
  return pairs;
}

SolveOptions solve_options(const RunConfig& c) {
  SolveOptions opts;
  opts.rtol = c.tol;
  opts.r0_factor = c.r0_factor;
  opts.output_points = c.output_points;
  return opts;
}

void validate_config(const RunConfig& c) {
  if (c.n < 2) throw DomainError("n must be >= 2");
  if (c.p < 0 || c.p > c.n - 2) throw DomainError("p must be in [0, n-2]");
  if (c.m_max < 1) throw DomainError("m_max must be >= 1");
  if (!(c.R > 0) || !(c.L > 0)) throw DomainError("R and L must be positive");
  if (!(c.tol > 0) || c.tol > 1e-4) throw DomainError("tol must be in (0, 1e-4]");
  if (!(c.r0_factor > 0) || c.r0_factor >= 0.25)
    throw DomainError("r0_factor must be in (0, 0.25)");
  if (c.fem_n < 8) throw DomainError("fem_n must be >= 8");
  if (c.output_points < 9) throw DomainError("output_points must be >= 9");
  if (c.warp == WarpFamily::File && c.profile.empty())
    throw DomainError("warp=file needs a profile path");
  if (c.command == Command::Sweep) {
    static const std::set<std::string> allowed = {"eps", "L", "R", "p"};
    if (!allowed.count(c.sweep_param))
      throw DomainError("sweep_param must be one of eps|L|R|p");
    if (c.sweep_values.empty()) throw DomainError("sweep needs at least one value");
  }
}

struct Artifacts {
  const RunConfig& cfg;

  void write(const std::string& name, const std::string& content) const {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out);
    std::ofstream file(fs::path(cfg.out) / name, std::ios::binary);
    if (!file) throw SolverError("cannot open output file " + name);
    file << content;
  }

  bool want_csv() const { return cfg.format != OutFormat::Json; }
  bool want_json() const { return cfg.format != OutFormat::Csv; }
};

void print_spectrum(const SpectrumTable& table, bool aligned) {
  if (aligned) {
    std::printf("%4s %4s %7s %16s %12s %10s\n", "k", "m", "branch", "sigma",
                "lambda", "certified");
    for (const auto& e : table.entries)
      std::printf("%4d %4d %7d %16s %12s %10s\n", e.k, e.m, e.branch,
                  fmt9(e.sigma).c_str(), fmt9(e.lambda).c_str(),
                  e.certified ? "yes" : "no");
  } else {
    for (const auto& e : table.entries)
      std::printf("k=%d m=%d branch=%d sigma=%s lambda=%s certified=%d\n", e.k,
                  e.m, e.branch, fmt9(e.sigma).c_str(), fmt9(e.lambda).c_str(),
                  e.certified ? 1 : 0);
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw DomainError("config line " + std::to_string(lineno) +
                          ": malformed section header");
      continue;  // sections are cosmetic grouping only
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    try {
      apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const DomainError& e) {
      throw DomainError("config line " + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  return cfg;
}

std::string serialize_config(const RunConfig& c) {
  std::string out;
  out += "command = " + std::string(to_string(c.command)) + "\n";
  out += "\n[problem]\n";
  out += "warp = " + std::string(to_string(c.warp)) + "\n";
  out += "topology = " + c.topology + "\n";
  out += "n = " + std::to_string(c.n) + "\n";
  out += "p = " + std::to_string(c.p) + "\n";
  out += "R = " + fmt9(c.R) + "\n";
  out += "L = " + fmt9(c.L) + "\n";
  out += "m_max = " + std::to_string(c.m_max) + "\n";
  out += "eps = " + fmt9(c.eps) + "\n";
  out += "C = " + fmt9(c.C) + "\n";
  if (!c.profile.empty()) out += "profile = " + c.profile + "\n";
  out += "theorem = " + c.theorem + "\n";
  out += "\n[solver]\n";
  out += "tol = " + fmt9(c.tol) + "\n";
  out += "r0_factor = " + fmt9(c.r0_factor) + "\n";
  out += "fem_n = " + std::to_string(c.fem_n) + "\n";
  out += "output_points = " + std::to_string(c.output_points) + "\n";
  if (!c.sweep_param.empty()) {
    out += "\n[sweep]\n";
    out += "sweep_param = " + c.sweep_param + "\n";
    out += "sweep_values = " + join_values(c.sweep_values) + "\n";
  }
  out += "\n[output]\n";
  if (!c.out.empty()) out += "out = " + c.out + "\n";
  out += "format = " + std::string(to_string(c.format)) + "\n";
  out += std::string("dump_radial = ") + (c.dump_radial ? "true" : "false") + "\n";
  return out;
}

RunConfig parse_command_line(const std::vector<std::string>& args) {
  CLI::App app{"Steklov spectrum engine for warped product manifolds"};
  app.require_subcommand(0, 0);

  std::string command, config_path, warp, topology, profile, theorem, format;
  std::string sweep_param, sweep_values, out;
  int n = 0, p = -1, m_max = 0, k_max = 0, fem_n = 0, output_points = 0;
  double R = 0, L = 0, eps = 0, C = 0, tol = 0, r0_factor = 0;
  bool dump_radial = false;

  app.add_option("command", command, "compute | verify | sweep | table")->required();
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--warp", warp, "ball | cylinder | sin | sharpness | file");
  app.add_option("--topology", topology, "auto | connected | two-boundary");
  app.add_option("--n", n, "manifold dimension");
  app.add_option("--p", p, "form degree");
  app.add_option("--R", R, "meridian length (connected families)");
  app.add_option("--L", L, "meridian length (two-boundary families)");
  app.add_option("--m-max", m_max, "number of angular modes");
  app.add_option("--k-max", k_max, "alias for --m-max");
  app.add_option("--eps", eps, "sharpness family parameter");
  app.add_option("--C", C, "uniform warp cap for gap bounds (0 = auto)");
  app.add_option("--profile", profile, "two-column r h profile file");
  app.add_option("--theorem", theorem, "theorem selector or 'all'");
  app.add_option("--tol", tol, "integrator relative tolerance");
  app.add_option("--r0-factor", r0_factor, "launch offset factor");
  app.add_option("--fem-n", fem_n, "finite-element element count");
  app.add_option("--output-points", output_points, "stored solution samples");
  app.add_option("--sweep-param", sweep_param, "eps | L | R | p");
  app.add_option("--sweep-values", sweep_values, "comma-separated values");
  app.add_option("--out", out, "artifact directory");
  app.add_option("--format", format, "csv | json | both");
  app.add_flag("--dump-radial", dump_radial, "write radial solution dumps");

  std::vector<const char*> argv;
  argv.push_back("steklov");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::cout << app.help();
      throw;  // help request; caller exits cleanly
    }
    throw DomainError(std::string("command line: ") + e.what());
  }

  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream file(config_path);
    if (!file) throw DomainError("cannot read config file " + config_path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    cfg = parse_config_text(buffer.str());
  }

  cfg.command = parse_command(command);
  if (app.count("--warp")) cfg.warp = parse_family(warp);
  if (app.count("--topology")) apply_key(cfg, "topology", topology);
  if (app.count("--n")) cfg.n = n;
  if (app.count("--p")) cfg.p = p;
  if (app.count("--R")) cfg.R = R;
  if (app.count("--L")) cfg.L = L;
  if (app.count("--m-max")) cfg.m_max = m_max;
  if (app.count("--k-max")) cfg.m_max = k_max;
  if (app.count("--eps")) cfg.eps = eps;
  if (app.count("--C")) cfg.C = C;
  if (app.count("--profile")) cfg.profile = profile;
  if (app.count("--theorem")) cfg.theorem = theorem;
  if (app.count("--tol")) cfg.tol = tol;
  if (app.count("--r0-factor")) cfg.r0_factor = r0_factor;
  if (app.count("--fem-n")) cfg.fem_n = fem_n;
  if (app.count("--output-points")) cfg.output_points = output_points;
  if (app.count("--sweep-param")) cfg.sweep_param = sweep_param;
  if (app.count("--sweep-values"))
    cfg.sweep_values = parse_value_list("sweep_values", sweep_values);
  if (app.count("--out")) cfg.out = out;
  if (app.count("--format")) cfg.format = parse_format(format);
  if (dump_radial) cfg.dump_radial = true;

  validate_config(cfg);
  return cfg;
}

WarpSpec warp_from_config(const RunConfig& cfg) {
  validate_config(cfg);
  switch (cfg.warp) {
    case WarpFamily::Ball: return make_ball(cfg.n, cfg.R);
    case WarpFamily::Cylinder: return make_cylinder(cfg.n, cfg.L);
    case WarpFamily::Sin: return make_concave(ConcaveKind::Sin, cfg.n, cfg.R);
    case WarpFamily::Sharpness:
      return make_sharpness_family(cfg.n, cfg.p, cfg.R, cfg.eps);
    case WarpFamily::File: break;
  }
  std::ifstream file(cfg.profile);
  if (!file) throw ProfileInvalid("cannot read profile file " + cfg.profile);
  std::stringstream buffer;
  buffer << file.rdbuf();
  const auto [r, h] = parse_profile_file(buffer.str());
  Topology topo;
  if (cfg.topology == "connected") topo = Topology::Connected;
  else if (cfg.topology == "two-boundary") topo = Topology::TwoBoundary;
  else {
    double max_h = 0;
    for (double v : h) max_h = std::max(max_h, std::abs(v));
    topo = (std::abs(h.back()) <= 1e-6 * max_h) ? Topology::Connected
                                                : Topology::TwoBoundary;
  }
  const auto name = std::filesystem::path(cfg.profile).filename().string();
  return make_revolution_profile(cfg.n, topo, r, h, "file:" + name);
}

std::vector<BoundReport> verify_from_config(const RunConfig& cfg) {
  const WarpSpec spec = warp_from_config(cfg);
  const SolveOptions opts = solve_options(cfg);
  const std::string& sel = cfg.theorem;

  auto selected = [&](const char* prefix) {
    return sel == "all" || sel.rfind(prefix, 0) == 0;
  };
  static const std::set<std::string> known = {
      "all", "t1.2", "t1.4", "t1.4i", "t1.4ii", "t1.5", "t1.5i", "t1.5ii",
      "t1.6", "t1.6i", "t1.6ii", "t1.7", "t1.7i", "t1.7iia", "t1.7iib",
      "t1.8", "t1.8i", "t1.8ii", "cor1.9"};
  if (!known.count(sel)) throw DomainError("unknown theorem selector '" + sel + "'");

  std::vector<BoundReport> reports;
  auto append = [&](std::vector<BoundReport> more) {
    for (auto& r : more) reports.push_back(std::move(r));
  };
  if (selected("t1.2")) append(check_escobar_type(spec, cfg.p, cfg.m_max, opts));
  if (selected("t1.4")) {
    if (sel != "t1.4ii") append(check_ratio(spec, cfg.p, cfg.m_max, opts));
    if (sel != "t1.4i")
      append(check_isospectral_conformal(spec, cfg.p, cfg.m_max, opts));
  }
  if (selected("t1.5")) append(check_gaps(spec, cfg.p, cfg.m_max, cfg.C, opts));
  if (selected("t1.6")) append(check_ball_comparison(spec, cfg.p, cfg.m_max, opts));
  if (selected("t1.7") || selected("t1.8") || selected("cor1.9")) {
    auto more = check_two_boundary_bounds(spec, cfg.p, cfg.m_max, opts);
    if (sel != "all") {
      std::erase_if(more, [&](const BoundReport& r) {
        return std::string(to_string(r.theorem)).rfind(sel, 0) != 0;
      });
    }
    append(std::move(more));
  }
  return reports;
}

int cmd_compute(const RunConfig& cfg) {
  const WarpSpec spec = warp_from_config(cfg);
  const SolveOptions opts = solve_options(cfg);
  const SpectrumTable table = assemble_spectrum(spec, cfg.p, cfg.m_max, opts);

  print_spectrum(table, cfg.command == Command::Table);

  if (!cfg.out.empty()) {
    const Artifacts art{cfg};
    const auto header = config_pairs(cfg);
    if (art.want_csv()) art.write("spectrum.csv", spectrum_csv(table, header));
    if (art.want_json()) art.write("spectrum.json", spectrum_json(table, header));
    if (cfg.dump_radial) {
      for (int m = 1; m <= cfg.m_max; ++m) {
        const auto mode = make_mode(cfg.n, cfg.p, m);
        if (spec.topology == Topology::Connected) {
          art.write("radial_m" + std::to_string(m) + ".dat",
                    radial_dump(shoot_connected(spec, mode, opts)));
        } else {
          const auto [u, v] = solve_two_boundary(spec, mode, opts);
          art.write("radial_m" + std::to_string(m) + "_u.dat", radial_dump(u));
          art.write("radial_m" + std::to_string(m) + "_v.dat", radial_dump(v));
        }
      }
    }
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const auto reports = verify_from_config(cfg);
  bool violated = false;
  for (const auto& r : reports) {
    violated |= (r.verdict == Verdict::Violated);
    std::printf("%-8s n=%d p=%d k=%d lhs=%s rhs=%s margin=%s %s%s%s\n",
                to_string(r.theorem), r.n, r.p, r.k, fmt9(r.lhs).c_str(),
                fmt9(r.rhs).c_str(), fmt9(r.margin).c_str(),
                to_string(r.verdict), r.note.empty() ? "" : " # ",
                r.note.c_str());
  }
  if (!cfg.out.empty()) {
    const Artifacts art{cfg};
    const auto header = config_pairs(cfg);
    if (art.want_csv()) art.write("reports.csv", reports_csv(reports, header));
    if (art.want_json()) art.write("reports.json", reports_json(reports, header));
  }
  return violated ? 4 : 0;
}

int cmd_sweep(const RunConfig& cfg) {
  std::string csv;
  for (const auto& [k, v] : config_pairs(cfg)) csv += "# " + k + " = " + v + "\n";
  csv += "param,value,k,m,branch,sigma,lambda,certified\n";

  for (const double value : cfg.sweep_values) {
    RunConfig point = cfg;
    if (cfg.sweep_param == "eps") point.eps = value;
    else if (cfg.sweep_param == "L") point.L = value;
    else if (cfg.sweep_param == "R") point.R = value;
    else point.p = static_cast<int>(value);
    validate_config(point);

    const WarpSpec spec = warp_from_config(point);
    const SpectrumTable table =
        assemble_spectrum(spec, point.p, point.m_max, solve_options(point));
    std::printf("%s = %s:\n", cfg.sweep_param.c_str(), fmt9(value).c_str());
    print_spectrum(table, false);
    for (const auto& e : table.entries)
      csv += cfg.sweep_param + ',' + fmt9(value) + ',' + std::to_string(e.k) +
             ',' + std::to_string(e.m) + ',' + std::to_string(e.branch) + ',' +
             fmt9(e.sigma) + ',' + fmt9(e.lambda) + ',' +
             (e.certified ? "1" : "0") + '\n';
  }

  if (!cfg.out.empty()) {
    const Artifacts art{cfg};
    if (art.want_csv()) art.write("sweep.csv", csv);
  }
  return 0;
}

int run_main(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const RunConfig cfg = parse_command_line(args);
    switch (cfg.command) {
      case Command::Compute:
      case Command::Table: return cmd_compute(cfg);
      case Command::Verify: return cmd_verify(cfg);
      case Command::Sweep: return cmd_sweep(cfg);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    return 0;  // --help and friends
  } catch (const DomainError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ProfileInvalid& e) {
    std::fprintf(stderr, "profile error: %s\n", e.what());
    return 2;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  }
}

}  // namespace steklov
