#include "steklov/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace steklov {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Rounds a double to its 9-significant-digit representation so JSON
/// number output matches the CSV formatting.
double round9(double x) {
  return std::strtod(fmt9(x).c_str(), nullptr);
}

std::string comment_header(const HeaderLines& header) {
  std::string out;
  for (const auto& [k, v] : header) out += "# " + k + " = " + v + "\n";
  return out;
}

ordered_json json_header(const HeaderLines& header) {
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : header) cfg[k] = v;
  return cfg;
}

const char* topology_name(Topology t) {
  return t == Topology::Connected ? "connected" : "two-boundary";
}

}  // namespace

std::string fmt9(double x) {
  if (x == 0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string spectrum_csv(const SpectrumTable& table, const HeaderLines& header) {
  std::string out = comment_header(header);
  out += "k,m,branch,sigma,lambda,certified\n";
  for (const auto& e : table.entries) {
    out += std::to_string(e.k) + ',' + std::to_string(e.m) + ',' +
           std::to_string(e.branch) + ',' + fmt9(e.sigma) + ',' +
           fmt9(e.lambda) + ',' + (e.certified ? "1" : "0") + '\n';
  }
  return out;
}

std::string spectrum_json(const SpectrumTable& table, const HeaderLines& header) {
  ordered_json j;
  j["config"] = json_header(header);
  j["n"] = table.n;
  j["p"] = table.p;
  j["topology"] = topology_name(table.topology);
  j["m_max"] = table.m_max;
  j["certified_prefix"] = table.certified_prefix;
  j["entries"] = ordered_json::array();
  for (const auto& e : table.entries) {
    ordered_json row;
    row["k"] = e.k;
    row["m"] = e.m;
    row["branch"] = e.branch;
    row["sigma"] = round9(e.sigma);
    row["lambda"] = round9(e.lambda);
    row["certified"] = e.certified;
    j["entries"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string reports_csv(const std::vector<BoundReport>& reports,
                        const HeaderLines& header) {
  std::string out = comment_header(header);
  out += "theorem,n,p,k,lhs,rhs,margin,verdict\n";
  for (const auto& r : reports) {
    out += std::string(to_string(r.theorem)) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.p) + ',' + std::to_string(r.k) + ',' + fmt9(r.lhs) +
           ',' + fmt9(r.rhs) + ',' + fmt9(r.margin) + ',' + to_string(r.verdict) +
           '\n';
  }
  return out;
}

std::string reports_json(const std::vector<BoundReport>& reports,
                         const HeaderLines& header) {
  ordered_json j;
  j["config"] = json_header(header);
  j["reports"] = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json row;
    row["theorem"] = to_string(r.theorem);
    row["n"] = r.n;
    row["p"] = r.p;
    row["k"] = r.k;
    row["spec"] = r.spec_tag;
    row["lhs"] = round9(r.lhs);
    row["rhs"] = round9(r.rhs);
    row["margin"] = round9(r.margin);
    row["tolerance"] = round9(r.tolerance);
    row["verdict"] = to_string(r.verdict);
    row["note"] = r.note;
    j["reports"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string radial_dump(const RadialSolution& sol) {
  std::string out = "# r psi (mode n=" + std::to_string(sol.mode.n) +
                    " p=" + std::to_string(sol.mode.p) +
                    " m=" + std::to_string(sol.mode.m) + ")\n";
  for (std::size_t i = 0; i < sol.grid.size(); ++i)
    out += fmt9(sol.grid[i]) + " " + fmt9(sol.psi[i]) + "\n";
  return out;
}

std::pair<std::vector<double>, std::vector<double>> parse_profile_file(
    const std::string& content) {
  std::vector<double> r, h;
  std::istringstream in(content);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double a, b;
    if (!(ls >> a)) continue;  // blank or comment-only line
    if (!(ls >> b))
      throw ProfileInvalid("profile line " + std::to_string(lineno) +
                           ": expected two columns (r h)");
    std::string trailing;
    if (ls >> trailing)
      throw ProfileInvalid("profile line " + std::to_string(lineno) +
                           ": unexpected trailing content '" + trailing + "'");
    r.push_back(a);
    h.push_back(b);
  }
  if (r.size() < 4)
    throw ProfileInvalid("profile needs at least 4 sample rows");
  return {std::move(r), std::move(h)};
}

}  // namespace steklov
