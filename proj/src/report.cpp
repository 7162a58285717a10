// Config parsing and byte-deterministic artifact writers.

#include "jetconj/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace jetconj {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '.' || c == '-'))
      return false;
  return true;
}

}  // namespace

std::string Config::get_str(const std::string& key,
                            const std::string& fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

double Config::get_num(const std::string& key, double fallback) const {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    std::size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size())
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key +
                                "' is not a number: '" + it->second + "'");
  }
}

long long Config::get_int(const std::string& key, long long fallback) const {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    std::size_t pos = 0;
    long long v = std::stoll(it->second, &pos);
    if (pos != it->second.size())
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key +
                                "' is not an integer: '" + it->second + "'");
  }
}

Config parse_config(const std::string& text,
                    const std::vector<std::string>& allowed) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key))
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": invalid key '" + key + "'");
    if (cfg.kv.count(key))
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
    if (!allowed.empty() &&
        std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    cfg.kv.emplace(std::move(key), std::move(value));
  }
  return cfg;
}

Config load_config(const std::string& path,
                   const std::vector<std::string>& allowed) {
  return parse_config(read_file(path), allowed);
}

std::string fmt_num(double x) {
  // to_chars is locale-independent; %.12g equivalent
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x,
                           std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string fmt_cd(cd z) {
  std::string im = fmt_num(z.imag());
  std::string sep = im.empty() || im[0] == '-' ? "" : "+";
  return fmt_num(z.real()) + sep + im + "j";
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::string basin_csv(const BasinReport& rep) {
  const int d = rep.points.empty() ? 0 : static_cast<int>(rep.points[0].z.size());
  std::vector<std::string> header{"index"};
  for (int j = 0; j < d; ++j) {
    header.push_back("z" + std::to_string(j + 1) + "_re");
    header.push_back("z" + std::to_string(j + 1) + "_im");
  }
  header.insert(header.end(),
                {"verdict", "iterations", "final_norm", "peak_norm"});
  std::vector<std::vector<std::string>> rows;
  rows.reserve(rep.points.size());
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const BasinPoint& bp = rep.points[i];
    std::vector<std::string> row{std::to_string(i)};
    for (int j = 0; j < d; ++j) {
      row.push_back(fmt_num(bp.z(j).real()));
      row.push_back(fmt_num(bp.z(j).imag()));
    }
    row.push_back(verdict_name(bp.orbit.verdict));
    row.push_back(std::to_string(bp.orbit.iterations));
    row.push_back(fmt_num(bp.orbit.final_norm));
    row.push_back(fmt_num(bp.orbit.peak_norm));
    rows.push_back(std::move(row));
  }
  return csv_table(header, rows);
}

std::string basin_svg(const BasinReport& rep, int cell) {
  // Axes: Re z_1 horizontally and, when d >= 2, Re z_2 vertically
  // (Im z_1 for d = 1).  One square per sample; converged points sweep a
  // blue-to-red ramp by iteration count, everything else is grey.
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  long long max_it = 1;
  auto coords = [&](const BasinPoint& bp) {
    double x = bp.z(0).real();
    double y = bp.z.size() > 1 ? bp.z(1).real() : bp.z(0).imag();
    return std::pair<double, double>(x, y);
  };
  for (const BasinPoint& bp : rep.points) {
    auto [x, y] = coords(bp);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
    if (bp.orbit.verdict == Verdict::converged)
      max_it = std::max(max_it, bp.orbit.iterations);
  }
  const int W = 640, Hh = 640;
  double spanx = xmax > xmin ? xmax - xmin : 1.0;
  double spany = ymax > ymin ? ymax - ymin : 1.0;
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
      std::to_string(W) + "\" height=\"" + std::to_string(Hh) +
      "\" viewBox=\"0 0 " + std::to_string(W) + " " + std::to_string(Hh) +
      "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const BasinPoint& bp : rep.points) {
    auto [x, y] = coords(bp);
    double px = (x - xmin) / spanx * (W - cell);
    double py = (y - ymin) / spany * (Hh - cell);
    std::string fill = "#888888";
    if (bp.orbit.verdict == Verdict::converged) {
      double t = static_cast<double>(bp.orbit.iterations) /
                 static_cast<double>(max_it);
      int r = static_cast<int>(255.0 * t);
      int b = static_cast<int>(255.0 * (1.0 - t));
      char col[8];
      std::snprintf(col, sizeof(col), "#%02x40%02x", r, b);
      fill = col;
    }
    svg += "<rect x=\"" + fmt_num(px) + "\" y=\"" + fmt_num(py) +
           "\" width=\"" + std::to_string(cell) + "\" height=\"" +
           std::to_string(cell) + "\" fill=\"" + fill + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string basin_json(const BasinReport& rep) {
  nlohmann::ordered_json j;
  j["points"] = rep.points.size();
  j["converged"] = rep.n_converged;
  j["diverged"] = rep.n_diverged;
  j["undecided"] = rep.n_undecided;
  j["eps_conv"] = rep.eps_conv;
  j["max_iter"] = rep.max_iter;
  long long worst_it = 0;
  double worst_peak = 0.0;
  for (const BasinPoint& bp : rep.points) {
    if (bp.orbit.verdict == Verdict::converged)
      worst_it = std::max(worst_it, bp.orbit.iterations);
    worst_peak = std::max(worst_peak, bp.orbit.peak_norm);
  }
  j["max_iterations_converged"] = worst_it;
  j["peak_norm_max"] = worst_peak;
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace jetconj
