#pragma once
// Deterministic run artifacts: flat key = value configs, CSV tables, JSON
// summaries, and SVG heat maps.
//
// Everything here is byte-stable for a fixed (config, seed): numbers are
// printed with an explicit locale-free %.12g-style format, JSON objects
// preserve insertion order, and no output embeds a timestamp or path that
// varies between runs.

#include <map>
#include <string>
#include <vector>

#include "basin.hpp"

namespace jetconj {

// Flat configuration: `key = value` lines, `#` comments, blank lines.
// Values stay strings; typed accessors parse on demand.
struct Config {
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) != 0; }
  std::string get_str(const std::string& key,
                      const std::string& fallback) const;
  double get_num(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
};

// Parse config text.  Throws std::invalid_argument on malformed lines,
// duplicate keys, or keys not in `allowed` (empty allowed = accept all);
// the CLI maps these to the usage exit code.
Config parse_config(const std::string& text,
                    const std::vector<std::string>& allowed = {});
Config load_config(const std::string& path,
                   const std::vector<std::string>& allowed = {});

// Locale-independent %.12g of a double; the only float-to-text routine the
// artifact writers use.
std::string fmt_num(double x);
std::string fmt_cd(cd z);  // "re+imj" form with the same digits

// CSV with a header row; every cell already formatted by the caller.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

// One row per sampled point: coordinates, verdict, iterations, final and
// peak norms.
std::string basin_csv(const BasinReport& rep);

// 2-D heat map of iteration counts over the (Re z_1, Re z_2) slice of the
// sampled points: one SVG cell per sample, grey for non-converged.
std::string basin_svg(const BasinReport& rep, int cell = 12);

// JSON summary of a basin report (counts, parameters, per-verdict totals),
// serialized with keys in insertion order.
std::string basin_json(const BasinReport& rep);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace jetconj
