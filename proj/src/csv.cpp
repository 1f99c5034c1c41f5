#include "excursion/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace excursion::csv {

std::string format_double(double v) {
  char buf[64];
  // round-trippable and stable across runs
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = 0.0;
  std::from_chars(buf, buf + len, back);
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[64];
    const int slen = std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    double parsed = 0.0;
    std::from_chars(shorter, shorter + slen, parsed);
    if (parsed == v) return std::string(shorter, static_cast<std::size_t>(slen));
  }
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string to_string(const Table& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out << ',';
    out << t.header[i];
  }
  out << '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size()) {
      throw std::invalid_argument("csv: row width does not match header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

void write_file(const std::string& path, const Table& t) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
  f << to_string(t);
  if (!f) throw std::runtime_error("csv: write to '" + path + "' failed");
}

Table parse(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
  std::istringstream hl(line);
  std::string cell;
  while (std::getline(hl, cell, ',')) t.header.push_back(cell);
  if (t.header.empty()) throw std::runtime_error("csv: empty header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t next = line.find(',', pos);
      if (next == std::string::npos) next = line.size();
      double v = 0.0;
      const auto res = std::from_chars(line.data() + pos, line.data() + next, v);
      if (res.ec != std::errc() || res.ptr != line.data() + next) {
        throw std::runtime_error("csv: malformed number '" + line.substr(pos, next - pos) + "'");
      }
      row.push_back(v);
      pos = next + 1;
    }
    if (row.size() != t.header.size()) {
      throw std::runtime_error("csv: row width does not match header");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("csv: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

}  // namespace excursion::csv
