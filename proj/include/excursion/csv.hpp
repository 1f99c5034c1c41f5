#pragma once

#include <string>
#include <vector>

namespace excursion::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Shortest round-trippable decimal representation; '.' separator,
/// locale-independent.
std::string format_double(double v);

std::string to_string(const Table& t);
void write_file(const std::string& path, const Table& t);
Table read_file(const std::string& path);
Table parse(const std::string& text);

}  // namespace excursion::csv
