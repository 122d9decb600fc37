#include "scdc/profile_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scdc {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_profile_csv(const Profile& pr, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_profile_csv: cannot open " + path);
  out << "# left_tail=" << format_g17(pr.left_tail) << "\n";
  out << "# right_tail=" << format_g17(pr.right_tail) << "\n";
  out << "z,p\n";
  for (int i = 0; i < pr.n(); ++i)
    out << format_g17(pr.grid.z(i)) << "," << format_g17(pr.values[static_cast<std::size_t>(i)])
        << "\n";
  if (!out) throw std::runtime_error("write_profile_csv: write failed for " + path);
}

Profile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_profile_csv: cannot open " + path);

  Profile pr;
  bool have_left = false, have_right = false, have_header = false;
  std::vector<double> zs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      double val = std::strtod(line.c_str() + eq + 1, nullptr);
      if (key == "left_tail") {
        pr.left_tail = val;
        have_left = true;
      } else if (key == "right_tail") {
        pr.right_tail = val;
        have_right = true;
      }
      continue;
    }
    if (!have_header) {
      if (line != "z,p") throw std::runtime_error("read_profile_csv: expected 'z,p' header");
      have_header = true;
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("read_profile_csv: malformed row '" + line + "'");
    zs.push_back(std::strtod(line.c_str(), nullptr));
    pr.values.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
  }
  if (!have_header || zs.size() < 2)
    throw std::runtime_error("read_profile_csv: need a header and at least 2 rows");

  pr.grid.z_min = zs.front();
  pr.grid.z_max = zs.back();
  pr.grid.n = static_cast<int>(zs.size());
  double h = pr.grid.h();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    double expect = pr.grid.z_min + h * static_cast<double>(i);
    if (std::fabs(zs[i] - expect) > 1e-9 * std::max(1.0, std::fabs(expect)))
      throw std::runtime_error("read_profile_csv: grid is not uniform");
  }
  if (!have_left) pr.left_tail = pr.values.front();
  if (!have_right) pr.right_tail = pr.values.back();
  pr.monotone_flag = detect_monotone(pr.values);
  return pr;
}

}  // namespace scdc
