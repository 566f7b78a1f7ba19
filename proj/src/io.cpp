#include "imconf/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "imconf/errors.hpp"

namespace imconf::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

bool parse_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(v);
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(split(line));
  }
  return rows;
}

}  // namespace

std::vector<double> read_values_csv(const std::string& path) {
  const auto rows = read_rows(path);
  std::vector<double> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double v;
    if (rows[i].size() == 1 && parse_double(rows[i][0], v)) {
      out.push_back(v);
      continue;
    }
    if (i == 0) continue;  // header
    throw ParameterError(path + ": row " + std::to_string(i + 1) + " is not a single number");
  }
  if (out.empty()) throw ParameterError(path + ": no values");
  return out;
}

models::behrens_fisher::BFData read_bf_csv(const std::string& path) {
  auto rows = read_rows(path);
  double probe;
  if (!rows.empty() && !rows[0].empty() && !parse_double(rows[0].back(), probe)) rows.erase(rows.begin());
  if (rows.empty()) throw ParameterError(path + ": no data rows");
  models::behrens_fisher::BFData d;
  if (rows[0].size() == 3) {
    if (rows.size() != 2) throw ParameterError(path + ": summary form needs exactly two rows n,mean,variance");
    double v[2][3];
    for (int g = 0; g < 2; ++g)
      for (int k = 0; k < 3; ++k)
        if (!parse_double(rows[g][k], v[g][k])) throw ParameterError(path + ": bad summary value");
    d = {static_cast<int>(v[0][0]), static_cast<int>(v[1][0]), v[0][1], v[1][1], v[0][2], v[1][2]};
  } else if (rows[0].size() == 2) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> groups;
    for (const auto& r : rows) {
      double v;
      if (r.size() != 2 || !parse_double(r[1], v)) throw ParameterError(path + ": bad group,value row");
      if (!groups.count(r[0])) order.push_back(r[0]);
      groups[r[0]].push_back(v);
    }
    if (order.size() != 2) throw ParameterError(path + ": raw form needs exactly two groups");
    auto stats = [](const std::vector<double>& xs, double& mean, double& var) {
      mean = 0.0;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(xs.size());
      var = 0.0;
      for (double x : xs) var += (x - mean) * (x - mean);
      var /= static_cast<double>(xs.size() - 1);
    };
    const auto& a = groups[order[0]];
    const auto& b = groups[order[1]];
    if (a.size() < 2 || b.size() < 2) throw ParameterError(path + ": each group needs at least two values");
    d.n1 = static_cast<int>(a.size());
    d.n2 = static_cast<int>(b.size());
    stats(a, d.m1, d.v1);
    stats(b, d.m2, d.v2);
  } else {
    throw ParameterError(path + ": expected n,mean,variance or group,value rows");
  }
  d.validate();
  return d;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string Table::to_csv() const {
  std::ostringstream os;
  for (const auto& [k, v] : metadata) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_number(r[i]);
    os << '\n';
  }
  return os.str();
}

std::string Table::to_json() const {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata) j["metadata"][k] = v;
  j["columns"] = columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (double v : r) {
      if (std::isfinite(v))
        row.push_back(v);
      else
        row.push_back(format_number(v));
    }
    j["rows"].push_back(row);
  }
  return j.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParameterError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ParameterError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ParameterError("cannot rename into " + path + ": " + ec.message());
  }
}

}  // namespace imconf::io
