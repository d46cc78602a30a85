#include "phasefront/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "phasefront/error.hpp"

namespace phasefront {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

double number(const std::string& tok, int line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    fail(line, "expected a finite number, got '" + tok + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double interpolate_sound(const std::vector<std::pair<double, double>>& table,
                         double lambda) {
  if (table.empty()) throw Error(ErrorCode::InvalidArgument, "empty a(lambda) table");
  if (lambda <= table.front().first) return table.front().second;
  if (lambda >= table.back().first) return table.back().second;
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (lambda <= table[i].first) {
      const auto [l0, a0] = table[i - 1];
      const auto [l1, a1] = table[i];
      return a0 + (a1 - a0) * (lambda - l0) / (l1 - l0);
    }
  }
  return table.back().second;
}

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  std::string section;
  std::map<std::string, double> phase;
  std::map<std::string, int> phase_line;
  std::vector<std::pair<double, double>> table;
  int table_line = 0;
  bool saw_T = false;

  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "phase" && section != "data" && section != "run") {
        fail(line, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (val.empty()) fail(line, "missing value for '" + key + "'");

    if (section == "phase") {
      if (key == "a_table") {
        for (const std::string& pair : split(val, ',')) {
          const auto colon = pair.find(':');
          if (colon == std::string::npos) fail(line, "a_table entries look like lambda:a");
          table.emplace_back(number(trim(pair.substr(0, colon)), line),
                             number(trim(pair.substr(colon + 1)), line));
        }
        table_line = line;
      } else if (key == "a_l" || key == "a_m" || key == "a_r" || key == "x_a" ||
                 key == "x_b" || key == "lambda_l" || key == "lambda_m" ||
                 key == "lambda_r") {
        if (phase.count(key)) fail(line, "duplicate key '" + key + "'");
        phase[key] = number(val, line);
        phase_line[key] = line;
      } else {
        fail(line, "unknown phase key '" + key + "'");
      }
    } else if (section == "data") {
      if (key != "piece") fail(line, "unknown data key '" + key + "'");
      const auto w = words(val);
      if (w.size() != 3) fail(line, "piece needs three numbers: x v u");
      DataPiece p{number(w[0], line), number(w[1], line), number(w[2], line)};
      if (!(p.v > 0.0)) fail(line, "specific volume must be positive");
      if (!sc.data.empty() && !(p.x > sc.data.back().x)) {
        fail(line, "piece positions must be strictly increasing");
      }
      sc.data.push_back(p);
    } else if (section == "run") {
      if (key == "nu") {
        sc.nu = number(val, line);
        if (!(sc.nu > 0.0)) fail(line, "nu must be positive");
      } else if (key == "T") {
        sc.T = number(val, line);
        if (!(sc.T >= 0.0)) fail(line, "T must be non-negative");
        saw_T = true;
      } else if (key == "sigma0") {
        sc.sigma0 = number(val, line);
        if (!(sc.sigma0 > 0.0)) fail(line, "sigma0 must be positive");
      } else if (key == "seed") {
        const char* first = val.data();
        const auto [ptr, ec] = std::from_chars(first, first + val.size(), sc.seed);
        if (ec != std::errc() || ptr != first + val.size()) fail(line, "seed must be an unsigned integer");
      } else if (key == "snapshots") {
        sc.snapshots.clear();
        for (const std::string& t : split(val, ',')) sc.snapshots.push_back(number(t, line));
      } else {
        fail(line, "unknown run key '" + key + "'");
      }
    } else {
      fail(line, "key outside of any section");
    }
  }

  const bool direct = phase.count("a_l") || phase.count("a_m") || phase.count("a_r");
  const bool by_lambda =
      phase.count("lambda_l") || phase.count("lambda_m") || phase.count("lambda_r");
  if (direct && by_lambda) fail(line, "give either a_l/a_m/a_r or lambda_l/m/r, not both");
  auto need = [&](const char* k) {
    if (!phase.count(k)) fail(line, std::string("missing phase key '") + k + "'");
    return phase[k];
  };
  if (by_lambda) {
    if (table.empty()) fail(line, "lambda values need an a_table");
    std::sort(table.begin(), table.end());
    for (std::size_t i = 1; i < table.size(); ++i) {
      if (table[i].first == table[i - 1].first) fail(table_line, "duplicate lambda in a_table");
    }
    for (const auto& [l, a] : table) {
      if (!(a > 0.0)) fail(table_line, "a_table values must be positive");
    }
    sc.phase.a_l = interpolate_sound(table, need("lambda_l"));
    sc.phase.a_m = interpolate_sound(table, need("lambda_m"));
    sc.phase.a_r = interpolate_sound(table, need("lambda_r"));
  } else {
    sc.phase.a_l = need("a_l");
    sc.phase.a_m = need("a_m");
    sc.phase.a_r = need("a_r");
    for (const char* k : {"a_l", "a_m", "a_r"}) {
      if (!(phase[k] > 0.0)) fail(phase_line[k], std::string(k) + " must be positive");
    }
  }
  sc.phase.x_a = need("x_a");
  sc.phase.x_b = need("x_b");
  if (!(sc.phase.x_a < sc.phase.x_b)) fail(phase_line["x_b"], "need x_a < x_b");
  if (sc.data.empty()) fail(line, "no [data] pieces");
  if (!saw_T) fail(line, "missing run key 'T'");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream os;
  os << "[phase]\n";
  os << "a_l = " << format_double(sc.phase.a_l) << "\n";
  os << "a_m = " << format_double(sc.phase.a_m) << "\n";
  os << "a_r = " << format_double(sc.phase.a_r) << "\n";
  os << "x_a = " << format_double(sc.phase.x_a) << "\n";
  os << "x_b = " << format_double(sc.phase.x_b) << "\n";
  os << "\n[data]\n";
  for (const DataPiece& p : sc.data) {
    os << "piece = " << format_double(p.x) << " " << format_double(p.v) << " "
       << format_double(p.u) << "\n";
  }
  os << "\n[run]\n";
  os << "nu = " << format_double(sc.nu) << "\n";
  os << "T = " << format_double(sc.T) << "\n";
  os << "sigma0 = " << format_double(sc.sigma0) << "\n";
  os << "seed = " << sc.seed << "\n";
  if (!sc.snapshots.empty()) {
    os << "snapshots = ";
    for (std::size_t i = 0; i < sc.snapshots.size(); ++i) {
      if (i) os << ", ";
      os << format_double(sc.snapshots[i]);
    }
    os << "\n";
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + tmp.string() + "'");
    out << content;
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot rename onto '" + path + "': " + ec.message());
}

}  // namespace phasefront
