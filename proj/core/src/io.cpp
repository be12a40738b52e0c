#include "solitwave/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "solitwave/errors.hpp"

namespace solitwave::io {

namespace {

using nlohmann::json;

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> json_doubles(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw ValidationError(std::string("missing array '") + key + "'");
  std::vector<double> out;
  out.reserve(j[key].size());
  for (const auto& x : j[key]) {
    if (!x.is_number()) throw ValidationError(std::string("non-numeric entry in '") + key + "'");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ValidationError("malformed number '" + std::string(s) + "'");
  }
  return x;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

void write_three_columns(const std::filesystem::path& path, const char* header, const Grid& g,
                         const std::vector<double>& a, const std::vector<double>& b) {
  std::string text = std::string(header) + "\n";
  text.reserve(g.size() * 72);
  for (std::size_t j = 0; j < g.size(); ++j) {
    text += format_double(g.x(j));
    text += ',';
    text += format_double(a[j]);
    text += ',';
    text += format_double(b[j]);
    text += '\n';
  }
  write_text(path, text);
}

}  // namespace

void write_profile_csv(const std::filesystem::path& path, const WaveProfile& w) {
  write_three_columns(path, "x,psi,v", w.grid, w.psi, w.v);
}

void write_snapshot_csv(const std::filesystem::path& path, const WaveProfile& state) {
  write_three_columns(path, "x,u,eta", state.grid, state.v, state.psi);
}

WaveProfile read_profile_csv(const std::filesystem::path& path, const std::optional<Grid>& expected) {
  const std::string text = read_text(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("'" + path.string() + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool snapshot = false;
  if (line == "x,u,eta") {
    snapshot = true;
  } else if (line != "x,psi,v") {
    throw ValidationError("'" + path.string() + "': unexpected header '" + line + "'");
  }

  std::vector<double> x, a, b;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected 3 columns");
    }
    try {
      x.push_back(parse_double(fields[0]));
      a.push_back(parse_double(fields[1]));
      b.push_back(parse_double(fields[2]));
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (x.size() < 2) throw ValidationError("'" + path.string() + "' holds fewer than two samples");

  Grid grid = expected ? *expected : Grid((x[1] - x[0]) * static_cast<double>(x.size()), x.size());
  if (grid.size() != x.size()) {
    throw ValidationError("profile has " + std::to_string(x.size()) + " samples but the grid has " +
                          std::to_string(grid.size()));
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::abs(x[j] - grid.x(j)) > 1e-9 * grid.length()) {
      throw ValidationError("profile x column does not match the grid at row " + std::to_string(j + 2));
    }
  }
  if (snapshot) return WaveProfile(grid, std::move(b), std::move(a));
  return WaveProfile(grid, std::move(a), std::move(b));
}

std::string functional_report_json(const FunctionalReport& r) {
  json j = json::object();
  j["i1"] = r.i1;
  j["i2"] = r.i2;
  j["i_omega"] = r.i_omega;
  j["k"] = r.k;
  j["n"] = r.n;
  j["p_omega"] = r.p_omega;
  j["j_omega"] = r.j_omega;
  j["residual_inf"] = r.residual_inf;
  j["residual_l2"] = r.residual_l2;
  return j.dump(2) + "\n";
}

void write_functional_report(const std::filesystem::path& path, const FunctionalReport& r) {
  write_text(path, functional_report_json(r));
}

std::string expansion_json(const CosineExpansion& e) {
  json j = json::object();
  j["l"] = e.l;
  j["psi_coeffs"] = e.psi;
  j["v_coeffs"] = e.v;
  return j.dump(1) + "\n";
}

void write_expansion(const std::filesystem::path& path, const CosineExpansion& e) {
  write_text(path, expansion_json(e));
}

CosineExpansion read_expansion(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path.string() + "': " + e.what());
  }
  if (!j.is_object() || !j.contains("l") || !j["l"].is_number()) {
    throw ValidationError("'" + path.string() + "': missing numeric 'l'");
  }
  return CosineExpansion(j["l"].get<double>(), json_doubles(j, "psi_coeffs"), json_doubles(j, "v_coeffs"));
}

void write_petviashvili_history(const std::filesystem::path& path, const SolveReport& r) {
  std::string text = "iteration,relative_change,m_s,n_s,residual_inf\n";
  for (std::size_t i = 0; i < r.history.size(); ++i) {
    const auto& h = r.history[i];
    text += std::to_string(i + 1) + "," + format_double(h.relative_change) + "," + format_double(h.m_s) + "," +
            format_double(h.n_s) + "," + format_double(h.residual_inf) + "\n";
  }
  write_text(path, text);
}

void write_newton_history(const std::filesystem::path& path, const NewtonReport& r) {
  std::string text = "iteration,step_norm,relative_step,residual_inf,damping\n";
  for (std::size_t i = 0; i < r.history.size(); ++i) {
    const auto& h = r.history[i];
    text += std::to_string(i + 1) + "," + format_double(h.step_norm) + "," + format_double(h.relative_step) + "," +
            format_double(h.residual_inf) + "," + format_double(h.damping) + "\n";
  }
  write_text(path, text);
}

}  // namespace solitwave::io
