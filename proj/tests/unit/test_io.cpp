#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>

#include "json.hpp"
#include "oracles.hpp"
#include "solitwave/errors.hpp"
#include "solitwave/io.hpp"

using namespace solitwave;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "solitwave_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("number formatting round-trips exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(io::parse_double(io::format_double(x)) == x);
  }
  for (double x : {0.0, 1.0, -0.5, std::numeric_limits<double>::min(), std::numeric_limits<double>::max(), 1e-310}) {
    CHECK(io::parse_double(io::format_double(x)) == x);
  }
  CHECK(io::format_double(0.1).find(',') == std::string::npos);
  CHECK(io::parse_double(" +2.5\r") == 2.5);
  CHECK_THROWS_AS(io::parse_double("1.0x"), ValidationError);
  CHECK_THROWS_AS(io::parse_double(""), ValidationError);
  CHECK_THROWS_AS(io::parse_double("1,5"), ValidationError);
}

TEST_CASE("profile CSV round trip is bit exact") {
  const Grid g(37.5, 64);
  std::mt19937_64 rng(3);
  const WaveProfile w(g, oracle::random_smooth_field(g, rng), oracle::random_smooth_field(g, rng));
  const fs::path path = scratch("profile.csv");
  io::write_profile_csv(path, w);
  CHECK(io::read_text(path).rfind("x,psi,v\n", 0) == 0);

  const WaveProfile back = io::read_profile_csv(path);
  CHECK(back.grid == g);
  CHECK(same_bits(back.psi, w.psi));
  CHECK(same_bits(back.v, w.v));

  const WaveProfile with_grid = io::read_profile_csv(path, g);
  CHECK(same_bits(with_grid.psi, w.psi));
  CHECK_THROWS_AS(io::read_profile_csv(path, Grid(37.5, 128)), ValidationError);
  CHECK_THROWS_AS(io::read_profile_csv(path, Grid(40.0, 64)), ValidationError);
}

TEST_CASE("snapshot CSV stores u before eta") {
  const Grid g(10.0, 8);
  WaveProfile w(g);
  for (std::size_t j = 0; j < 8; ++j) {
    w.psi[j] = static_cast<double>(j);
    w.v[j] = -static_cast<double>(j);
  }
  const fs::path path = scratch("snapshot.csv");
  io::write_snapshot_csv(path, w);
  const std::string text = io::read_text(path);
  CHECK(text.rfind("x,u,eta\n", 0) == 0);
  CHECK(text.find("\n1.25,-1,1\n") != std::string::npos);
  const WaveProfile back = io::read_profile_csv(path);
  CHECK(same_bits(back.psi, w.psi));
  CHECK(same_bits(back.v, w.v));
}

TEST_CASE("malformed profile CSV is rejected with a location") {
  const fs::path path = scratch("bad.csv");
  io::write_text(path, "x,psi,v\n0,1,2\n1,abc,3\n");
  try {
    io::read_profile_csv(path);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  io::write_text(path, "x,y,z\n0,1,2\n");
  CHECK_THROWS_AS(io::read_profile_csv(path), ValidationError);
  io::write_text(path, "x,psi,v\n0,1\n");
  CHECK_THROWS_AS(io::read_profile_csv(path), ValidationError);
  CHECK_THROWS_AS(io::read_profile_csv(scratch("missing.csv")), ValidationError);
}

TEST_CASE("functional report JSON has exactly the nine fields") {
  FunctionalReport r{};
  r.i1 = 1.5;
  r.i2 = -0.25;
  r.i_omega = 2.0;
  r.k = 3.0;
  r.n = 4.0;
  r.p_omega = 1e-17;
  r.j_omega = 0.1;
  r.residual_inf = 1e-12;
  r.residual_l2 = 2e-12;
  r.amplitude = 9.0;
  const auto j = nlohmann::json::parse(io::functional_report_json(r));
  CHECK(j.size() == 9);
  for (const char* key : {"i1", "i2", "i_omega", "k", "n", "p_omega", "j_omega", "residual_inf", "residual_l2"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["i2"].get<double>() == -0.25);
  CHECK(j["p_omega"].get<double>() == 1e-17);
  CHECK(io::functional_report_json(r) == io::functional_report_json(r));
}

TEST_CASE("expansion JSON round trip") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  std::vector<double> psi(17), v(17);
  for (auto& x : psi) x = nd(rng);
  for (auto& x : v) x = nd(rng);
  const CosineExpansion e(50.0, psi, v);
  const fs::path path = scratch("expansion.json");
  io::write_expansion(path, e);
  const CosineExpansion back = io::read_expansion(path);
  CHECK(back.l == 50.0);
  CHECK(same_bits(back.psi, psi));
  CHECK(same_bits(back.v, v));

  io::write_text(path, "{\"l\": 50, \"psi_coeffs\": [1, 2]}");
  CHECK_THROWS_AS(io::read_expansion(path), ValidationError);
  io::write_text(path, "{\"l\": 50, ");
  CHECK_THROWS_AS(io::read_expansion(path), ValidationError);
}

TEST_CASE("history CSV headers") {
  SolveReport s{};
  s.history.push_back({0.5, 1.0, 1.0, 0.1});
  const fs::path p1 = scratch("hist.csv");
  io::write_petviashvili_history(p1, s);
  CHECK(io::read_text(p1) == "iteration,relative_change,m_s,n_s,residual_inf\n1,0.5,1,1,0.10000000000000001\n");

  NewtonReport n{};
  n.history.push_back({1.0, 0.5, 0.25, 1.0});
  io::write_newton_history(p1, n);
  CHECK(io::read_text(p1) == "iteration,step_norm,relative_step,residual_inf,damping\n1,1,0.5,0.25,1\n");
}
