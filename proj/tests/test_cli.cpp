#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "biphoton/commands.hpp"
#include "biphoton/config.hpp"
#include "biphoton/csv.hpp"

using namespace biphoton;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line;
  }
  return -1;
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("parse_number: decimals and pi literals") {
  CHECK(parse_number("0.25") == 0.25);
  CHECK(parse_number("1e-3") == 1e-3);
  CHECK(parse_number("0.5pi") == doctest::Approx(M_PI / 2.0));
  CHECK(parse_number("-2pi") == doctest::Approx(-2.0 * M_PI));
  CHECK_THROWS_AS(parse_number("pi"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number("0.5 pi"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number(""), std::invalid_argument);
}

TEST_CASE("parse_config: minimal valid configs and defaults") {
  const auto c = parse_config(
      "[spectrum]\n"
      "kind = spdc_type1\n"
      "sigma = 1.0\n"
      "phase_matching = flat\n");
  CHECK(c.kind == SpectrumKind::SpdcType1);
  CHECK(c.nu_max == 6.0);
  CHECK(c.points == 257);
  CHECK(c.bs_theta == doctest::Approx(M_PI / 4.0));
  CHECK(c.sigma.value() == 1.0);
  CHECK(c.phase_matching->kind == PhaseMatching::Kind::Flat);

  const auto mz = parse_config(
      "[spectrum]\n"
      "kind = spdc_type1\n"
      "sigma = 1.0\n"
      "phase_matching = delta\n"
      "[optics]\n"
      "mz_delta_L = 1.0\n"
      "mz_theta = 0.5pi\n");
  CHECK(mz.mz_theta.value() == doctest::Approx(M_PI / 2.0));

  // comments and blank lines are ignored
  const auto commented = parse_config(
      "# header comment\n"
      "[spectrum]  # trailing\n"
      "kind = spdc_type1\n"
      "\n"
      "sigma = 1.0   # bandwidth\n"
      "phase_matching = flat\n");
  CHECK(commented.sigma.value() == 1.0);
}

TEST_CASE("parse_config: errors carry the offending line number") {
  CHECK(error_line("[grid]\npoints = 256\n[spectrum]\nkind = spdc_type1\nsigma = 1\n"
                   "phase_matching = flat\n") == 2);
  CHECK(error_line("[grid]\nnu_max = -2\n[spectrum]\nkind = spdc_type1\nsigma = 1\n"
                   "phase_matching = flat\n") == 2);
  CHECK(error_line("[grid]\nbogus_key = 1\n[spectrum]\nkind = spdc_type1\nsigma = 1\n"
                   "phase_matching = flat\n") == 2);
  CHECK(error_line("[nonsense]\n") == 1);
  CHECK(error_line("[spectrum]\nkind = spdc_type1\nsigma = abc\nphase_matching = flat\n") == 3);
  CHECK(error_line("[spectrum]\nkind = spdc_type1\nsigma = 1\nsigma = 2\n"
                   "phase_matching = flat\n") == 4);
  CHECK(error_line("[spectrum]\nkind = spdc_type9\n") == 2);
  CHECK(error_line("kind = spdc_type1\n") == 1);  // key before any section
  // sigma_p without gaussian phase matching
  CHECK(error_line("[spectrum]\nkind = spdc_type1\nsigma = 1\nphase_matching = flat\n"
                   "sigma_p = 1\n") == 5);
  // wave plate on a one-polarization source
  CHECK(error_line("[spectrum]\nkind = spdc_type1\nsigma = 1\nphase_matching = flat\n"
                   "[optics]\nwave_plate_theta = 1\n") == 6);
  // Mach-Zehnder on a two-polarization source
  CHECK(error_line("[spectrum]\nkind = spdc_type2\nsigma = 1\nphase_matching = flat\n"
                   "[optics]\nmz_delta_L = 1\n") == 6);
  // Bell nodes must land on the grid
  CHECK(error_line("[spectrum]\nkind = bell_psi_minus\ndelta_omega = 2.0\n") == 3);
  CHECK(error_line("[spectrum]\nkind = bell_psi_minus\ndelta_omega = 3.0\n") == -1);
  // missing kind
  CHECK(error_line("[grid]\nnu_max = 6\n") == 0);
}

TEST_CASE("parse_config round-trips through render_config") {
  std::vector<std::string> sources = {
      "[spectrum]\nkind = spdc_type1\nsigma = 1.5\nphase_matching = gaussian\nsigma_p = 0.3\n"
      "delta_omega = 0.25\n[optics]\ndelta_z = 0.7\nmz_delta_L = 2\nmz_theta = 0.25pi\n",
      "[grid]\nnu_max = 8\npoints = 129\n[spectrum]\nkind = product_gaussian\nsigma1 = 1\n"
      "sigma2 = 2\ndelta_omega = 1\n[beamsplitter]\ntheta = 0.3\nphi_tau = 0.1\nphi_rho = 0.2\n",
      "[spectrum]\nkind = spdc_type2\nsigma = 1\nphase_matching = delta\nomega_alpha = -1\n"
      "omega_beta = 1\ntheta = 0.5pi\n[optics]\nwave_plate_theta = 0.1\n",
      "[spectrum]\nkind = two_mode_product\nsigma1 = 1\nsigma2 = 1.3\nn_alpha = 0.4\n"
      "theta = 1pi\n",
      "[spectrum]\nkind = bell_psi_minus\ndelta_omega = 3\n",
  };
  for (const auto& text : sources) {
    const ScenarioConfig c = parse_config(text);
    const ScenarioConfig back = parse_config(render_config(c));
    CHECK(back == c);
  }
}

TEST_CASE("format_number and CsvTable layout") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(0.432332358382) == "0.432332358");  // 9 significant digits
  CHECK(format_number(1e-12) == "1e-12");
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", "2"}, {"3", "4"}};
  CHECK(t.to_string() == "a,b\n1,2\n3,4\n");
}

TEST_CASE("cmd_scan: header shape, value ranges, determinism") {
  const ScenarioConfig c = parse_config(
      "[spectrum]\nkind = spdc_type1\nsigma = 1\nphase_matching = flat\n");
  const auto out = temp_file("biphoton_scan_test.csv");
  const CsvTable t = cmd_scan(c, ScanParam::DeltaZ, -3.0, 3.0, 13, out);
  CHECK(t.header == std::vector<std::string>{"delta_z", "pc", "reference", "verdict"});
  REQUIRE(t.rows.size() == 13);
  for (const auto& row : t.rows) {
    const double pc = std::stod(row[1]);
    CHECK(pc >= 0.0);
    CHECK(pc <= 1.0);
    CHECK((row[3] == "CI" || row[3] == "ACI" || row[3] == "NONE"));
  }
  const std::string first = slurp(out);
  cmd_scan(c, ScanParam::DeltaZ, -3.0, 3.0, 13, out);
  CHECK(slurp(out) == first);  // byte-identical rerun

  const ScenarioConfig c2 = parse_config(
      "[spectrum]\nkind = two_mode_product\nsigma = 1\ntheta = 1pi\n");
  const CsvTable t2 = cmd_scan(c2, ScanParam::DeltaZ, -2.0, 2.0, 5, out);
  CHECK(t2.header == std::vector<std::string>{"delta_z", "pc", "reference", "verdict", "pc_aa",
                                              "pc_bb", "pc_cross"});
  std::filesystem::remove(out);
}

TEST_CASE("cmd_contour: envelope rows and the atoms rejection") {
  const auto out = temp_file("biphoton_contour_test.csv");
  const ScenarioConfig c = parse_config(
      "[grid]\nnu_max = 4\npoints = 33\n"
      "[spectrum]\nkind = product_gaussian\nsigma = 1\n");
  const CsvTable t = cmd_contour(c, out);
  CHECK(t.header == std::vector<std::string>{"nu1", "nu2", "value"});
  CHECK(t.rows.size() == 33u * 33u);
  // row-major ordering: first block holds nu1 = -4 against all nu2
  CHECK(t.rows[0][0] == "-4");
  CHECK(t.rows[0][1] == "-4");
  CHECK(t.rows[32][1] == "4");

  const ScenarioConfig bell = parse_config(
      "[spectrum]\nkind = bell_psi_minus\ndelta_omega = 3\n");
  CHECK_THROWS_AS(cmd_contour(bell, out), std::invalid_argument);
  std::filesystem::remove(out);
}

TEST_CASE("cmd_validate: oracles agree and bells report no oracle") {
  const ScenarioConfig type1 = parse_config(
      "[spectrum]\nkind = spdc_type1\nsigma = 1\nphase_matching = flat\n");
  const auto r1 = cmd_validate(type1, ScanParam::DeltaZ, -5.0, 5.0, 21, 1e-6);
  REQUIRE(!r1.no_oracle);
  CHECK(r1.all_pass());
  CHECK(r1.checks.front().max_deviation < 1e-6);

  const ScenarioConfig mz = parse_config(
      "[spectrum]\nkind = spdc_type1\nsigma = 1\nphase_matching = gaussian\nsigma_p = 1\n"
      "[optics]\nmz_delta_L = 1\nmz_theta = 0.25pi\n");
  CHECK(cmd_validate(mz, ScanParam::DeltaZ, -4.0, 4.0, 9, 1e-6).all_pass());
  CHECK(cmd_validate(mz, ScanParam::TwoTheta, 0.0, 2.0 * M_PI, 9, 1e-6).all_pass());
  CHECK(cmd_validate(mz, ScanParam::DeltaL, 0.5, 3.0, 6, 1e-6).all_pass());

  const ScenarioConfig type2 = parse_config(
      "[grid]\nnu_max = 10\npoints = 401\n"
      "[spectrum]\nkind = spdc_type2\nsigma = 1\nphase_matching = gaussian\nsigma_p = 1\n"
      "omega_alpha = -1pi\nomega_beta = 1pi\ntheta = 0.5pi\n");
  CHECK(cmd_validate(type2, ScanParam::DeltaZ, -3.0, 3.0, 13, 1e-6).all_pass());

  const ScenarioConfig two_mode = parse_config(
      "[spectrum]\nkind = two_mode_product\nsigma1 = 1\nsigma2 = 1.5\nn_alpha = 0.3\n"
      "theta = 0.5pi\n");
  const auto rm = cmd_validate(two_mode, ScanParam::DeltaZ, -3.0, 3.0, 13, 1e-6);
  REQUIRE(rm.checks.size() == 4);
  CHECK(rm.all_pass());

  const ScenarioConfig bell = parse_config(
      "[spectrum]\nkind = bell_psi_minus\ndelta_omega = 3\n");
  CHECK(cmd_validate(bell, ScanParam::DeltaZ, -1.0, 1.0, 3, 1e-6).no_oracle);

  // a non-50/50 splitter has no closed form either
  const ScenarioConfig skew = parse_config(
      "[spectrum]\nkind = spdc_type1\nsigma = 1\nphase_matching = flat\n"
      "[beamsplitter]\ntheta = 0.6\n");
  CHECK(cmd_validate(skew, ScanParam::DeltaZ, -1.0, 1.0, 3, 1e-6).no_oracle);
}

TEST_CASE("write_atomic leaves no temporary behind") {
  const auto out = temp_file("biphoton_atomic_test.txt");
  write_atomic(out, "payload");
  CHECK(slurp(out) == "payload");
  CHECK(!std::filesystem::exists(out.string() + ".tmp"));
  std::filesystem::remove(out);
}
