#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "biphoton/beamsplitter.hpp"
#include "biphoton/scenario.hpp"
#include "biphoton/spectrum.hpp"

namespace biphoton {

// Parse or validation failure, carrying the 1-based line of the offending
// entry (0 when no line applies).
struct ConfigError : std::runtime_error {
  int line = 0;
  ConfigError(int line_, const std::string& what_);
};

enum class SpectrumKind {
  ProductGaussian,
  SpdcType1,
  SpdcType2,
  TwoModeProduct,
  BellPhiPlus,
  BellPhiMinus,
  BellPsiPlus,
  BellPsiMinus,
};

const char* to_string(SpectrumKind k);
bool is_two_polarization(SpectrumKind k);

struct ScenarioConfig {
  // [grid]
  double nu_max = 6.0;
  int points = 257;

  // [spectrum]
  SpectrumKind kind = SpectrumKind::SpdcType1;
  std::optional<double> sigma;    // shorthand for sigma1 = sigma2
  std::optional<double> sigma1;   // bandwidth of photon 1 / alpha mode
  std::optional<double> sigma2;   // bandwidth of photon 2 / beta mode
  std::optional<PhaseMatching> phase_matching;
  std::optional<double> delta_omega;
  std::optional<double> omega_alpha;
  std::optional<double> omega_beta;
  std::optional<double> n_alpha;
  std::optional<double> theta;

  // [optics]
  double delta_z = 0.0;
  std::optional<double> mz_delta_L;
  std::optional<double> mz_theta;
  std::optional<double> wave_plate_theta;

  // [beamsplitter]
  double bs_theta = M_PI / 4.0;
  double bs_phi_tau = 0.0;
  double bs_phi_rho = 0.0;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&);
};

// Parses the sectioned key = value text ('#' starts a comment; values are
// decimal numbers, bare identifiers, or '<number>pi'). Unknown sections or
// keys, malformed values, and constructor precondition violations are
// reported as ConfigError with the line number.
ScenarioConfig parse_config(std::string_view text);

// Inverse of parse_config up to formatting: parse_config(render_config(c)) == c.
std::string render_config(const ScenarioConfig& c);

// Scenario assembly from a validated config.
FrequencyGrid build_grid(const ScenarioConfig& c);
SourceState build_source(const ScenarioConfig& c);
OpticalPath build_path(const ScenarioConfig& c);
BeamSplitter build_beamsplitter(const ScenarioConfig& c);

// Shared numeric-literal grammar: "0.25", "1e-3", "0.5pi", "-2pi".
// Throws std::invalid_argument on anything else.
double parse_number(std::string_view text);

}  // namespace biphoton
