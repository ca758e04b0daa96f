#include "biphoton/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace biphoton {

ConfigError::ConfigError(int line_, const std::string& what_)
    : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what_ : what_),
      line(line_) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

double parse_plain_double(std::string_view s) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw std::invalid_argument("malformed number '" + std::string(s) + "'");
  return v;
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

// section -> key -> entry
using EntryMap = std::map<std::string, std::map<std::string, Entry>>;

EntryMap tokenize(std::string_view text) {
  static const std::set<std::string> sections{"grid", "spectrum", "optics", "beamsplitter"};
  EntryMap entries;
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      const std::string name{trim(line.substr(1, line.size() - 2))};
      if (!sections.count(name)) throw ConfigError(line_no, "unknown section '" + name + "'");
      section = name;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(line_no, "expected 'key = value'");
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (!is_identifier(key)) throw ConfigError(line_no, "malformed key '" + key + "'");
    if (value.empty()) throw ConfigError(line_no, "missing value for '" + key + "'");
    if (section.empty()) throw ConfigError(line_no, "key '" + key + "' before any [section]");
    auto [it, inserted] = entries[section].emplace(key, Entry{value, line_no, false});
    if (!inserted) throw ConfigError(line_no, "duplicate key '" + key + "'");
  }
  return entries;
}

struct Reader {
  EntryMap entries;

  const Entry* find(const std::string& section, const std::string& key) {
    auto sit = entries.find(section);
    if (sit == entries.end()) return nullptr;
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return nullptr;
    kit->second.used = true;
    return &kit->second;
  }

  std::optional<double> number(const std::string& section, const std::string& key) {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    try {
      return parse_number(e->value);
    } catch (const std::invalid_argument& err) {
      throw ConfigError(e->line, err.what());
    }
  }

  std::optional<std::string> ident(const std::string& section, const std::string& key) {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    if (!is_identifier(e->value))
      throw ConfigError(e->line, "expected an identifier for '" + key + "'");
    return e->value;
  }

  int line_of(const std::string& section, const std::string& key) const {
    return entries.at(section).at(key).line;
  }

  void reject_unused() const {
    for (const auto& [section, keys] : entries)
      for (const auto& [key, entry] : keys)
        if (!entry.used)
          throw ConfigError(entry.line,
                            "unknown key '" + key + "' in section [" + section + "]");
  }
};

SpectrumKind kind_from(const std::string& name, int line) {
  if (name == "product_gaussian") return SpectrumKind::ProductGaussian;
  if (name == "spdc_type1") return SpectrumKind::SpdcType1;
  if (name == "spdc_type2") return SpectrumKind::SpdcType2;
  if (name == "two_mode_product") return SpectrumKind::TwoModeProduct;
  if (name == "bell_phi_plus") return SpectrumKind::BellPhiPlus;
  if (name == "bell_phi_minus") return SpectrumKind::BellPhiMinus;
  if (name == "bell_psi_plus") return SpectrumKind::BellPsiPlus;
  if (name == "bell_psi_minus") return SpectrumKind::BellPsiMinus;
  throw ConfigError(line, "unknown spectrum kind '" + name + "'");
}

void require(bool ok, int line, const std::string& message) {
  if (!ok) throw ConfigError(line, message);
}

}  // namespace

double parse_number(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.size() > 2 && s.substr(s.size() - 2) == "pi")
    return parse_plain_double(s.substr(0, s.size() - 2)) * M_PI;
  return parse_plain_double(s);
}

const char* to_string(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::ProductGaussian: return "product_gaussian";
    case SpectrumKind::SpdcType1: return "spdc_type1";
    case SpectrumKind::SpdcType2: return "spdc_type2";
    case SpectrumKind::TwoModeProduct: return "two_mode_product";
    case SpectrumKind::BellPhiPlus: return "bell_phi_plus";
    case SpectrumKind::BellPhiMinus: return "bell_phi_minus";
    case SpectrumKind::BellPsiPlus: return "bell_psi_plus";
    case SpectrumKind::BellPsiMinus: return "bell_psi_minus";
  }
  return "spdc_type1";
}

bool is_two_polarization(SpectrumKind k) {
  return k == SpectrumKind::SpdcType2 || k == SpectrumKind::TwoModeProduct;
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  return a.nu_max == b.nu_max && a.points == b.points && a.kind == b.kind &&
         a.sigma == b.sigma && a.sigma1 == b.sigma1 && a.sigma2 == b.sigma2 &&
         a.phase_matching == b.phase_matching && a.delta_omega == b.delta_omega &&
         a.omega_alpha == b.omega_alpha && a.omega_beta == b.omega_beta &&
         a.n_alpha == b.n_alpha && a.theta == b.theta && a.delta_z == b.delta_z &&
         a.mz_delta_L == b.mz_delta_L && a.mz_theta == b.mz_theta &&
         a.wave_plate_theta == b.wave_plate_theta && a.bs_theta == b.bs_theta &&
         a.bs_phi_tau == b.bs_phi_tau && a.bs_phi_rho == b.bs_phi_rho;
}

ScenarioConfig parse_config(std::string_view text) {
  Reader reader{tokenize(text)};
  ScenarioConfig c;

  // [grid]
  if (const auto v = reader.number("grid", "nu_max")) {
    require(*v > 0.0, reader.line_of("grid", "nu_max"), "nu_max must be positive");
    c.nu_max = *v;
  }
  if (const Entry* e = reader.find("grid", "points")) {
    double v = 0.0;
    try {
      v = parse_number(e->value);
    } catch (const std::invalid_argument& err) {
      throw ConfigError(e->line, err.what());
    }
    const int p = static_cast<int>(std::lround(v));
    require(v == p, e->line, "points must be an integer");
    require(p >= 3, e->line, "points must be at least 3");
    require(p % 2 == 1, e->line, "points must be odd so nu = 0 is a grid node");
    c.points = p;
  }

  // [spectrum]
  const Entry* kind_entry = reader.find("spectrum", "kind");
  if (!kind_entry) throw ConfigError(0, "missing required key 'kind' in section [spectrum]");
  c.kind = kind_from(kind_entry->value, kind_entry->line);

  c.sigma = reader.number("spectrum", "sigma");
  c.sigma1 = reader.number("spectrum", "sigma1");
  c.sigma2 = reader.number("spectrum", "sigma2");
  c.delta_omega = reader.number("spectrum", "delta_omega");
  c.omega_alpha = reader.number("spectrum", "omega_alpha");
  c.omega_beta = reader.number("spectrum", "omega_beta");
  c.n_alpha = reader.number("spectrum", "n_alpha");
  c.theta = reader.number("spectrum", "theta");
  if (const auto pm = reader.ident("spectrum", "phase_matching")) {
    const int pm_line = reader.line_of("spectrum", "phase_matching");
    if (*pm == "flat" || *pm == "delta") {
      c.phase_matching = *pm == "flat" ? PhaseMatching::flat() : PhaseMatching::delta();
      if (reader.find("spectrum", "sigma_p"))
        throw ConfigError(reader.line_of("spectrum", "sigma_p"),
                          "sigma_p applies to gaussian phase matching only");
    } else if (*pm == "gaussian") {
      const auto sp = reader.number("spectrum", "sigma_p");
      require(sp.has_value(), pm_line, "gaussian phase matching needs sigma_p");
      require(*sp > 0.0, reader.line_of("spectrum", "sigma_p"), "sigma_p must be positive");
      c.phase_matching = PhaseMatching::gaussian(*sp);
    } else {
      throw ConfigError(pm_line, "phase_matching must be flat, gaussian, or delta");
    }
  } else if (reader.find("spectrum", "sigma_p")) {
    throw ConfigError(reader.line_of("spectrum", "sigma_p"),
                      "sigma_p without phase_matching = gaussian");
  }

  // [optics]
  if (const auto v = reader.number("optics", "delta_z")) c.delta_z = *v;
  c.mz_delta_L = reader.number("optics", "mz_delta_L");
  c.mz_theta = reader.number("optics", "mz_theta");
  c.wave_plate_theta = reader.number("optics", "wave_plate_theta");

  // [beamsplitter]
  if (const auto v = reader.number("beamsplitter", "theta")) c.bs_theta = *v;
  if (const auto v = reader.number("beamsplitter", "phi_tau")) c.bs_phi_tau = *v;
  if (const auto v = reader.number("beamsplitter", "phi_rho")) c.bs_phi_rho = *v;

  reader.reject_unused();

  // Cross-field validation, reported against the offending key's line.
  const auto line_of = [&](const char* section, const char* key) {
    return reader.line_of(section, key);
  };
  const auto forbid = [&](const bool present, const char* key, const std::string& why) {
    if (present) throw ConfigError(line_of("spectrum", key), why);
  };
  const int kind_line = kind_entry->line;
  const std::string kind_name = to_string(c.kind);

  const bool has_pair = c.sigma1.has_value() || c.sigma2.has_value();
  if (c.sigma && has_pair)
    throw ConfigError(line_of("spectrum", "sigma"), "give either sigma or sigma1/sigma2, not both");
  if (c.sigma1.has_value() != c.sigma2.has_value())
    throw ConfigError(kind_line, "sigma1 and sigma2 must be given together");
  for (const char* key : {"sigma", "sigma1", "sigma2"}) {
    const auto& v = key == std::string("sigma") ? c.sigma
                   : key == std::string("sigma1") ? c.sigma1 : c.sigma2;
    if (v && !(*v > 0.0))
      throw ConfigError(line_of("spectrum", key), "bandwidth must be positive");
  }

  switch (c.kind) {
    case SpectrumKind::ProductGaussian:
      require(c.sigma || has_pair, kind_line, kind_name + " needs sigma or sigma1/sigma2");
      forbid(c.phase_matching.has_value(), "phase_matching",
             kind_name + " takes no phase matching");
      forbid(c.omega_alpha.has_value(), "omega_alpha", kind_name + " uses delta_omega");
      forbid(c.omega_beta.has_value(), "omega_beta", kind_name + " uses delta_omega");
      forbid(c.n_alpha.has_value(), "n_alpha", kind_name + " has a single polarization");
      forbid(c.theta.has_value(), "theta", kind_name + " has no wave-plate phase");
      break;
    case SpectrumKind::SpdcType1:
      require(c.sigma.has_value(), kind_line, kind_name + " needs sigma");
      require(!has_pair, kind_line, kind_name + " uses a single bandwidth sigma");
      require(c.phase_matching.has_value(), kind_line, kind_name + " needs phase_matching");
      forbid(c.omega_alpha.has_value(), "omega_alpha", kind_name + " uses delta_omega");
      forbid(c.omega_beta.has_value(), "omega_beta", kind_name + " uses delta_omega");
      forbid(c.n_alpha.has_value(), "n_alpha", kind_name + " has a single polarization");
      forbid(c.theta.has_value(), "theta", kind_name + " has no wave-plate phase");
      break;
    case SpectrumKind::SpdcType2:
      require(c.sigma || has_pair, kind_line, kind_name + " needs sigma or sigma1/sigma2");
      require(c.phase_matching.has_value(), kind_line, kind_name + " needs phase_matching");
      forbid(c.delta_omega.has_value(), "delta_omega",
             kind_name + " uses omega_alpha/omega_beta");
      forbid(c.n_alpha.has_value(), "n_alpha", kind_name + " has fixed channel weights");
      break;
    case SpectrumKind::TwoModeProduct:
      require(c.sigma || has_pair, kind_line, kind_name + " needs sigma or sigma1/sigma2");
      forbid(c.phase_matching.has_value(), "phase_matching",
             kind_name + " takes no phase matching");
      forbid(c.delta_omega.has_value(), "delta_omega",
             kind_name + " uses omega_alpha/omega_beta");
      if (c.n_alpha && !(*c.n_alpha > 0.0 && *c.n_alpha < 1.0))
        throw ConfigError(line_of("spectrum", "n_alpha"), "n_alpha must lie in (0, 1)");
      break;
    case SpectrumKind::BellPhiPlus:
    case SpectrumKind::BellPhiMinus:
    case SpectrumKind::BellPsiPlus:
    case SpectrumKind::BellPsiMinus: {
      require(c.delta_omega.has_value(), kind_line, kind_name + " needs delta_omega");
      forbid(c.sigma.has_value(), "sigma", kind_name + " is monochromatic");
      forbid(has_pair, "sigma1", kind_name + " is monochromatic");
      forbid(c.phase_matching.has_value(), "phase_matching", kind_name + " takes no phase matching");
      forbid(c.omega_alpha.has_value(), "omega_alpha", kind_name + " uses delta_omega");
      forbid(c.omega_beta.has_value(), "omega_beta", kind_name + " uses delta_omega");
      forbid(c.n_alpha.has_value(), "n_alpha", kind_name + " has a single polarization");
      forbid(c.theta.has_value(), "theta", kind_name + " has no wave-plate phase");
      // Node placement check against the (possibly defaulted) grid.
      const FrequencyGrid grid{c.nu_max, c.points};
      const double node = *c.delta_omega / 2.0;
      const double frac = node / grid.spacing();
      if (std::abs(frac - std::lround(frac)) > 1e-9 || std::abs(node) > grid.nu_max)
        throw ConfigError(line_of("spectrum", "delta_omega"),
                          "delta_omega/2 must fall on a grid node");
      break;
    }
  }

  const bool case2 = is_two_polarization(c.kind);
  if (c.mz_theta && !c.mz_delta_L)
    throw ConfigError(line_of("optics", "mz_theta"), "mz_theta without mz_delta_L");
  if (c.mz_delta_L) {
    require(*c.mz_delta_L >= 0.0, line_of("optics", "mz_delta_L"),
            "mz_delta_L must be nonnegative");
    require(!case2, line_of("optics", "mz_delta_L"),
            "the Mach-Zehnder arm applies to one-polarization states");
  }
  if (c.wave_plate_theta)
    require(case2, line_of("optics", "wave_plate_theta"),
            "wave_plate_theta needs a two-polarization state");

  return c;
}

std::string render_config(const ScenarioConfig& c) {
  std::ostringstream out;
  char buf[64];
  const auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "[grid]\n";
  out << "nu_max = " << num(c.nu_max) << "\n";
  out << "points = " << c.points << "\n";
  out << "\n[spectrum]\n";
  out << "kind = " << to_string(c.kind) << "\n";
  if (c.sigma) out << "sigma = " << num(*c.sigma) << "\n";
  if (c.sigma1) out << "sigma1 = " << num(*c.sigma1) << "\n";
  if (c.sigma2) out << "sigma2 = " << num(*c.sigma2) << "\n";
  if (c.phase_matching) {
    const char* name = c.phase_matching->kind == PhaseMatching::Kind::Flat ? "flat"
                       : c.phase_matching->kind == PhaseMatching::Kind::Delta ? "delta"
                                                                              : "gaussian";
    out << "phase_matching = " << name << "\n";
    if (c.phase_matching->kind == PhaseMatching::Kind::Gaussian)
      out << "sigma_p = " << num(c.phase_matching->sigma_p) << "\n";
  }
  if (c.delta_omega) out << "delta_omega = " << num(*c.delta_omega) << "\n";
  if (c.omega_alpha) out << "omega_alpha = " << num(*c.omega_alpha) << "\n";
  if (c.omega_beta) out << "omega_beta = " << num(*c.omega_beta) << "\n";
  if (c.n_alpha) out << "n_alpha = " << num(*c.n_alpha) << "\n";
  if (c.theta) out << "theta = " << num(*c.theta) << "\n";
  out << "\n[optics]\n";
  out << "delta_z = " << num(c.delta_z) << "\n";
  if (c.mz_delta_L) out << "mz_delta_L = " << num(*c.mz_delta_L) << "\n";
  if (c.mz_theta) out << "mz_theta = " << num(*c.mz_theta) << "\n";
  if (c.wave_plate_theta) out << "wave_plate_theta = " << num(*c.wave_plate_theta) << "\n";
  out << "\n[beamsplitter]\n";
  out << "theta = " << num(c.bs_theta) << "\n";
  out << "phi_tau = " << num(c.bs_phi_tau) << "\n";
  out << "phi_rho = " << num(c.bs_phi_rho) << "\n";
  return out.str();
}

FrequencyGrid build_grid(const ScenarioConfig& c) { return make_grid(c.nu_max, c.points); }

namespace {

std::pair<double, double> bandwidth_pair(const ScenarioConfig& c) {
  if (c.sigma) return {*c.sigma, *c.sigma};
  return {c.sigma1.value(), c.sigma2.value()};
}

}  // namespace

SourceState build_source(const ScenarioConfig& c) {
  const FrequencyGrid grid = build_grid(c);
  switch (c.kind) {
    case SpectrumKind::ProductGaussian: {
      const auto [s1, s2] = bandwidth_pair(c);
      const double dw = c.delta_omega.value_or(0.0);
      return product_spectrum(gaussian_single(-dw / 2.0, s1, 0.0, grid),
                              gaussian_single(dw / 2.0, s2, 0.0, grid));
    }
    case SpectrumKind::SpdcType1:
      return spdc_type1(c.delta_omega.value_or(0.0), *c.sigma, *c.phase_matching, grid);
    case SpectrumKind::SpdcType2: {
      const auto [sa, sb] = bandwidth_pair(c);
      return spdc_type2(c.omega_alpha.value_or(0.0), c.omega_beta.value_or(0.0), sa, sb,
                        *c.phase_matching, c.theta.value_or(0.0), grid);
    }
    case SpectrumKind::TwoModeProduct: {
      const auto [sa, sb] = bandwidth_pair(c);
      const double na = c.n_alpha.value_or(0.5);
      const auto ca = with_weight(
          gaussian_single(c.omega_alpha.value_or(0.0), sa, 0.0, grid), na);
      const auto cb = with_weight(
          gaussian_single(c.omega_beta.value_or(0.0), sb, 0.0, grid), 1.0 - na);
      return two_mode_product(ca, cb, c.theta.value_or(0.0));
    }
    case SpectrumKind::BellPhiPlus:
      return bell_case1(BellKind::PhiPlus, -*c.delta_omega / 2.0, *c.delta_omega / 2.0, grid);
    case SpectrumKind::BellPhiMinus:
      return bell_case1(BellKind::PhiMinus, -*c.delta_omega / 2.0, *c.delta_omega / 2.0, grid);
    case SpectrumKind::BellPsiPlus:
      return bell_case1(BellKind::PsiPlus, -*c.delta_omega / 2.0, *c.delta_omega / 2.0, grid);
    case SpectrumKind::BellPsiMinus:
      return bell_case1(BellKind::PsiMinus, -*c.delta_omega / 2.0, *c.delta_omega / 2.0, grid);
  }
  throw std::logic_error("build_source: unhandled kind");
}

OpticalPath build_path(const ScenarioConfig& c) {
  OpticalPath path;
  path.z1 = 0.0;
  path.z2 = c.delta_z;
  if (c.mz_delta_L) path.mz = MzArm{*c.mz_delta_L, c.mz_theta.value_or(0.0), 1};
  if (c.wave_plate_theta)
    path.wave_plate = WavePlate{*c.wave_plate_theta, 1, Polarization::Beta};
  return path;
}

BeamSplitter build_beamsplitter(const ScenarioConfig& c) {
  return BeamSplitter{c.bs_theta, c.bs_phi_tau, c.bs_phi_rho};
}

}  // namespace biphoton
