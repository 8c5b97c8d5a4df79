// Copyright 2026 The viscolimit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "viscolimit/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "viscolimit/error.hpp"
#include "viscolimit/presets.hpp"

namespace viscolimit {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void config_error(const std::string& source, int line, const std::string& msg) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ':' << line;
  os << ": " << msg;
  fail(ErrorCode::kConfig, os.str());
}

}  // namespace

KeyValueFile KeyValueFile::parse(const std::string& text, const std::string& source) {
  KeyValueFile kv;
  kv.source_ = source;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) config_error(source, line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    if (key.empty()) config_error(source, line, "empty key");
    if (key.find_first_of(" \t") != std::string::npos)
      config_error(source, line, "malformed key '" + key + "'");
    if (value.empty()) config_error(source, line, "empty value for '" + key + "'");
    if (kv.entries_.count(key))
      config_error(source, line,
                   "duplicate key '" + key + "' (first set on line " +
                       std::to_string(kv.entries_[key].second) + ")");
    kv.entries_[key] = {value, line};
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

const std::string& KeyValueFile::value(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) config_error(source_, 0, "missing key '" + key + "'");
  return it->second.first;
}

int KeyValueFile::line(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.second;
}

std::vector<std::string> KeyValueFile::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

PressureLaw PressureBlock::make() const {
  if (law == "gamma") return PressureLaw::pure_gamma(gamma, kappa);
  return PressureLaw::make(gamma, kappa, rho_star, c_star);
}

const std::vector<std::pair<std::string, std::string>>& config_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys{
      {"experiment", "experiment preset name (required)"},
      {"seed", "seed for randomized audits (unsigned integer)"},
      {"output.dir", "output directory (created if missing)"},
      {"output.snapshots", "snapshot CSVs to write: none | final | all"},
      {"pressure.gamma", "adiabatic exponent, 1 < gamma < 3 (required)"},
      {"pressure.kappa", "pressure coefficient"},
      {"pressure.law", "hybrid (isothermal above rho*) | gamma (pure power law)"},
      {"pressure.rho_star", "isothermal threshold density (hybrid)"},
      {"pressure.c_star", "isothermal coefficient: p = c_star rho above rho_star (hybrid)"},
      {"solver.N", "number of cells"},
      {"solver.L", "half-length of the domain [-L, L]"},
      {"solver.t_end", "final time"},
      {"solver.cfl", "Courant number in (0, 1)"},
      {"solver.flux", "hll | rusanov"},
      {"solver.viscous", "auto | explicit | implicit"},
      {"solver.output_dt", "snapshot cadence"},
      {"sweep.eps", "comma-separated viscosities, strictly decreasing"},
      {"initial.preset", "initial-data preset name"},
      {"initial.rho_left", "override of the left density"},
      {"initial.u_left", "override of the left velocity"},
      {"initial.rho_right", "override of the right density"},
      {"initial.u_right", "override of the right velocity"},
      {"initial.amplitude", "smooth_pulse height"},
      {"initial.pulse_width", "smooth_pulse width"},
      {"initial.mollifier_exponent", "mollifier half-width = scale * eps^exponent"},
      {"initial.mollifier_scale", "mollifier half-width scale"},
      {"initial.L0", "reference functions are constant outside [-L0, L0]"},
      {"diagnostics.K_lo", "left end of the monitor interval K"},
      {"diagnostics.K_hi", "right end of the monitor interval K"},
      {"diagnostics.patch_cells", "cells per commutation patch"},
      {"diagnostics.patch_samples", "snapshots per commutation patch"},
      {"diagnostics.t_min", "earliest patch time"},
      {"diagnostics.shock_margin", "distance kept from shock paths"},
      {"diagnostics.edge_margin", "distance kept from rarefaction edges"},
      {"diagnostics.psi1", "support a,b of the first compact generator"},
      {"diagnostics.psi2", "support a,b of the second compact generator"},
      {"diagnostics.reference_refine", "Euler reference grid refinement factor (>= 4)"},
  };
  return keys;
}

namespace {

struct Reader {
  const KeyValueFile& kv;

  [[noreturn]] void bad(const std::string& key, const std::string& msg) const {
    config_error(kv.source(), kv.line(key), "'" + key + "': " + msg);
  }

  double number(const std::string& key, double fallback) const {
    if (!kv.has(key)) return fallback;
    return parse_number(key, kv.value(key));
  }
  double parse_number(const std::string& key, const std::string& s) const {
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
      bad(key, "expected a finite number, got '" + s + "'");
    return v;
  }
  long integer(const std::string& key, long fallback) const {
    if (!kv.has(key)) return fallback;
    const std::string& s = kv.value(key);
    long v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) bad(key, "expected an integer, got '" + s + "'");
    return v;
  }
  std::string choice(const std::string& key, const std::string& fallback,
                     const std::vector<std::string>& allowed) const {
    if (!kv.has(key)) return fallback;
    const std::string& s = kv.value(key);
    if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      bad(key, "unknown value '" + s + "' (expected one of: " + list + ")");
    }
    return s;
  }
  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(kv.value(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(key, trim(item)));
    return out;
  }
};

}  // namespace

ExperimentConfig parse_experiment_config(const KeyValueFile& kv) {
  const Reader rd{kv};
  for (const auto& key : kv.keys()) {
    const auto& known = config_keys();
    const bool ok = std::any_of(known.begin(), known.end(),
                                [&](const auto& k) { return k.first == key; });
    if (!ok) config_error(kv.source(), kv.line(key), "unknown key '" + key + "'");
  }
  for (const char* required : {"experiment", "pressure.gamma"})
    if (!kv.has(required))
      config_error(kv.source(), 0, std::string("missing required key '") + required + "'");

  ExperimentConfig c;
  c.experiment = kv.value("experiment");
  if (!is_experiment(c.experiment)) rd.bad("experiment", "unknown experiment '" + c.experiment + "'");
  const long seed = rd.integer("seed", static_cast<long>(c.seed));
  if (seed < 0) rd.bad("seed", "must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  if (kv.has("output.dir")) c.output_dir = kv.value("output.dir");
  c.snapshots = rd.choice("output.snapshots", c.snapshots, {"none", "final", "all"});

  PressureBlock& p = c.pressure;
  p.law = rd.choice("pressure.law", p.law, {"hybrid", "gamma"});
  p.gamma = rd.number("pressure.gamma", p.gamma);
  p.kappa = rd.number("pressure.kappa", p.kappa);
  p.rho_star = rd.number("pressure.rho_star", p.rho_star);
  p.c_star = rd.number("pressure.c_star", p.c_star);
  if (!(p.gamma > 1.0 && p.gamma < 3.0)) rd.bad("pressure.gamma", "must satisfy 1 < gamma < 3");
  try {
    (void)p.make();
  } catch (const Error& e) {
    config_error(kv.source(), kv.line("pressure.gamma"), std::string("pressure block: ") + e.what());
  }

  SolverConfig& s = c.solver;
  s.N = static_cast<int>(rd.integer("solver.N", s.N));
  s.L = rd.number("solver.L", s.L);
  s.t_end = rd.number("solver.t_end", s.t_end);
  s.cfl = rd.number("solver.cfl", s.cfl);
  s.output_dt = rd.number("solver.output_dt", 0.01);
  s.flux = rd.choice("solver.flux", "hll", {"hll", "rusanov"}) == "hll" ? FluxKind::kHLL
                                                                          : FluxKind::kRusanov;
  const std::string visc = rd.choice("solver.viscous", "auto", {"auto", "explicit", "implicit"});
  s.viscous = visc == "auto" ? ViscousMode::kAuto
              : visc == "explicit" ? ViscousMode::kExplicit
                                   : ViscousMode::kImplicit;
  if (s.N < 64) rd.bad("solver.N", "must be >= 64");
  if (!(s.output_dt > 0.0)) rd.bad("solver.output_dt", "must be positive");

  if (kv.has("sweep.eps")) c.eps = rd.list("sweep.eps");
  if (c.eps.empty()) rd.bad("sweep.eps", "empty list");
  for (std::size_t k = 0; k < c.eps.size(); ++k) {
    if (!(c.eps[k] > 0.0)) rd.bad("sweep.eps", "values must be positive");
    if (k > 0 && !(c.eps[k] < c.eps[k - 1])) rd.bad("sweep.eps", "list must be strictly decreasing");
  }
  s.epsilon = c.eps.front();

  InitialBlock& in = c.initial;
  if (kv.has("initial.preset")) in.preset = kv.value("initial.preset");
  if (!find_initial_preset(in.preset)) rd.bad("initial.preset", "preset '" + in.preset + "' not found");
  in.rho_left = rd.number("initial.rho_left", in.rho_left);
  in.u_left = rd.number("initial.u_left", in.u_left);
  in.rho_right = rd.number("initial.rho_right", in.rho_right);
  in.u_right = rd.number("initial.u_right", in.u_right);
  for (const char* k : {"initial.rho_left", "initial.rho_right"})
    if (kv.has(k) && !(rd.number(k, 0.0) > 0.0)) rd.bad(k, "density must be positive");
  in.amplitude = rd.number("initial.amplitude", in.amplitude);
  in.pulse_width = rd.number("initial.pulse_width", in.pulse_width);
  in.mollifier_exponent = rd.number("initial.mollifier_exponent", in.mollifier_exponent);
  in.mollifier_scale = rd.number("initial.mollifier_scale", in.mollifier_scale);
  in.L0 = rd.number("initial.L0", in.L0);
  if (!(in.pulse_width > 0.0)) rd.bad("initial.pulse_width", "must be positive");
  if (in.amplitude < 0.0) rd.bad("initial.amplitude", "must be >= 0");
  if (in.mollifier_scale < 0.0) rd.bad("initial.mollifier_scale", "must be >= 0");
  if (!(in.L0 > 0.0 && in.L0 < s.L)) rd.bad("initial.L0", "must lie in (0, L)");

  DiagnosticsBlock& d = c.diagnostics;
  d.K_lo = rd.number("diagnostics.K_lo", d.K_lo);
  d.K_hi = rd.number("diagnostics.K_hi", d.K_hi);
  if (!(d.K_lo < d.K_hi && d.K_lo > -s.L && d.K_hi < s.L))
    rd.bad(kv.has("diagnostics.K_lo") ? "diagnostics.K_lo" : "diagnostics.K_hi",
           "K must be a non-empty interval inside (-L, L)");
  s.K_lo = d.K_lo;
  s.K_hi = d.K_hi;
  d.patch_cells = static_cast<int>(rd.integer("diagnostics.patch_cells", d.patch_cells));
  d.patch_samples = static_cast<int>(rd.integer("diagnostics.patch_samples", d.patch_samples));
  if (d.patch_cells < 2) rd.bad("diagnostics.patch_cells", "must be >= 2");
  if (d.patch_samples < 2) rd.bad("diagnostics.patch_samples", "must be >= 2");
  d.t_min = rd.number("diagnostics.t_min", d.t_min);
  d.shock_margin = rd.number("diagnostics.shock_margin", d.shock_margin);
  d.edge_margin = rd.number("diagnostics.edge_margin", d.edge_margin);
  for (auto [key, dst] : {std::pair{"diagnostics.psi1", &d.psi1}, std::pair{"diagnostics.psi2", &d.psi2}}) {
    if (!kv.has(key)) continue;
    const auto v = rd.list(key);
    if (v.size() != 2 || !(v[0] < v[1])) rd.bad(key, "expected 'a, b' with a < b");
    *dst = {v[0], v[1]};
  }
  d.reference_refine = static_cast<int>(rd.integer("diagnostics.reference_refine", d.reference_refine));
  if (d.reference_refine < 4) rd.bad("diagnostics.reference_refine", "must be >= 4");

  if (c.experiment == "commutation") {
    if (c.eps.size() < 3) rd.bad(kv.has("sweep.eps") ? "sweep.eps" : "experiment", "commutation needs at least 3 viscosities");
    if (!find_initial_preset(in.preset)->riemann)
      rd.bad(kv.has("initial.preset") ? "initial.preset" : "experiment", "commutation needs a Riemann preset");
  }

  try {
    validate(s);
  } catch (const Error& e) {
    config_error(kv.source(), 0, std::string("solver block: ") + e.what());
  }
  for (const auto& key : kv.keys()) c.echo.emplace_back(key, kv.value(key));
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(KeyValueFile::load(path));
}

}  // namespace viscolimit
