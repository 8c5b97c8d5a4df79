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

#ifndef VISCOLIMIT_DIAGNOSTICS_HPP_
#define VISCOLIMIT_DIAGNOSTICS_HPP_

#include <map>
#include <string>
#include <vector>

#include "viscolimit/entropy.hpp"
#include "viscolimit/euler_ref.hpp"
#include "viscolimit/ns_solver.hpp"
#include "viscolimit/pressure.hpp"

namespace viscolimit {

// --- energy functionals ----------------------------------------------------

/// Midpoint (cell-average) integral of 1/2 rho |u - ubar|^2 + e*(rho, rhobar).
double relative_energy(const PressureLaw& law, const FluidState& s, const ReferenceState& ref);

/// Integral of the relative entropy of eta-dagger about the reference state,
/// eta(U) - eta(Ubar) - D eta(Ubar) (U - Ubar) in conservative variables.
/// If `min_density` is given it receives the smallest cell value of the
/// integrand (pointwise positivity audit).
double dagger_energy(const PressureLaw& law, const FluidState& s, const ReferenceState& ref,
                     double* min_density = nullptr);

/// eps^2 int |rho_x|^2 / rho^3 (central differences, end states as ghosts).
double density_gradient_energy(const FluidState& s, double epsilon);

/// eps int |u_x|^2 at one time level.
double viscous_rate(const FluidState& s, double epsilon);

/// One row of the long-format report.
struct ReportRow {
  std::string quantity;
  double t = 0.0;
  double epsilon = 0.0;
  double value = 0.0;
};

/// Time series of monitored functionals plus free-form run metadata.
class DiagnosticsReport {
 public:
  /// Appends a sample; throws kInternal on non-finite values or on a time
  /// not strictly after the previous sample of the same quantity and epsilon.
  void add(const std::string& quantity, double t, double epsilon, double value);
  const std::vector<ReportRow>& rows() const { return rows_; }
  std::vector<ReportRow> series(const std::string& quantity, double epsilon) const;
  void set_metadata(const std::string& key, const std::string& value) { meta_[key] = value; }
  const std::map<std::string, std::string>& metadata() const { return meta_; }
  /// Appends all rows of another report.
  void merge(const DiagnosticsReport& other);
  void write_csv(const std::string& path) const;

 private:
  std::vector<ReportRow> rows_;
  std::map<std::string, std::string> meta_;
};

/// Records every monitored functional of one snapshot:
///   energy, viscous_integral, density_energy, density_integral,
///   pressure_K, kinetic_K, dagger_energy, dagger_integral.
void record_snapshot(DiagnosticsReport& report, const PressureLaw& law, const FluidState& s,
                     const ReferenceState& ref, double epsilon);

/// Smallest M with E(t) + eps int_0^t int |u_x|^2 <= M (E0 + 1) e^{M t} at
/// every sample; E0 is the energy of the first snapshot.
double fitted_energy_constant(const PressureLaw& law, const std::vector<FluidState>& traj,
                              const ReferenceState& ref);

struct DaggerMonitor {
  std::vector<double> t;
  std::vector<double> lhs;      // E-dagger(t) + dissipation up to t
  std::vector<double> energy;   // E-dagger(t)
  double E0 = 0.0;              // relative mechanical energy at t = 0
  double fitted_M = 0.0;        // max lhs / (E0 + 1)
  double min_energy = 0.0;
  double min_density = 0.0;     // smallest pointwise integrand over all samples
};
DaggerMonitor dagger_energy_monitor(const PressureLaw& law, const std::vector<FluidState>& traj,
                                    const ReferenceState& ref);

// --- dissipation identity ---------------------------------------------------

/// Separable space-time bump phi(t, x) = B((t - tc)/tw) B((x - xc)/xw),
/// B(y) = (1 - y^2)^4 on |y| < 1 (C^3).
struct SpaceTimeBump {
  double tc = 0.0, tw = 1.0, xc = 0.0, xw = 1.0;
  double time(double t) const;     // B((t - tc) / tw)
  double space(double x) const;    // B((x - xc) / xw)
  double space_dx(double x) const;
  double value(double t, double x) const;
  double dt(double t, double x) const;
  double dx(double t, double x) const;
};

/// Fixed family of 10 bumps inside (0, t_end) x [K_lo, K_hi].
std::vector<SpaceTimeBump> default_test_functions(double t_end, double K_lo, double K_hi);

struct DissipationResult {
  std::vector<double> residual;     // per test function
  std::vector<double> time_error;   // trapezoid vs Simpson time-rule difference
  double mu_mass_uu = 0.0;          // int int eps |eta_mu| u_x^2
  double mu_mass_urho = 0.0;        // int int eps |eta_mrho rho_x u_x|
  bool cadence_too_coarse = false;  // a time error exceeds its residual (and 1e-3 of the max)
  double max_residual() const;
};

/// Weak form of eta_t + q_x - eps (eta_m u_x)_x + eps eta_mu u_x^2
/// + eps eta_mrho rho_x u_x = 0 tested against each bump. Derivatives of the
/// bump are paired by summation by parts (cell faces in x, snapshot
/// midpoints in t); the time-error estimate compares with every second
/// snapshot.
DissipationResult dissipation_identity_residual(const std::vector<FluidState>& traj,
                                                const EntropyPair& pair, double epsilon,
                                                const std::vector<SpaceTimeBump>& tests);

// --- commutation relation ---------------------------------------------------

struct Patch {
  int id = 0;
  int i0 = 0, i1 = 0;  // cell range [i0, i1)
  int n0 = 0, n1 = 0;  // snapshot range [n0, n1)
};

/// Per patch, C = mean(eta1 q2 - eta2 q1) - mean(eta1) mean(q2) + mean(eta2) mean(q1).
double patch_commutator(const std::vector<FluidState>& traj, const Patch& p,
                        const EntropyPair& a, const EntropyPair& b);

/// Same quantity for fields given by a point sampler (rho, u) = f(t, x) at
/// the patch's cell centres and snapshot times of `grid`.
template <typename Sampler>
double patch_commutator_sampled(const std::vector<FluidState>& grid, const Patch& p,
                                const EntropyPair& a, const EntropyPair& b, Sampler&& f);

struct PatchSpec {
  int cells = 16;
  int samples = 8;
  double K_lo = -0.5, K_hi = 0.5;
  double t_min = 0.05;  // first patch time (away from the initial layer)
};

/// A ray x = speed * t the patches must keep `margin` away from (shocks and
/// rarefaction-fan edges, where the limit is not smooth).
struct WavePath {
  double speed = 0.0;
  double margin = 0.0;
};

/// Wave paths of a Riemann solution: shocks with `shock_margin`, fan edges
/// with `edge_margin`.
std::vector<WavePath> wave_paths(const RiemannSolution& sol, double shock_margin,
                                 double edge_margin);

/// Tiles the cells in [K_lo, K_hi] and snapshots with t >= t_min into
/// patches, dropping (and counting in `flagged`) those whose space-time
/// rectangle comes within the margin of a wave path.
std::vector<Patch> smooth_patches(const std::vector<FluidState>& traj, const PatchSpec& spec,
                                  const std::vector<WavePath>& paths, int* flagged = nullptr);

struct CommutationRow {
  int patch_id = 0;
  double epsilon = 0.0;
  double residual = 0.0;  // |C[eps] - C[limit]|
  double raw = 0.0;       // |C[eps]|
};

struct CommutationTable {
  std::vector<CommutationRow> rows;
  int patches = 0;
  int flagged = 0;
  int non_decreasing = 0;  // patches whose residual fails to decrease along the sweep
  bool decreasing() const { return non_decreasing == 0; }
};

/// Residual of the patch commutator against the limit commutator over an
/// epsilon sweep (largest epsilon first, all trajectories on the same grid
/// and cadence). A patch counts as decreasing if each residual is below its
/// predecessor or both are below `floor`.
CommutationTable commutation_residual(const std::vector<double>& eps,
                                      const std::vector<std::vector<FluidState>>& runs,
                                      const std::vector<double>& limit_commutator,
                                      const std::vector<Patch>& patches, const EntropyPair& a,
                                      const EntropyPair& b, double floor = 1e-14);

// --- convergence -------------------------------------------------------------

/// Least-squares slope of log(err) against log(eps).
double empirical_order(const std::vector<double>& eps, const std::vector<double>& err);

/// max / min of positive values (uniformity proxy); +inf if any is <= 0.
double variation_factor(const std::vector<double>& values);

// --- template definition ---------------------------------------------------

template <typename Sampler>
double patch_commutator_sampled(const std::vector<FluidState>& grid, const Patch& p,
                                const EntropyPair& a, const EntropyPair& b, Sampler&& f) {
  // Covariance form, shifted by the first sample so constant fields give 0
  // exactly: C = cov(eta1, q2) - cov(eta2, q1).
  double e1 = 0, e2 = 0, q1 = 0, q2 = 0, c12 = 0, c21 = 0;
  double r1 = 0, r2 = 0, s1 = 0, s2 = 0;
  int count = 0;
  for (int n = p.n0; n < p.n1; ++n) {
    const FluidState& s = grid[n];
    for (int i = p.i0; i < p.i1; ++i) {
      const auto [rho, u] = f(s.t, s.x(i));
      const EntropyPoint A = a.eval(rho, u), B = b.eval(rho, u);
      if (count == 0) { r1 = A.eta; r2 = B.eta; s1 = A.q; s2 = B.q; }
      const double de1 = A.eta - r1, de2 = B.eta - r2, dq1 = A.q - s1, dq2 = B.q - s2;
      e1 += de1; e2 += de2; q1 += dq1; q2 += dq2;
      c12 += de1 * dq2;
      c21 += de2 * dq1;
      ++count;
    }
  }
  const double n = count;
  return (c12 / n - (e1 / n) * (q2 / n)) - (c21 / n - (e2 / n) * (q1 / n));
}

}  // namespace viscolimit

#endif  // VISCOLIMIT_DIAGNOSTICS_HPP_
