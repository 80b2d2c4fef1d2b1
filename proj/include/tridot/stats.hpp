#pragma once

#include "tridot/master.hpp"
#include "tridot/params.hpp"
#include "tridot/trajectory.hpp"
#include "tridot/types.hpp"

#include <vector>

namespace tridot {

struct CorrelationSeries {
  std::vector<double> delta;
  std::vector<double> c_ab;  // first event on A, next on B
  std::vector<double> c_ba;  // first event on B, next on A
};

struct RateCurve {
  std::vector<double> tau;
  std::vector<double> r;       // good-pair rate in units of gamma_c/2
  std::vector<double> r_err;   // zero for analytic curves
  std::vector<double> p_good;  // probability the entangling sequence occurred
  std::vector<double> f;       // Bell fidelity (1 + 3 p_good)/4
  double tau_star = 0.0;       // end of the fast initial rate rise
};

struct PairRecord {
  double t_first;
  double t_second;
  Lead first_lead;
  Lead second_lead;
};

// Exclusive two-time correlators
//   C_ij(D) = Tr[J_j exp(L_nj D) J_i rho_ss] / (Tr[J_j rho_ss] Tr[J_i rho_ss])
// with J_i rho = gamma_i c_i rho c_i^dag; the interim evolves under the
// exclusive generator (no A/B emissions; C refills are unobserved and stay).
// Throws NumericalError when a lead carries no steady current.
CorrelationSeries correlation(
    const SystemParams& p, const std::vector<double>& delta_grid,
    HamiltonianChoice choice = HamiltonianChoice::effective);

// R(tau) = (gamma_c/2) * int_0^tau (C_AB + C_BA) dD, composite trapezoid on
// an adaptive internal grid (relative integration error < 1e-4).
RateCurve effective_rate(const SystemParams& p,
                         const std::vector<double>& tau_grid,
                         HamiltonianChoice choice = HamiltonianChoice::effective);

// P(tau) and F(tau) from the projected-steady-state kernels: numerator keeps
// the partner-occupation projector at the first emission and the
// no-new-electron projector at the second; denominator drops both.
RateCurve good_pair_probability(
    const SystemParams& p, const std::vector<double>& tau_grid,
    HamiltonianChoice choice = HamiltonianChoice::effective);

// R, P and F on a shared engine pass (the CSV emitted by the rates command).
RateCurve analytic_rate_curve(
    const SystemParams& p, const std::vector<double>& tau_grid,
    HamiltonianChoice choice = HamiltonianChoice::effective);

// Unnormalized ordered-pair rate integral int_0^tau K(D) dD in pairs per
// unit time, K = Tr[J_B e^{L_nj D} J_A rho_ss] + (A<->B); the quantity the
// event-stream estimator measures directly.
std::vector<double> pair_rate_integral(
    const SystemParams& p, const std::vector<double>& tau_grid,
    HamiltonianChoice choice = HamiltonianChoice::effective);

// Post-selection scan: consecutive events on different leads with gap <=
// tau form a pair and are both consumed; anything else advances by one
// event. Returned rate is pairs per unit time. Throws on unsorted streams.
std::pair<std::vector<PairRecord>, double> empirical_pairs(
    const EventStream& stream, double tau);

// Monte Carlo estimator of the Eq.-(8) kernel integral: counts every
// adjacent different-lead event pair with gap <= tau (no consumption — the
// stationary rate of such adjacencies is exactly the kernel integral).
// r is in pairs per unit time with Poisson standard errors.
RateCurve empirical_rate_curve(const std::vector<EventStream>& streams,
                               const std::vector<double>& tau_grid);

}  // namespace tridot
