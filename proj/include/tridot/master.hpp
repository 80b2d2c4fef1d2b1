#pragma once

#include "tridot/hilbert.hpp"
#include "tridot/params.hpp"
#include "tridot/types.hpp"

#include <vector>

namespace tridot {

enum class HamiltonianChoice { full, effective };

enum class GeneratorKind { full, no_jump_ab };

// 144x144 generator acting on column-stacked density matrices.
struct Superoperator {
  SuperMatrix matrix;
  GeneratorKind kind = GeneratorKind::full;
};

SuperVector vectorize(const DensityMatrix& rho);
DensityMatrix unvectorize(const SuperVector& v);

// vec(A rho B) = (B^T kron A) vec(rho) for column stacking.
SuperMatrix kron(const Operator& a, const Operator& b);
SuperMatrix left_multiplier(const Operator& a);
SuperMatrix right_multiplier(const Operator& b);

// L rho = -i[H, rho] + sum_k rate_k (L_k rho L_k^dag - {L_k^dag L_k, rho}/2)
// over all jump operators of build_jump_operators().
Superoperator liouvillian(const SystemParams& p, HamiltonianChoice choice);

// Full Liouvillian minus the A/B drain sandwich terms (anticommutator halves
// retained; C source and dephasing sandwiches retained). Tr[exp(L_nj t) rho]
// is the probability of zero A/B emission events in [0, t].
Superoperator exclusive_liouvillian(
    const SystemParams& p,
    HamiltonianChoice choice = HamiltonianChoice::effective);

// exp(L t) rho0 by dense scaling-and-squaring. Requires t >= 0 and finite
// inputs.
DensityMatrix evolve(const DensityMatrix& rho0, const Superoperator& l,
                     double t);

// Unique stationary state of a full Liouvillian, via the smallest singular
// vector of the dense generator, Hermitized and trace-normalized. Throws
// DegenerateSteadyState when the nullspace dimension exceeds 1 and
// NumericalError when the residual check fails.
DensityMatrix steady_state(const Superoperator& l);

// --- Fig. 2(b) machinery: two-electron chain {|002>,|101>,|110>,|011>} with
// the resonant triple degenerate and |011> detuned by -delta.

Eigen::Matrix4d chain_hamiltonian(double delta, double g_ca, double g_cb);

// Infinite-time average population of |011> starting from |002>, from the
// eigendecomposition (degenerate eigenspaces handled by projector blocks).
double leak_population_eigen(double delta, double g_ca, double g_cb);

// Same quantity by explicit unitary time stepping and trapezoid averaging
// over [0, t_total]; independent cross-check of the eigen formula.
double leak_population_timeavg(double delta, double g_ca, double g_cb,
                               double t_total, double dt);

struct SuppressionPoint {
  double delta;
  double g;
  double p011_avg;
};

// Product scan over (delta_grid x g_grid); couplings inherit the per-arm
// ratio of `base` relative to base.g.
std::vector<SuppressionPoint> suppression_scan(
    const SystemParams& base, const std::vector<double>& delta_grid,
    const std::vector<double>& g_grid);

}  // namespace tridot
