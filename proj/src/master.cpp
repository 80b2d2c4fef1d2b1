#include "tridot/master.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace tridot {

SuperVector vectorize(const DensityMatrix& rho) {
  SuperVector v(kSuperDim);
  for (int col = 0; col < kDim; ++col) {
    v.segment(col * kDim, kDim) = rho.col(col);
  }
  return v;
}

DensityMatrix unvectorize(const SuperVector& v) {
  DensityMatrix rho;
  for (int col = 0; col < kDim; ++col) {
    rho.col(col) = v.segment(col * kDim, kDim);
  }
  return rho;
}

SuperMatrix kron(const Operator& a, const Operator& b) {
  SuperMatrix out(kSuperDim, kSuperDim);
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      out.block(i * kDim, j * kDim, kDim, kDim) = a(i, j) * b;
    }
  }
  return out;
}

SuperMatrix left_multiplier(const Operator& a) {
  return kron(Operator::Identity(), a);
}

SuperMatrix right_multiplier(const Operator& b) {
  return kron(b.transpose(), Operator::Identity());
}

namespace {

Operator hamiltonian_for(const SystemParams& p, HamiltonianChoice choice) {
  return choice == HamiltonianChoice::full ? build_full_hamiltonian(p)
                                           : build_effective_hamiltonian(p);
}

}  // namespace

Superoperator liouvillian(const SystemParams& p, HamiltonianChoice choice) {
  const Operator h = hamiltonian_for(p, choice);
  SuperMatrix l = -kImag * (left_multiplier(h) - right_multiplier(h));
  for (const JumpOperator& j : build_jump_operators(p)) {
    const Operator ldl = j.op.adjoint() * j.op;
    l += j.rate * (kron(j.op.conjugate(), j.op) -
                   0.5 * left_multiplier(ldl) - 0.5 * right_multiplier(ldl));
  }
  return Superoperator{std::move(l), GeneratorKind::full};
}

Superoperator exclusive_liouvillian(const SystemParams& p,
                                    HamiltonianChoice choice) {
  Superoperator l = liouvillian(p, choice);
  const auto& ops = lowering_ops();
  l.matrix -= p.gamma_a * kron(ops.c_a.conjugate(), ops.c_a);
  l.matrix -= p.gamma_b * kron(ops.c_b.conjugate(), ops.c_b);
  l.kind = GeneratorKind::no_jump_ab;
  return l;
}

DensityMatrix evolve(const DensityMatrix& rho0, const Superoperator& l,
                     double t) {
  if (!(t >= 0) || !std::isfinite(t)) {
    throw std::invalid_argument("evolve: t must be finite and >= 0");
  }
  if (!rho0.allFinite()) {
    throw std::invalid_argument("evolve: non-finite initial state");
  }
  if (t == 0.0) {
    return rho0;
  }
  const SuperMatrix propagator = (l.matrix * t).exp();
  return unvectorize(propagator * vectorize(rho0));
}

DensityMatrix steady_state(const Superoperator& l) {
  Eigen::BDCSVD<SuperMatrix> svd(l.matrix, Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double tol = 1e-10 * sigma(0);
  int null_dim = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma(i) <= tol) ++null_dim;
  }
  if (null_dim != 1) {
    throw DegenerateSteadyState(
        null_dim, "steady_state: nullspace dimension " +
                      std::to_string(null_dim) + " (expected 1)");
  }
  DensityMatrix rho = unvectorize(svd.matrixV().col(kSuperDim - 1));
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12) {
    throw NumericalError("steady_state: null vector is traceless");
  }
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  const double residual = (l.matrix * vectorize(rho)).norm();
  if (residual > 1e-10 * l.matrix.norm()) {
    throw NumericalError("steady_state: residual check failed");
  }
  return rho;
}

Eigen::Matrix4d chain_hamiltonian(double delta, double g_ca, double g_cb) {
  const double s2 = std::sqrt(2.0);
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  // Basis order {|002>, |101>, |110>, |011>}; ring of couplings
  // |002> -(s2 g_ca)- |101> -(g_cb)- |110> -(g_ca)- |011> -(s2 g_cb)- |002>.
  h(0, 1) = h(1, 0) = s2 * g_ca;
  h(1, 2) = h(2, 1) = g_cb;
  h(2, 3) = h(3, 2) = g_ca;
  h(3, 0) = h(0, 3) = s2 * g_cb;
  h(3, 3) = -delta;
  return h;
}

double leak_population_eigen(double delta, double g_ca, double g_cb) {
  const Eigen::Matrix4d h = chain_hamiltonian(delta, g_ca, g_cb);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(h);
  const auto& evals = es.eigenvalues();
  const auto& evecs = es.eigenvectors();
  const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  double p = 0.0;
  int i = 0;
  while (i < 4) {
    int j = i;
    while (j + 1 < 4 && std::abs(evals(j + 1) - evals(i)) < 1e-9 * scale) {
      ++j;
    }
    // <011| P_E |002> over the (possibly degenerate) eigenspace block.
    double amp = 0.0;
    for (int k = i; k <= j; ++k) {
      amp += evecs(3, k) * evecs(0, k);
    }
    p += amp * amp;
    i = j + 1;
  }
  return p;
}

double leak_population_timeavg(double delta, double g_ca, double g_cb,
                               double t_total, double dt) {
  if (!(t_total > 0) || !(dt > 0) || dt > t_total) {
    throw std::invalid_argument("leak_population_timeavg: bad time grid");
  }
  const Eigen::Matrix4cd h = chain_hamiltonian(delta, g_ca, g_cb)
                                 .cast<Complex>();
  const Eigen::Matrix4cd u_step = (-kImag * dt * h).exp();
  const long n_steps = std::lround(t_total / dt);
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(0) = 1.0;
  double acc = 0.5 * std::norm(psi(3));
  for (long k = 1; k < n_steps; ++k) {
    psi = u_step * psi;
    acc += std::norm(psi(3));
  }
  psi = u_step * psi;
  acc += 0.5 * std::norm(psi(3));
  return acc / static_cast<double>(n_steps);
}

std::vector<SuppressionPoint> suppression_scan(
    const SystemParams& base, const std::vector<double>& delta_grid,
    const std::vector<double>& g_grid) {
  if (delta_grid.empty() || g_grid.empty()) {
    throw std::invalid_argument("suppression_scan: empty grid");
  }
  const double ratio_ca = base.g != 0.0 ? base.coupling_ca() / base.g : 1.0;
  const double ratio_cb = base.g != 0.0 ? base.coupling_cb() / base.g : 1.0;
  std::vector<SuppressionPoint> table;
  table.reserve(delta_grid.size() * g_grid.size());
  for (double delta : delta_grid) {
    for (double g : g_grid) {
      table.push_back(
          {delta, g, leak_population_eigen(delta, ratio_ca * g, ratio_cb * g)});
    }
  }
  return table;
}

}  // namespace tridot
