#include "tridot/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace tridot {

int basis_index(const ChargeState& s) {
  if (s.n_a < 0 || s.n_a > 1 || s.n_b < 0 || s.n_b > 1 || s.n_c < 0 ||
      s.n_c > 2) {
    throw std::out_of_range("basis_index: occupation out of range");
  }
  return 6 * s.n_a + 3 * s.n_b + s.n_c;
}

ChargeState charge_state(int index) {
  if (index < 0 || index >= kDim) {
    throw std::out_of_range("charge_state: index out of range");
  }
  return ChargeState{index / 6, (index / 3) % 2, index % 3};
}

int occ_a(int index) { return charge_state(index).n_a; }
int occ_b(int index) { return charge_state(index).n_b; }
int occ_c(int index) { return charge_state(index).n_c; }

namespace {

LadderOps make_lowering_ops() {
  LadderOps ops;
  ops.c_a.setZero();
  ops.c_b.setZero();
  ops.c_c.setZero();
  ops.c_2c.setZero();
  for (int i = 0; i < kDim; ++i) {
    const ChargeState s = charge_state(i);
    if (s.n_a == 1) {
      ops.c_a(basis_index({0, s.n_b, s.n_c}), i) = 1.0;
    }
    if (s.n_b == 1) {
      ops.c_b(basis_index({s.n_a, 0, s.n_c}), i) = 1.0;
    }
    if (s.n_c == 1) {
      ops.c_c(basis_index({s.n_a, s.n_b, 0}), i) = 1.0;
    }
    if (s.n_c == 2) {
      ops.c_2c(basis_index({s.n_a, s.n_b, 1}), i) = 1.0;
    }
  }
  return ops;
}

Operator make_number(int which) {
  Operator n = Operator::Zero();
  for (int i = 0; i < kDim; ++i) {
    const ChargeState s = charge_state(i);
    n(i, i) = which == 0 ? s.n_a : which == 1 ? s.n_b : s.n_c;
  }
  return n;
}

}  // namespace

const LadderOps& lowering_ops() {
  static const LadderOps ops = make_lowering_ops();
  return ops;
}

const Operator& number_a() {
  static const Operator n = make_number(0);
  return n;
}

const Operator& number_b() {
  static const Operator n = make_number(1);
  return n;
}

const Operator& number_c() {
  static const Operator n = make_number(2);
  return n;
}

Operator build_full_hamiltonian(const SystemParams& p) {
  p.validate();
  const auto& l = lowering_ops();
  const double s2 = std::sqrt(2.0);
  Operator h = Operator::Zero();
  for (int i = 0; i < kDim; ++i) {
    const ChargeState s = charge_state(i);
    // U_AB = 0; u is the two-electron charging energy of dot C.
    h(i, i) = p.eps_a * s.n_a + p.eps_b * s.n_b + p.eps_c * s.n_c +
              p.u * (s.n_c == 2 ? 1.0 : 0.0) + p.v * s.n_c * (s.n_a + s.n_b);
  }
  Operator hop = p.coupling_ca() * (l.c_a.adjoint() * l.c_c +
                                    s2 * l.c_a.adjoint() * l.c_2c) +
                 p.coupling_cb() * (l.c_b.adjoint() * l.c_c +
                                    s2 * l.c_b.adjoint() * l.c_2c);
  h += hop + hop.adjoint();
  return h;
}

Operator build_effective_hamiltonian(const SystemParams& p) {
  p.validate();
  const auto& l = lowering_ops();
  const Operator block_b = Operator::Identity() - number_b();
  Operator h = p.coupling_ca() * std::sqrt(2.0) *
                   (l.c_2c.adjoint() * l.c_a * block_b) +
               p.coupling_cb() * (l.c_c.adjoint() * l.c_b * number_a());
  return h + Operator(h.adjoint());
}

std::vector<JumpOperator> build_jump_operators(const SystemParams& p) {
  p.validate();
  const auto& l = lowering_ops();
  std::vector<JumpOperator> jumps;
  jumps.push_back({JumpKind::drain_a, p.gamma_a, l.c_a});
  jumps.push_back({JumpKind::drain_b, p.gamma_b, l.c_b});
  if (p.gamma_c > 0) {
    jumps.push_back({JumpKind::fill_c01, p.gamma_c, l.c_c.adjoint()});
    jumps.push_back({JumpKind::fill_c12, p.gamma_c, l.c_2c.adjoint()});
  }
  if (p.gamma_phi > 0) {
    jumps.push_back({JumpKind::dephase_a, p.gamma_phi, number_a()});
    jumps.push_back({JumpKind::dephase_b, p.gamma_phi, number_b()});
    jumps.push_back({JumpKind::dephase_c, p.gamma_phi, number_c()});
  }
  return jumps;
}

}  // namespace tridot
