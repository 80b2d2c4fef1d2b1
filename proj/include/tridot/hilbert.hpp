#pragma once

#include "tridot/params.hpp"
#include "tridot/types.hpp"

#include <vector>

namespace tridot {

// |n_A n_B n_C> with index 6*n_a + 3*n_b + n_c.
struct ChargeState {
  int n_a = 0;
  int n_b = 0;
  int n_c = 0;
};

// Throws std::out_of_range for occupations outside {0,1}x{0,1}x{0,1,2}.
int basis_index(const ChargeState& s);
ChargeState charge_state(int index);

// Charge lowering operators. c_a = |0>_A<1| (x) identity elsewhere, same for
// c_b; c_c = |0>_C<1| and c_2c = |1>_C<2| act on the C ladder only.
struct LadderOps {
  Operator c_a;
  Operator c_b;
  Operator c_c;
  Operator c_2c;
};

const LadderOps& lowering_ops();

// Number operators; n_c counts 0, 1, 2.
const Operator& number_a();
const Operator& number_b();
const Operator& number_c();

// Occupation of basis state i, used for diagonal bookkeeping.
int occ_a(int index);
int occ_b(int index);
int occ_c(int index);

// Full charge-sector Hamiltonian: diagonal charging energies plus hopping
// g_ca (c_a^dag c_c + sqrt2 c_a^dag c_2c) + g_cb (c_b^dag c_c + sqrt2
// c_b^dag c_2c) + h.c. The sqrt2 on the C 1<->2 ladder is the singlet matrix
// element of the doubly occupied dot.
Operator build_full_hamiltonian(const SystemParams& p);

// Resonant-frame effective Hamiltonian,
//   H' = g_ca sqrt2 c_2c^dag c_a (1 - n_b) + g_cb c_c^dag c_b n_a + h.c.
// It couples |101><->|002| (sqrt2 g_ca) and |110><->|101| (g_cb) and leaves
// |011> untouched; the diagonal is zero.
Operator build_effective_hamiltonian(const SystemParams& p);

enum class JumpKind {
  drain_a,
  drain_b,
  fill_c01,
  fill_c12,
  dephase_a,
  dephase_b,
  dephase_c,
};

struct JumpOperator {
  JumpKind kind;
  double rate;
  Operator op;
};

// Drains (c_a, gamma_a), (c_b, gamma_b); source raises (c_c^dag, gamma_c),
// (c_2c^dag, gamma_c); three diagonal dephasing jumps when gamma_phi > 0.
// Each enters the master equation as D[L]rho = rate*(L rho L^dag
// - {L^dag L, rho}/2).
std::vector<JumpOperator> build_jump_operators(const SystemParams& p);

}  // namespace tridot
