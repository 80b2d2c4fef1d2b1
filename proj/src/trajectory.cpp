#include "tridot/trajectory.hpp"

#include "tridot/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace tridot {

namespace {

constexpr double kEulerGuard = 0.05;

double eff_hamiltonian_norm(const SystemParams& p) {
  const Operator h = build_effective_hamiltonian(p);
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

int resolve_threads(int n_threads) {
  if (n_threads > 0) return n_threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n) over a worker pool; result slots are
// preallocated by the caller, so scheduling cannot affect the output.
template <typename Fn>
void parallel_for(int n, int n_threads, Fn&& fn) {
  n_threads = std::min(resolve_threads(n_threads), n);
  if (n_threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

struct Occupations {
  double na = 0, nb = 0, nc = 0;
};

// ---------------------------------------------------------------------------
// Euler unraveling: density-matrix state, drains stochastic, source and
// dephasing continuous. The deterministic generator is exactly the exclusive
// Liouvillian; the Tr{J rho} rho compensation keeps the trace at 1.

class EulerEngine {
 public:
  EulerEngine(const SystemParams& p, double dt)
      : dt_(dt), gamma_a_(p.gamma_a), gamma_b_(p.gamma_b) {
    const Superoperator lnj = exclusive_liouvillian(p);
    lnj_sparse_ = lnj.matrix.sparseView(1.0, 1e-15);
    const auto& ops = lowering_ops();
    jump_a_ = SuperMatrix(p.gamma_a * kron(ops.c_a.conjugate(), ops.c_a))
                  .sparseView(1.0, 1e-15);
    jump_b_ = SuperMatrix(p.gamma_b * kron(ops.c_b.conjugate(), ops.c_b))
                  .sparseView(1.0, 1e-15);
    for (int i = 0; i < kDim; ++i) {
      if (occ_a(i)) diag_a_.push_back(i * kDim + i);
      if (occ_b(i)) diag_b_.push_back(i * kDim + i);
    }
    v_ = SuperVector::Zero(kSuperDim);
    v_(0) = 1.0;  // vacuum |000><000|
    scratch_.resize(kSuperDim);
  }

  double trace_a() const {
    double s = 0;
    for (int k : diag_a_) s += v_(k).real();
    return gamma_a_ * s;
  }

  double trace_b() const {
    double s = 0;
    for (int k : diag_b_) s += v_(k).real();
    return gamma_b_ * s;
  }

  // Advances one step; returns the fired lead or nullopt encoded as -1/0/1.
  int step(std::mt19937_64& rng) {
    const double tr_a = trace_a();
    const double tr_b = trace_b();
    const double p_a = tr_a * dt_;
    const double p_b = tr_b * dt_;
    const double r_a = uniform01(rng);
    const double r_b = uniform01(rng);
    const bool hit_a = r_a < p_a;
    const bool hit_b = r_b < p_b;
    if (hit_a || hit_b) {
      // Double trigger is an O(dt^2) corner; take the earlier effective draw.
      const bool take_a = hit_a && (!hit_b || r_a / p_a <= r_b / p_b);
      scratch_.noalias() = (take_a ? jump_a_ : jump_b_) * v_;
      const double tr = take_a ? tr_a : tr_b;
      v_ = scratch_ / tr;
      return take_a ? 0 : 1;
    }
    scratch_.noalias() = lnj_sparse_ * v_;
    v_ += dt_ * scratch_ + (dt_ * (tr_a + tr_b)) * v_;
    renormalize();
    return -1;
  }

  Occupations occupations() const {
    Occupations o;
    for (int i = 0; i < kDim; ++i) {
      const double p = v_(i * kDim + i).real();
      o.na += occ_a(i) * p;
      o.nb += occ_b(i) * p;
      o.nc += occ_c(i) * p;
    }
    return o;
  }

 private:
  void renormalize() {
    double tr = 0;
    for (int i = 0; i < kDim; ++i) tr += v_(i * kDim + i).real();
    // The first-order update preserves the trace identically at trace 1;
    // only float rounding accumulates here.
    v_ /= tr;
  }

  double dt_;
  double gamma_a_, gamma_b_;
  Eigen::SparseMatrix<Complex> lnj_sparse_, jump_a_, jump_b_;
  std::vector<int> diag_a_, diag_b_;
  SuperVector v_, scratch_;
};

// ---------------------------------------------------------------------------
// Waiting-time unraveling: pure states, all dissipators stochastic. The
// no-jump generator H' - (i/2) sum rate L^dag L is diagonalized once; the
// survival norm is then evaluable at arbitrary dt, and jump times are exact
// exponential samples found by bracketing + bisection.

class WaitingTimeEngine {
 public:
  explicit WaitingTimeEngine(const SystemParams& p) {
    jumps_ = build_jump_operators(p);
    Operator heff = build_effective_hamiltonian(p).cast<Complex>();
    Operator rate_op = Operator::Zero();
    for (const auto& j : jumps_) {
      rate_op += j.rate * (j.op.adjoint() * j.op);
    }
    heff -= 0.5 * kImag * rate_op;
    Eigen::ComplexEigenSolver<Operator> es(heff);
    if (es.info() != Eigen::Success) {
      throw NumericalError("waiting_time: eigendecomposition failed");
    }
    lambda_ = es.eigenvalues();
    vecs_ = es.eigenvectors();
    vecs_inv_ = vecs_.inverse();
    const double residual =
        (vecs_ * lambda_.asDiagonal() * vecs_inv_ - heff).norm();
    if (!(residual < 1e-8 * std::max(1.0, heff.norm()))) {
      throw NumericalError("waiting_time: ill-conditioned eigenbasis");
    }
    psi_ = StateVector::Zero();
    psi_(0) = 1.0;
    coeff_ = vecs_inv_ * psi_;
  }

  StateVector state_at(double dt) const {
    StateVector w;
    for (int k = 0; k < kDim; ++k) {
      w(k) = std::exp(-kImag * lambda_(k) * dt) * coeff_(k);
    }
    return vecs_ * w;
  }

  double survival(double dt) const { return state_at(dt).squaredNorm(); }

  // Samples the next jump. Returns false when no jump occurs before
  // t_remaining; otherwise fills (dt, kind) and collapses the state.
  bool next_jump(std::mt19937_64& rng, double t_remaining, double* dt_out,
                 JumpKind* kind_out) {
    const double r = uniform01(rng);
    if (survival(t_remaining) >= r) {
      return false;
    }
    // Bracket the crossing, then bisect. S is monotone non-increasing.
    double hi = std::min(t_remaining, 1.0);
    while (survival(hi) >= r) {
      hi = std::min(2.0 * hi, t_remaining);
    }
    double lo = hi > 1.0 ? hi / 2.0 : 0.0;
    while (hi - lo > 1e-13 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      (survival(mid) >= r ? lo : hi) = mid;
    }
    const double t_star = 0.5 * (lo + hi);
    StateVector psi = state_at(t_star);

    double weights[16];
    double total = 0.0;
    const int n_jumps = static_cast<int>(jumps_.size());
    for (int k = 0; k < n_jumps; ++k) {
      weights[k] = jumps_[k].rate * (jumps_[k].op * psi).squaredNorm();
      total += weights[k];
    }
    if (!(total > 0)) {
      return false;  // grazing contact with a dark state; nothing can fire
    }
    const double u = uniform01(rng) * total;
    int pick = n_jumps - 1;
    double acc = 0.0;
    for (int k = 0; k < n_jumps; ++k) {
      acc += weights[k];
      if (u < acc) {
        pick = k;
        break;
      }
    }
    psi_ = jumps_[pick].op * psi;
    psi_.normalize();
    coeff_ = vecs_inv_ * psi_;
    *dt_out = t_star;
    *kind_out = jumps_[pick].kind;
    return true;
  }

  Occupations occupations_at(double dt) const {
    StateVector psi = state_at(dt);
    psi.normalize();
    Occupations o;
    for (int i = 0; i < kDim; ++i) {
      const double p = std::norm(psi(i));
      o.na += occ_a(i) * p;
      o.nb += occ_b(i) * p;
      o.nc += occ_c(i) * p;
    }
    return o;
  }

 private:
  std::vector<JumpOperator> jumps_;
  Eigen::Vector<Complex, kDim> lambda_, coeff_;
  Operator vecs_, vecs_inv_;
  StateVector psi_;
};

template <typename OnGrid>
void run_euler(const SystemParams& p, const TrajectoryConfig& cfg,
               std::uint64_t stream, const std::vector<double>& t_grid,
               OnGrid&& on_grid, EventStream* out) {
  const double dt = euler_step(p, cfg);
  EulerEngine engine(p, dt);
  auto rng = make_rng(cfg.seed, stream);
  const long n_steps = std::lround(std::ceil(cfg.t_max / dt));
  std::size_t next_grid = 0;
  for (long k = 0; k < n_steps; ++k) {
    const double t_next = static_cast<double>(k + 1) * dt;
    const int fired = engine.step(rng);
    if (fired >= 0 && out != nullptr) {
      out->events.push_back({t_next, fired == 0 ? Lead::A : Lead::B});
    }
    while (next_grid < t_grid.size() && t_grid[next_grid] <= t_next) {
      on_grid(next_grid, engine.occupations());
      ++next_grid;
    }
  }
  while (next_grid < t_grid.size()) {
    on_grid(next_grid, engine.occupations());
    ++next_grid;
  }
}

template <typename OnGrid>
void run_waiting(const SystemParams& p, const TrajectoryConfig& cfg,
                 std::uint64_t stream, const std::vector<double>& t_grid,
                 OnGrid&& on_grid, EventStream* out) {
  WaitingTimeEngine engine(p);
  auto rng = make_rng(cfg.seed, stream);
  double t = 0.0;
  std::size_t next_grid = 0;
  auto flush_grid = [&](double until, double t0) {
    while (next_grid < t_grid.size() && t_grid[next_grid] <= until) {
      on_grid(next_grid, engine.occupations_at(t_grid[next_grid] - t0));
      ++next_grid;
    }
  };
  while (t < cfg.t_max) {
    double dt = 0.0;
    JumpKind kind;
    if (!engine.next_jump(rng, cfg.t_max - t, &dt, &kind)) {
      flush_grid(cfg.t_max, t);
      break;
    }
    flush_grid(t + dt, t);
    t += dt;
    if (out != nullptr) {
      switch (kind) {
        case JumpKind::drain_a:
          out->events.push_back({t, Lead::A});
          break;
        case JumpKind::drain_b:
          out->events.push_back({t, Lead::B});
          break;
        case JumpKind::fill_c01:
        case JumpKind::fill_c12:
          if (cfg.record_c_events) out->fills.push_back(t);
          break;
        default:
          break;
      }
    }
  }
  flush_grid(cfg.t_max, t);
}

}  // namespace

double euler_step(const SystemParams& p, const TrajectoryConfig& cfg) {
  if (cfg.dt > 0) return cfg.dt;
  if (p.gamma_b <= 0) {
    throw std::invalid_argument(
        "trajectory: cannot derive default dt with gamma_b = 0; set dt");
  }
  return 0.002 / p.gamma_b;
}

void validate_trajectory_config(const SystemParams& p,
                                const TrajectoryConfig& cfg) {
  p.validate();
  if (!(cfg.t_max > 0)) {
    throw std::invalid_argument("trajectory: t_max must be positive");
  }
  if (cfg.method == TrajectoryMethod::euler) {
    const double dt = euler_step(p, cfg);
    if (!(dt > 0)) {
      throw std::invalid_argument("trajectory: dt must be positive");
    }
    const double scale = std::max(
        {p.gamma_a, p.gamma_b, p.gamma_c, p.gamma_phi, eff_hamiltonian_norm(p)});
    if (dt * scale > kEulerGuard) {
      throw std::invalid_argument(
          "trajectory: step-size guard violated, dt*max(rates,|H|) = " +
          std::to_string(dt * scale) + " > " + std::to_string(kEulerGuard));
    }
    if (cfg.record_c_events) {
      throw std::invalid_argument(
          "trajectory: record_c_events requires waiting_time (the Euler "
          "source term is continuous, there are no fill events)");
    }
  }
}

EventStream run_trajectory(const SystemParams& p, const TrajectoryConfig& cfg,
                           std::uint64_t stream_index) {
  validate_trajectory_config(p, cfg);
  EventStream out;
  out.duration = cfg.t_max;
  auto ignore = [](std::size_t, const Occupations&) {};
  const std::vector<double> no_grid;
  if (cfg.method == TrajectoryMethod::euler) {
    run_euler(p, cfg, stream_index, no_grid, ignore, &out);
  } else {
    run_waiting(p, cfg, stream_index, no_grid, ignore, &out);
  }
  return out;
}

PopulationTable ensemble_populations(const SystemParams& p,
                                     const TrajectoryConfig& cfg, int n_traj,
                                     const std::vector<double>& t_grid,
                                     int n_threads) {
  validate_trajectory_config(p, cfg);
  if (n_traj < 1) {
    throw std::invalid_argument("ensemble_populations: n_traj must be >= 1");
  }
  const std::size_t n_grid = t_grid.size();
  std::vector<double> samples(static_cast<std::size_t>(n_traj) * n_grid * 3);
  parallel_for(n_traj, n_threads, [&](int traj) {
    double* slot = samples.data() + static_cast<std::size_t>(traj) * n_grid * 3;
    auto record = [slot](std::size_t gi, const Occupations& o) {
      slot[3 * gi + 0] = o.na;
      slot[3 * gi + 1] = o.nb;
      slot[3 * gi + 2] = o.nc;
    };
    if (cfg.method == TrajectoryMethod::euler) {
      run_euler(p, cfg, static_cast<std::uint64_t>(traj), t_grid, record,
                nullptr);
    } else {
      run_waiting(p, cfg, static_cast<std::uint64_t>(traj), t_grid, record,
                  nullptr);
    }
  });

  PopulationTable table;
  table.t = t_grid;
  auto reduce = [&](int comp, std::vector<double>* mean,
                    std::vector<double>* se) {
    mean->resize(n_grid);
    se->resize(n_grid);
    for (std::size_t gi = 0; gi < n_grid; ++gi) {
      double sum = 0, sum2 = 0;
      for (int traj = 0; traj < n_traj; ++traj) {
        const double x =
            samples[static_cast<std::size_t>(traj) * n_grid * 3 + 3 * gi +
                    comp];
        sum += x;
        sum2 += x * x;
      }
      const double m = sum / n_traj;
      (*mean)[gi] = m;
      const double var =
          n_traj > 1 ? std::max(0.0, (sum2 - n_traj * m * m) / (n_traj - 1))
                     : 0.0;
      (*se)[gi] = std::sqrt(var / n_traj);
    }
  };
  reduce(0, &table.mean_na, &table.se_na);
  reduce(1, &table.mean_nb, &table.se_nb);
  reduce(2, &table.mean_nc, &table.se_nc);
  return table;
}

std::vector<EventStream> run_ensemble(const SystemParams& p,
                                      const TrajectoryConfig& cfg, int n_traj,
                                      int n_threads) {
  validate_trajectory_config(p, cfg);
  std::vector<EventStream> streams(n_traj);
  parallel_for(n_traj, n_threads, [&](int traj) {
    streams[traj] = run_trajectory(p, cfg, static_cast<std::uint64_t>(traj));
  });
  return streams;
}

}  // namespace tridot
