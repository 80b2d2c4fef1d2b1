#pragma once

#include "tridot/master.hpp"
#include "tridot/params.hpp"
#include "tridot/types.hpp"

#include <cstdint>
#include <vector>

namespace tridot {

enum class Lead { A, B };

inline char lead_char(Lead l) { return l == Lead::A ? 'A' : 'B'; }

struct EventRecord {
  double time;
  Lead lead;
};

enum class TrajectoryMethod { euler, waiting_time };

struct TrajectoryConfig {
  double t_max = 0.0;
  // Euler step; 0 selects the default 0.002/gamma_b (per-step jump
  // probabilities stay below 0.2%).
  double dt = 0.0;
  std::uint64_t seed = 0;
  TrajectoryMethod method = TrajectoryMethod::waiting_time;
  bool record_c_events = false;
};

struct EventStream {
  std::vector<EventRecord> events;  // A/B emissions, strictly increasing time
  std::vector<double> fills;        // C fill times (waiting_time mode only)
  double duration = 0.0;
};

// Resolved Euler step for a config (applies the 0.002/gamma_b default).
double euler_step(const SystemParams& p, const TrajectoryConfig& cfg);

// Validates the step-size guard dt * max(rates, ||H'||) <= 0.05 for Euler
// mode; throws std::invalid_argument before running on violation.
void validate_trajectory_config(const SystemParams& p,
                                const TrajectoryConfig& cfg);

// One stochastic unraveling of the master equation from vacuum.
//
// euler: fixed-step scheme with the source term continuous and only the A/B
// drains stochastic — per step two uniform draws r_i, a jump fires when
// r_i < Tr{J_i rho} dt, otherwise the first-order deterministic update runs.
//
// waiting_time: every dissipator (drains, fills, dephasing) is a stochastic
// jump; exact exponential waiting times are sampled on the pure-state
// no-jump evolution, and only A/B jumps are emitted as events.
//
// Streams are bit-reproducible from (p, cfg, stream_index).
EventStream run_trajectory(const SystemParams& p, const TrajectoryConfig& cfg,
                           std::uint64_t stream_index = 0);

struct PopulationTable {
  std::vector<double> t;
  std::vector<double> mean_na, se_na;
  std::vector<double> mean_nb, se_nb;
  std::vector<double> mean_nc, se_nc;
};

// Ensemble-averaged occupations with standard errors at the grid times.
// Trajectories are independent (stream index = trajectory index); the
// reduction order is fixed, so results do not depend on thread scheduling.
PopulationTable ensemble_populations(const SystemParams& p,
                                     const TrajectoryConfig& cfg, int n_traj,
                                     const std::vector<double>& t_grid,
                                     int n_threads = 0);

// Convenience: n_traj independent event streams (stream index = position).
std::vector<EventStream> run_ensemble(const SystemParams& p,
                                      const TrajectoryConfig& cfg, int n_traj,
                                      int n_threads = 0);

}  // namespace tridot
