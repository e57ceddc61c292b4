#pragma once

#include <map>
#include <string>
#include <vector>

#include "hitchin/phase_space.hpp"
#include "hitchin/types.hpp"

namespace hitchin {

enum class Integrator { rk4, implicit_midpoint };

struct FlowConfig {
  double dt = 1e-3;
  int steps = 1000;
  Integrator integrator = Integrator::rk4;
  int record_every = 1;

  // dt > 0, steps >= 1, dt*steps <= 10, and record_every must divide steps so
  // recorded timestamps stay uniformly spaced.
  void validate() const;
};

struct Tangent {
  CVector du;
  CVector dw;
  CMatrix dp;
};

// du_j = w_j,
// dw_j = -(1/4pi^2) sum_{k != j} p_jk p_kj wp'(u_j - u_k),
// dp   = [p, G] with G_ab = (i/2pi) wp(u_a - u_b) p_ab, G_aa = 0.
// This is the flow that transports the Lax spectrum; its (u,w) part is the
// canonical Hamiltonian flow of H and its spin part is 2 pi i times the
// bracket flow {p, H}.
Tangent vector_field(const PhasePoint& x, const ModularParameter& m);

struct Snapshot {
  double t = 0.0;
  PhasePoint x;
  Complex H;
  std::vector<Complex> casimirs;  // tr p^k, k = 1..N
};

struct Trajectory {
  std::vector<Snapshot> snaps;
};

Trajectory integrate(const PhasePoint& x0, const FlowConfig& cfg,
                     const ModularParameter& m);

struct ConservationReport {
  std::vector<double> times;
  std::vector<Complex> H;
  std::vector<std::vector<Complex>> casimirs;                 // [snap][k-1]
  std::vector<std::vector<std::vector<Complex>>> eigenvalues; // [snap][zeta][i]
  std::vector<std::vector<Complex>> tr_eta;                   // [snap][j-1]
  // max |value(t) - value(0)| keyed "H", "casimir_k", "eig_z<i>", "tr_eta_j"
  std::map<std::string, double> drifts;
};

// Eigenvalues are sorted by real part with imaginary tie-break; a sorted gap
// below 1e-10 on a multi-snapshot trajectory aborts (sort-based matching is
// unreliable through a spectral collision).
ConservationReport conservation_report(const Trajectory& traj,
                                       const std::vector<Complex>& zetas,
                                       int jmax, const ModularParameter& m);

}  // namespace hitchin
