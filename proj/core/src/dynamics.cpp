#include "hitchin/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "hitchin/errors.hpp"
#include "hitchin/lax.hpp"
#include "hitchin/special_functions.hpp"

namespace hitchin {

void FlowConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("flow needs dt > 0");
  if (steps < 1) throw std::invalid_argument("flow needs steps >= 1");
  if (dt * steps > 10.0) {
    throw std::invalid_argument("flow horizon dt*steps must stay <= 10");
  }
  if (record_every < 1 || steps % record_every != 0) {
    throw std::invalid_argument("record_every must divide steps");
  }
}

Tangent vector_field(const PhasePoint& x, const ModularParameter& m) {
  const int N = x.size();
  Tangent t;
  t.du = x.w;
  t.dw = CVector::Zero(N);
  CMatrix g = CMatrix::Zero(N, N);
  const double coupling = 1.0 / (4.0 * kPi * kPi);
  const Complex lam = kImagUnit / (2.0 * kPi);
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < j; ++k) {
      const Complex d = x.u(j) - x.u(k);
      if (lattice_distance(d, m) < kPoleGuard) {
        throw CollidingPositions("u_" + std::to_string(j) + " and u_" +
                                 std::to_string(k) +
                                 " collide modulo the lattice");
      }
      const Complex pair = x.p(j, k) * x.p(k, j);
      const Complex dv = wp_deriv(d, m);
      t.dw(j) -= coupling * pair * dv;
      t.dw(k) += coupling * pair * dv;  // wp' is odd: momentum sum conserved
      const Complex wv = wp(d, m);
      g(j, k) = lam * x.p(j, k) * wv;
      g(k, j) = lam * x.p(k, j) * wv;
    }
  }
  t.dp = x.p * g - g * x.p;
  t.dp.diagonal().setZero();  // analytically zero since wp is even
  return t;
}

namespace {

PhasePoint axpy(const PhasePoint& x, double a, const Tangent& t) {
  PhasePoint y = x;
  y.u += a * t.du;
  y.w += a * t.dw;
  y.p += a * t.dp;
  return y;
}

PhasePoint midpoint_state(const PhasePoint& x, const PhasePoint& y) {
  PhasePoint z = x;
  z.u = 0.5 * (x.u + y.u);
  z.w = 0.5 * (x.w + y.w);
  z.p = 0.5 * (x.p + y.p);
  return z;
}

double state_distance(const PhasePoint& a, const PhasePoint& b) {
  return std::max({(a.u - b.u).norm(), (a.w - b.w).norm(), (a.p - b.p).norm()});
}

PhasePoint rk4_step(const PhasePoint& x, double dt,
                    const ModularParameter& m) {
  const Tangent k1 = vector_field(x, m);
  const Tangent k2 = vector_field(axpy(x, 0.5 * dt, k1), m);
  const Tangent k3 = vector_field(axpy(x, 0.5 * dt, k2), m);
  const Tangent k4 = vector_field(axpy(x, dt, k3), m);
  PhasePoint y = x;
  y.u += (dt / 6.0) * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
  y.w += (dt / 6.0) * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);
  y.p += (dt / 6.0) * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
  return y;
}

PhasePoint midpoint_step(const PhasePoint& x, double dt,
                         const ModularParameter& m) {
  PhasePoint y = axpy(x, dt, vector_field(x, m));
  for (int it = 0; it < 50; ++it) {
    const PhasePoint next = axpy(x, dt, vector_field(midpoint_state(x, y), m));
    const double delta = state_distance(next, y);
    y = next;
    if (delta <= 1e-13) return y;
  }
  throw NoConvergence("implicit midpoint did not reach fixed point in 50 iterations");
}

Snapshot take_snapshot(double t, const PhasePoint& x,
                       const ModularParameter& m) {
  Snapshot s;
  s.t = t;
  s.x = x;
  s.H = hamiltonian(x, m);
  s.casimirs = casimirs(x, x.size());
  return s;
}

}  // namespace

Trajectory integrate(const PhasePoint& x0, const FlowConfig& cfg,
                     const ModularParameter& m) {
  cfg.validate();
  Trajectory traj;
  traj.snaps.push_back(take_snapshot(0.0, x0, m));
  PhasePoint x = x0;
  for (int step = 1; step <= cfg.steps; ++step) {
    try {
      x = (cfg.integrator == Integrator::rk4) ? rk4_step(x, cfg.dt, m)
                                              : midpoint_step(x, cfg.dt, m);
    } catch (const CollidingPositions& e) {
      throw StepCollision("positions entered the pole guard near t = " +
                          std::to_string(cfg.dt * step) +
                          "; reduce dt or shorten the horizon (" + e.what() +
                          ")");
    }
    if (step % cfg.record_every == 0) {
      traj.snaps.push_back(take_snapshot(cfg.dt * step, x, m));
    }
  }
  return traj;
}

ConservationReport conservation_report(const Trajectory& traj,
                                       const std::vector<Complex>& zetas,
                                       int jmax, const ModularParameter& m) {
  if (traj.snaps.empty()) {
    throw std::invalid_argument("conservation report needs a nonempty trajectory");
  }
  ConservationReport rep;
  const std::size_t S = traj.snaps.size();
  rep.times.reserve(S);
  rep.H.reserve(S);
  for (const Snapshot& s : traj.snaps) {
    rep.times.push_back(s.t);
    rep.H.push_back(s.H);
    rep.casimirs.push_back(s.casimirs);

    std::vector<std::vector<Complex>> eigs_here;
    eigs_here.reserve(zetas.size());
    for (const Complex zeta : zetas) {
      const CMatrix eta = lax_matrix(s.x, zeta, m).matrix;
      Eigen::ComplexEigenSolver<CMatrix> solver(eta);
      if (solver.info() != Eigen::Success) {
        throw NonConvergent("eigenvalue solve failed on a snapshot");
      }
      std::vector<Complex> ev(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + s.x.size());
      std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
      });
      for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
        if (std::abs(ev[i + 1] - ev[i]) < 1e-10 && S > 1) {
          throw SpectralCollision(
              "eigenvalues collide at t = " + std::to_string(s.t) +
              "; sort-based matching cannot follow them");
        }
      }
      eigs_here.push_back(std::move(ev));
    }
    rep.eigenvalues.push_back(std::move(eigs_here));

    std::vector<Complex> traces;
    traces.reserve(static_cast<std::size_t>(jmax));
    if (jmax >= 1) {
      const CMatrix eta0 = lax_matrix(s.x, zetas.empty() ? Complex(0.31, 0.41)
                                                         : zetas.front(),
                                      m).matrix;
      CMatrix pw = eta0;
      traces.push_back(pw.trace());
      for (int j = 2; j <= jmax; ++j) {
        pw = pw * eta0;
        traces.push_back(pw.trace());
      }
    }
    rep.tr_eta.push_back(std::move(traces));
  }

  const auto drift_of = [](const std::vector<Complex>& v) {
    double d = 0.0;
    for (const Complex c : v) d = std::max(d, std::abs(c - v.front()));
    return d;
  };

  rep.drifts["H"] = drift_of(rep.H);
  const std::size_t ncas = rep.casimirs.front().size();
  for (std::size_t k = 0; k < ncas; ++k) {
    std::vector<Complex> v;
    v.reserve(S);
    for (const auto& row : rep.casimirs) v.push_back(row[k]);
    rep.drifts["casimir_" + std::to_string(k + 1)] = drift_of(v);
  }
  for (std::size_t z = 0; z < zetas.size(); ++z) {
    double d = 0.0;
    const auto& first = rep.eigenvalues.front()[z];
    for (const auto& snap : rep.eigenvalues) {
      for (std::size_t i = 0; i < first.size(); ++i) {
        d = std::max(d, std::abs(snap[z][i] - first[i]));
      }
    }
    rep.drifts["eig_z" + std::to_string(z)] = d;
  }
  for (int j = 1; j <= jmax; ++j) {
    std::vector<Complex> v;
    v.reserve(S);
    for (const auto& row : rep.tr_eta) v.push_back(row[static_cast<std::size_t>(j - 1)]);
    rep.drifts["tr_eta_" + std::to_string(j)] = drift_of(v);
  }
  return rep;
}

}  // namespace hitchin
