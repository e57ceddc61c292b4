// Acceptance gate for the library: ten criteria, one PASS/FAIL line each,
// exit 0 only if every criterion that ran passed. Tolerances and time budgets
// are pinned here on purpose; loosening them is a behavior change and should
// look like one in review.
//
// Usage: acceptance [--criterion k]   (k in 1..10; default runs all)

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "hitchin/dynamics.hpp"
#include "hitchin/lax.hpp"
#include "hitchin/loop_field.hpp"
#include "hitchin/observable.hpp"
#include "hitchin/phase_space.hpp"
#include "hitchin/rng.hpp"
#include "hitchin/schottky.hpp"
#include "hitchin/special_functions.hpp"
#include "oracles.hpp"

using hitchin::CMatrix;
using hitchin::Complex;
using hitchin::CVector;
using hitchin::ModularParameter;
using hitchin::PhasePoint;
using hitchin::PhasePolynomial;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string g3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

// Appends "; 0.42 s (limit 10 s)" and folds the budget into the verdict.
Outcome finish(bool pass, std::string detail, const Stopwatch& timer,
               double budget_s) {
  const double elapsed = timer.seconds();
  detail += "; " + g3(elapsed) + " s (limit " + g3(budget_s) + " s)";
  return {pass && elapsed < budget_s, std::move(detail)};
}

// 1. numeric moduli dimension == N^2 (g-1) + 1 across the grid
Outcome criterion_1() {
  Stopwatch timer;
  for (int N = 2; N <= 4; ++N) {
    for (int g = 2; g <= 4; ++g) {
      const long formula = hitchin::moduli_dimension_formula(N, g);
      const long numeric = hitchin::moduli_dimension_numeric(
          N, g, 5, 1000u + 10u * static_cast<std::uint64_t>(N) +
                        static_cast<std::uint64_t>(g));
      if (numeric != formula) {
        return finish(false,
                      "mismatch at N=" + std::to_string(N) + " g=" +
                          std::to_string(g) + ": numeric " +
                          std::to_string(numeric) + " vs formula " +
                          std::to_string(formula),
                      timer, 10.0);
      }
    }
  }
  return finish(true, "all 9 (N,g) pairs match exactly, 5 trials each", timer,
                10.0);
}

// 2. twist residual of the lax matrix at random phase points and zeta
Outcome criterion_2() {
  Stopwatch timer;
  hitchin::Rng rng(777);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Complex tau = (n % 2 == 0) ? oracle::kTauI : oracle::kTauB;
    const ModularParameter m(tau);
    const int N = 2 + n % 3;
    const PhasePoint x = hitchin::random_phase_point(
        N, hitchin::SpinKind::random, 1000u + static_cast<std::uint64_t>(n), &m);
    Complex zeta;
    do {
      zeta = rng.uniform(0.0, 1.0) + rng.uniform(0.1, 0.9) * tau;
    } while (hitchin::lattice_distance(zeta, m) < 5e-2);
    worst = std::max(worst, hitchin::moment_residual(x, zeta, m));
  }
  return finish(worst < 1e-10,
                "worst residual " + g3(worst) + " over 100 points (tol 1e-10)",
                timer, 5.0);
}

// 3. K=64 mode solution evaluated on the mid-annulus vs the lax matrix
Outcome criterion_3() {
  Stopwatch timer;
  double worst = 0.0;
  for (const Complex tau : {oracle::kTauI, oracle::kTauB}) {
    const ModularParameter m(tau);
    for (const int N : {2, 3}) {
      for (const std::uint64_t seed : {21u, 22u, 23u}) {
        const PhasePoint x =
            hitchin::random_phase_point(N, hitchin::SpinKind::random, seed, &m);
        const hitchin::LoopField lf =
            hitchin::solve_moment_fourier(x.u, x.w, x.p, 64, m);
        for (const double a : {0.0, 0.17, 0.33, 0.5, 0.81}) {
          const Complex zeta = a + 0.5 * tau;
          const CMatrix direct = hitchin::lax_matrix(x, zeta, m).matrix;
          worst = std::max(
              worst, (lf.eval_zeta(zeta) - direct).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  return finish(worst < 1e-8,
                "worst max-norm gap " + g3(worst) + " (tol 1e-8, K=64)", timer,
                10.0);
}

// 4. tr eta^2 and tr eta^3 take equal values at zeta, zeta+1, zeta+tau
Outcome criterion_4() {
  Stopwatch timer;
  hitchin::Rng rng(444);
  const PhasePoint x = oracle::n3_fixture();
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    const Complex tau = (n % 2 == 0) ? oracle::kTauI : oracle::kTauB;
    const ModularParameter m(tau);
    const Complex zeta =
        rng.uniform(0.1, 0.9) + rng.uniform(0.15, 0.85) * tau;
    for (const int j : {2, 3}) {
      const Complex v = hitchin::spectral_invariant(x, zeta, j, m);
      worst = std::max(
          worst, std::abs(hitchin::spectral_invariant(x, zeta + 1.0, j, m) - v));
      worst = std::max(
          worst, std::abs(hitchin::spectral_invariant(x, zeta + tau, j, m) - v));
    }
  }
  return finish(worst < 1e-10,
                "worst period gap " + g3(worst) + " over 20 points (tol 1e-10)",
                timer, 2.0);
}

// 5. spectrum, energy, and tr p^2 survive T=1 of rk4 at dt=1e-3
Outcome criterion_5() {
  Stopwatch timer;
  const ModularParameter m(oracle::kTauI);
  hitchin::FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.steps = 1000;
  cfg.integrator = hitchin::Integrator::rk4;
  cfg.record_every = 1;
  const hitchin::Trajectory traj =
      hitchin::integrate(oracle::n3_fixture(), cfg, m);
  const std::vector<Complex> zetas = {Complex(0.3, 0.4), Complex(0.1, 0.7),
                                      Complex(0.45, 0.2)};
  const hitchin::ConservationReport rep =
      hitchin::conservation_report(traj, zetas, 0, m);
  double eig = 0.0;
  for (int z = 0; z < 3; ++z) {
    eig = std::max(eig, rep.drifts.at("eig_z" + std::to_string(z)));
  }
  const double h = rep.drifts.at("H");
  const double cas2 = rep.drifts.at("casimir_2");
  const bool pass = eig < 1e-6 && h < 1e-8 && cas2 < 1e-9;
  return finish(pass,
                "eig drift " + g3(eig) + " (tol 1e-6), H drift " + g3(h) +
                    " (tol 1e-8), tr p^2 drift " + g3(cas2) + " (tol 1e-9)",
                timer, 60.0);
}

// 6. theta1 quasi-periodicity, the wp cubic identity, and the lattice-sum
//    cross-check
Outcome criterion_6() {
  Stopwatch timer;
  hitchin::Rng rng(666);
  double worst_qp = 0.0, worst_cubic = 0.0, worst_wp = 0.0;
  for (const Complex tau : {oracle::kTauI, oracle::kTauB}) {
    const ModularParameter m(tau);
    const Complex g2 = oracle::g2_rowsum(tau);
    const Complex g3v = oracle::g3_rowsum(tau);
    const Complex minus_i_pi(0.0, -hitchin::kPi);
    for (int k = 0; k < 25; ++k) {
      const Complex zeta(rng.uniform(-1.0, 1.0), rng.uniform(-0.5, 0.5));
      const Complex factor =
          -std::exp(minus_i_pi * tau + 2.0 * minus_i_pi * zeta);
      const Complex lhs = hitchin::theta1(zeta + tau, m);
      const Complex rhs = factor * hitchin::theta1(zeta, m);
      worst_qp = std::max(
          worst_qp, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));

      const Complex u =
          rng.uniform(0.2, 0.8) + rng.uniform(0.2, 0.8) * tau;
      const Complex P = hitchin::wp(u, m);
      const Complex D = hitchin::wp_deriv(u, m);
      const Complex cube = 4.0 * P * P * P;
      const double scale =
          std::max({1.0, std::abs(D * D), std::abs(cube)});
      worst_cubic = std::max(
          worst_cubic, std::abs(D * D - (cube - g2 * P - g3v)) / scale);
      worst_wp = std::max(worst_wp,
                          std::abs(P - oracle::wp_rowsum(u, tau)) /
                              std::max(1.0, std::abs(P)));
    }
  }
  const bool pass = worst_qp < 1e-12 && worst_cubic < 1e-8 && worst_wp < 1e-8;
  return finish(pass,
                "quasi-periodicity " + g3(worst_qp) +
                    " (tol 1e-12), cubic identity " + g3(worst_cubic) +
                    " (tol 1e-8), lattice-sum gap " + g3(worst_wp) +
                    " (tol 1e-8)",
                timer, 10.0);
}

// 7. plemelj split: exact coefficient sum, pure frequency support, and
//    sampling reconstruction of the boundary loop
Outcome criterion_7() {
  Stopwatch timer;
  hitchin::Rng rng(777);
  double worst_recon = 0.0;
  double worst_sum = 0.0;
  bool support_pure = true;
  for (int i = 0; i < 50; ++i) {
    const int dim = 2 + i % 2;
    const double r = 0.85 + 0.3 * rng.uniform(0.0, 1.0);
    hitchin::LoopField lf = hitchin::make_loop_field(r, 16, dim);
    for (int n = -16; n <= 16; ++n) {
      for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
          lf.coeff(n)(a, b) = rng.complex_uniform(-1.0, 1.0);
        }
      }
    }
    const hitchin::LoopField back = hitchin::loop_from_samples(
        [&lf](Complex z) { return lf.eval(z); }, r, 16, 33);
    const auto [inside, outside] = hitchin::plemelj_split(lf);
    for (int n = -16; n <= 16; ++n) {
      worst_recon = std::max(
          worst_recon, (back.coeff(n) - lf.coeff(n)).cwiseAbs().maxCoeff());
      worst_sum = std::max(worst_sum,
                           (inside.coeff(n) + outside.coeff(n) - lf.coeff(n))
                               .cwiseAbs()
                               .maxCoeff());
      if (n < 0 && inside.coeff(n).norm() != 0.0) support_pure = false;
      if (n >= 0 && outside.coeff(n).norm() != 0.0) support_pure = false;
    }
  }
  const bool pass = worst_recon < 1e-10 && worst_sum == 0.0 && support_pure;
  return finish(pass,
                "reconstruction " + g3(worst_recon) +
                    " (tol 1e-10), split sum gap " + g3(worst_sum) +
                    " (exact), support " +
                    (support_pure ? "pure" : "IMPURE") + ", 50 loops",
                timer, 1.0);
}

// 8. contour quadrature: node doubling is idle and the trace integral
//    reproduces the momentum sum
Outcome criterion_8() {
  Stopwatch timer;
  const ModularParameter m(oracle::kTauI);
  const PhasePoint x = oracle::n3_fixture();
  const hitchin::LaurentWeight one = hitchin::LaurentWeight::one();
  double worst_pair = 0.0;
  for (int j = 1; j <= 3; ++j) {
    const Complex a = hitchin::hitchin_integral(x, j, one, 0.5, m, 64);
    const Complex b = hitchin::hitchin_integral(x, j, one, 0.5, m, 128);
    worst_pair = std::max(worst_pair, std::abs(a - b));
  }
  const double ident = std::abs(
      hitchin::hitchin_integral(x, 1, one, 0.5, m, 128) - x.w.sum());
  const bool pass = worst_pair < 1e-10 && ident < 1e-12;
  return finish(pass,
                "node-doubling gap " + g3(worst_pair) +
                    " (tol 1e-10), momentum-sum gap " + g3(ident) +
                    " (tol 1e-12)",
                timer, 2.0);
}

// 9. bracket: jacobi residuals, exact canonical pairs, casimir commutation
Outcome criterion_9() {
  Stopwatch timer;
  const ModularParameter m(oracle::kTauI);
  const PhasePoint x = oracle::n3_fixture();
  const PhasePoint y =
      hitchin::random_phase_point(3, hitchin::SpinKind::random, 31, &m);

  using P = PhasePolynomial;
  const std::vector<std::array<P, 3>> triples = {
      {P::u(0), P::w(0), P::p(0, 1) * P::p(1, 0)},
      {P::u(1) * P::w(1), P::p(1, 2), P::w(2)},
      {P::p(0, 1), P::p(1, 2), P::p(2, 0)},
      {P::u(0) * P::u(1), P::w(0) * P::w(1), P::p(0, 2)},
      {P::w(1), P::u(2) * P::p(2, 1), P::p(1, 0)},
      {P::p(0, 1) + P::p(1, 0), P::p(0, 2) * P::w(0), P::u(0)},
  };
  double worst_jacobi = 0.0;
  for (const auto& t : triples) {
    for (const PhasePoint* pt : {&x, &y}) {
      worst_jacobi =
          std::max(worst_jacobi, hitchin::jacobi_check(*pt, t[0], t[1], t[2]));
    }
  }

  bool canonical_exact = true;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Complex want(i == j ? 1.0 : 0.0, 0.0);
      canonical_exact &=
          hitchin::canonical_bracket(P::u(i), P::w(j), x) == want;
      canonical_exact &=
          hitchin::canonical_bracket(P::u(i), P::u(j), x) == Complex(0.0, 0.0);
      canonical_exact &=
          hitchin::canonical_bracket(P::w(i), P::w(j), x) == Complex(0.0, 0.0);
    }
  }

  P c1, c2;
  for (int a = 0; a < 3; ++a) {
    c1 = c1 + P::p(a, a);
    for (int b = 0; b < 3; ++b) c2 = c2 + P::p(a, b) * P::p(b, a);
  }
  const std::vector<P> probes = {P::p(0, 1), P::p(1, 2) * P::p(2, 0),
                                 P::u(0) * P::p(1, 0), P::w(2) * P::p(2, 1)};
  double worst_casimir = 0.0;
  for (const P* cas : {&c1, &c2}) {
    for (const P& probe : probes) {
      for (const PhasePoint* pt : {&x, &y}) {
        worst_casimir = std::max(
            worst_casimir,
            std::abs(hitchin::canonical_bracket(*cas, probe, *pt)));
      }
    }
  }
  const bool pass =
      worst_jacobi < 1e-10 && canonical_exact && worst_casimir < 1e-10;
  return finish(pass,
                "jacobi " + g3(worst_jacobi) + " (tol 1e-10), canonical pairs " +
                    (canonical_exact ? "exact" : "INEXACT") + ", casimir " +
                    g3(worst_casimir) + " (tol 1e-10)",
                timer, 5.0);
}

// 10. spinless flow is straight-line motion; rk4 order measured >= 3.8
Outcome criterion_10() {
  Stopwatch timer;
  const ModularParameter m(oracle::kTauI);

  const PhasePoint x0 =
      hitchin::random_phase_point(3, hitchin::SpinKind::spinless, 21, &m);
  hitchin::FlowConfig line;
  line.dt = 1e-3;
  line.steps = 500;
  line.record_every = 100;
  const hitchin::Trajectory traj = hitchin::integrate(x0, line, m);
  double line_err = 0.0;
  for (const hitchin::Snapshot& s : traj.snaps) {
    line_err = std::max(
        line_err, (s.x.u - (x0.u + s.t * x0.w)).cwiseAbs().maxCoeff());
  }

  auto h_drift = [&m](double dt, int steps) {
    hitchin::FlowConfig cfg;
    cfg.dt = dt;
    cfg.steps = steps;
    cfg.record_every = steps;
    const hitchin::Trajectory t =
        hitchin::integrate(oracle::n3_fixture(), cfg, m);
    return hitchin::conservation_report(t, {}, 0, m).drifts.at("H");
  };
  const double d1 = h_drift(0.02, 25);
  const double d2 = h_drift(0.01, 50);
  const double d3 = h_drift(0.005, 100);
  const double order12 = std::log2(d1 / d2);
  const double order23 = std::log2(d2 / d3);
  const bool pass =
      line_err < 1e-12 && order12 >= 3.8 && order23 >= 3.8;
  return finish(pass,
                "straight-line gap " + g3(line_err) +
                    " (tol 1e-12), measured orders " + g3(order12) + ", " +
                    g3(order23) + " (need >= 3.8)",
                timer, 10.0);
}

const char* kLabels[10] = {
    "numeric moduli dimension equals N^2(g-1)+1 on the (N,g) grid",
    "lax twist residual vanishes at random phase points",
    "fourier mode solution matches the lax matrix on the mid-annulus",
    "trace invariants are doubly periodic in the spectral parameter",
    "rk4 flow conserves the lax spectrum, the energy, and tr p^2",
    "theta/wp identities and the independent lattice-sum cross-check hold",
    "plemelj split is coefficient-exact with pure frequency support",
    "contour quadrature is node-doubling stable and sums the momenta",
    "bracket passes jacobi, exact canonical pairs, casimir commutation",
    "spinless flow is straight-line motion and rk4 measures order >= 3.8",
};

Outcome run_criterion(int k) {
  switch (k) {
    case 1: return criterion_1();
    case 2: return criterion_2();
    case 3: return criterion_3();
    case 4: return criterion_4();
    case 5: return criterion_5();
    case 6: return criterion_6();
    case 7: return criterion_7();
    case 8: return criterion_8();
    case 9: return criterion_9();
    default: return criterion_10();
  }
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > 10) {
        std::fprintf(stderr, "criterion must be 1..10\n");
        return 2;
      }
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion k]\n");
      return 2;
    }
  }

  bool all_pass = true;
  for (int k = 1; k <= 10; ++k) {
    if (only != 0 && k != only) continue;
    Outcome o;
    try {
      o = run_criterion(k);
    } catch (const std::exception& e) {
      o = {false, std::string("unexpected exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", k,
                kLabels[k - 1], o.detail.c_str());
  }
  return all_pass ? 0 : 1;
}
