#include "hitchin/lax.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hitchin/errors.hpp"
#include "hitchin/parallel.hpp"
#include "hitchin/special_functions.hpp"

namespace hitchin {

Complex lax_kernel(Complex d, Complex zeta, const ModularParameter& m) {
  const Complex pref = -1.0 / (2.0 * kPi * kImagUnit);
  return pref * theta1(d - zeta, m) * theta1_deriv(0.0, m, 1) /
         (theta1(d, m) * theta1(zeta, m));
}

namespace {

void check_positions(const PhasePoint& x, const ModularParameter& m) {
  const int N = x.size();
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < j; ++k) {
      if (lattice_distance(x.u(j) - x.u(k), m) < kPoleGuard) {
        throw CollidingPositions("u_" + std::to_string(j) + " and u_" +
                                 std::to_string(k) +
                                 " collide modulo the lattice");
      }
    }
  }
}

}  // namespace

LaxSample lax_matrix(const PhasePoint& x, Complex zeta,
                     const ModularParameter& m) {
  if (lattice_distance(zeta, m) < kPoleGuard) {
    throw SpectralPole("spectral point zeta sits on the lattice");
  }
  check_positions(x, m);

  const int N = x.size();
  CMatrix eta = CMatrix::Zero(N, N);
  eta.diagonal() = x.w;
  const Complex pref = -1.0 / (2.0 * kPi * kImagUnit);
  const Complex th_zeta = theta1(zeta, m);
  const Complex th1p0 = theta1_deriv(0.0, m, 1);
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) {
      if (j == k) continue;
      const Complex d = x.u(j) - x.u(k);
      eta(j, k) =
          x.p(j, k) * pref * theta1(d - zeta, m) * th1p0 / (theta1(d, m) * th_zeta);
    }
  }
  return {zeta, eta};
}

Complex hamiltonian(const PhasePoint& x, const ModularParameter& m) {
  check_positions(x, m);
  const int N = x.size();
  Complex h = 0.5 * (x.w.array() * x.w.array()).sum();
  const Complex e2term = kPi * kPi * eisenstein_e2(m) / 3.0;
  const double coupling = 1.0 / (4.0 * kPi * kPi);
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < j; ++k) {
      h += coupling * x.p(j, k) * x.p(k, j) * (wp(x.u(j) - x.u(k), m) + e2term);
    }
  }
  return h;
}

Complex spectral_invariant(const PhasePoint& x, Complex zeta, int j,
                           const ModularParameter& m) {
  if (j < 1) throw std::invalid_argument("spectral invariant needs j >= 1");
  const CMatrix eta = lax_matrix(x, zeta, m).matrix;
  CMatrix pw = eta;
  for (int i = 1; i < j; ++i) pw = pw * eta;
  return pw.trace();
}

Complex LaurentWeight::eval_zeta(Complex zeta) const {
  Complex out(0.0, 0.0);
  for (const auto& [n, c] : coeffs) {
    out += c * std::exp(2.0 * kPi * kImagUnit * static_cast<double>(n) * zeta);
  }
  return out;
}

LaurentWeight LaurentWeight::one() {
  LaurentWeight nu;
  nu.coeffs[0] = Complex(1.0, 0.0);
  return nu;
}

Complex hitchin_integral(const PhasePoint& x, int j, const LaurentWeight& nu,
                         double contour_im, const ModularParameter& m, int M) {
  if (!(contour_im > 0.0 && contour_im < m.tau.imag())) {
    throw std::invalid_argument("contour needs 0 < Im zeta < Im tau");
  }
  if (M < 1) throw std::invalid_argument("quadrature needs M >= 1 nodes");
  for (int s = 0; s < M; ++s) {
    const Complex zeta_s(static_cast<double>(s) / M, contour_im);
    if (lattice_distance(zeta_s, m) < kPoleGuard) {
      throw ContourThroughPole("quadrature node " + std::to_string(s) +
                               " within pole guard of the lattice");
    }
  }
  Complex acc(0.0, 0.0);
  for (int s = 0; s < M; ++s) {
    const Complex zeta_s(static_cast<double>(s) / M, contour_im);
    acc += nu.eval_zeta(zeta_s) * spectral_invariant(x, zeta_s, j, m);
  }
  return acc / static_cast<double>(M);
}

double moment_residual(const PhasePoint& x, Complex zeta,
                       const ModularParameter& m) {
  const CMatrix shifted = lax_matrix(x, zeta + m.tau, m).matrix;
  const CMatrix base = lax_matrix(x, zeta, m).matrix;
  const int N = x.size();
  CVector t(N);
  for (int j = 0; j < N; ++j) {
    t(j) = std::exp(2.0 * kPi * kImagUnit * x.u(j));
  }
  const CMatrix twisted =
      t.asDiagonal() * base * t.cwiseInverse().asDiagonal();
  return (shifted - twisted).norm();
}

LoopField solve_moment_fourier(const CVector& u, const CVector& w,
                               const CMatrix& p, int K,
                               const ModularParameter& m) {
  const int N = static_cast<int>(u.size());
  if (w.size() != N || p.rows() != N || p.cols() != N || N < 1 || K < 0) {
    throw std::invalid_argument("moment solve shape mismatch");
  }
  LoopField lf = make_loop_field(std::sqrt(std::abs(m.q)), K, N);

  CMatrix twist(N, N);  // e^{2 pi i (u_k - u_j)} at (j,k)
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) {
      twist(j, k) = std::exp(2.0 * kPi * kImagUnit * (u(k) - u(j)));
    }
  }

  Complex qn(1.0, 0.0);
  for (int n = 0; n <= K; ++n) {
    CMatrix& c = lf.coeff(n);
    for (int j = 0; j < N; ++j) {
      for (int k = 0; k < N; ++k) {
        if (j == k) continue;
        const Complex div = 1.0 - twist(j, k) * qn;
        if (std::abs(div) < 1e-10) {
          throw Resonance("mode divisor vanishes at (n,j,k) = (" +
                          std::to_string(n) + "," + std::to_string(j) + "," +
                          std::to_string(k) + ")");
        }
        c(j, k) = p(j, k) / div;
      }
    }
    qn *= m.q;
  }
  // Negative modes via c_n = p s / (s - e), s = q^{|n|}; well conditioned as
  // |s| -> 0 where the direct divisor 1 - e q^n overflows.
  Complex s(1.0, 0.0);
  for (int n = -1; n >= -K; --n) {
    s *= m.q;
    CMatrix& c = lf.coeff(n);
    for (int j = 0; j < N; ++j) {
      for (int k = 0; k < N; ++k) {
        if (j == k) continue;
        const Complex den = s - twist(j, k);
        if (std::abs(den) < 1e-10 * std::abs(s)) {
          throw Resonance("mode divisor vanishes at (n,j,k) = (" +
                          std::to_string(n) + "," + std::to_string(j) + "," +
                          std::to_string(k) + ")");
        }
        c(j, k) = p(j, k) * s / den;
      }
    }
  }
  lf.coeff(0).diagonal() = w;
  return lf;
}

std::vector<CharPolyRow> spectral_curve_sample(const PhasePoint& x,
                                               const std::vector<Complex>& grid,
                                               const ModularParameter& m) {
  const int N = x.size();
  std::vector<CharPolyRow> rows(grid.size());
  parallel_for(static_cast<int>(grid.size()), [&](int g) {
    const Complex zeta = grid[static_cast<std::size_t>(g)];
    const CMatrix eta = lax_matrix(x, zeta, m).matrix;
    // Power traces -> elementary symmetric functions by Newton's identities.
    std::vector<Complex> s(static_cast<std::size_t>(N) + 1);
    CMatrix pw = CMatrix::Identity(N, N);
    for (int i = 1; i <= N; ++i) {
      pw = pw * eta;
      s[static_cast<std::size_t>(i)] = pw.trace();
    }
    std::vector<Complex> e(static_cast<std::size_t>(N) + 1);
    e[0] = Complex(1.0, 0.0);
    for (int k = 1; k <= N; ++k) {
      Complex acc(0.0, 0.0);
      double sign = 1.0;
      for (int i = 1; i <= k; ++i) {
        acc += sign * e[static_cast<std::size_t>(k - i)] *
               s[static_cast<std::size_t>(i)];
        sign = -sign;
      }
      e[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
    }
    CharPolyRow row;
    row.zeta = zeta;
    row.coeffs.resize(static_cast<std::size_t>(N) + 1);
    double sign = 1.0;
    for (int k = 0; k <= N; ++k) {
      row.coeffs[static_cast<std::size_t>(k)] =
          sign * e[static_cast<std::size_t>(k)];
      sign = -sign;
    }
    rows[static_cast<std::size_t>(g)] = std::move(row);
  });
  return rows;
}

}  // namespace hitchin
