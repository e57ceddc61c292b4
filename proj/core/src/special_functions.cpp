#include "hitchin/special_functions.hpp"

#include <cmath>
#include <string>

namespace hitchin {

namespace {

std::string cstr(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

// Binomial coefficients up to the max derivative order used here.
constexpr double kBinom[4][4] = {
    {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

}  // namespace

ReducedArgument reduce_modulo_lattice(Complex zeta, const ModularParameter& m) {
  ReducedArgument out;
  const double beta = zeta.imag() / m.tau.imag();
  out.n = std::lround(beta);
  const double alpha = zeta.real() - static_cast<double>(out.n) * m.tau.real();
  out.m = std::lround(alpha);
  out.reduced = zeta - static_cast<double>(out.m) -
                static_cast<double>(out.n) * m.tau;
  return out;
}

double lattice_distance(Complex z, const ModularParameter& m) {
  const ReducedArgument r = reduce_modulo_lattice(z, m);
  double best = std::abs(r.reduced);
  // The reduced point sits in one band cell; the closest lattice point is one
  // of the nine neighbours of the cell's origin.
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      const Complex w = r.reduced - Complex(a, 0) - static_cast<double>(b) * m.tau;
      best = std::min(best, std::abs(w));
    }
  }
  return best;
}

std::array<Complex, 4> theta1_derivs(Complex zeta, const ModularParameter& m,
                                     int kmax, const SeriesConfig& cfg) {
  if (kmax < 0 || kmax > 3) {
    throw GradientUnavailable("theta1 derivative order must be in [0,3], got " +
                              std::to_string(kmax));
  }
  const ReducedArgument red = reduce_modulo_lattice(zeta, m);
  const Complex z0 = red.reduced;

  // Raw series at the reduced argument. Terms are paired j, -1-j so that the
  // two indices of equal |n + 1/2| enter together and the tail is monotone.
  std::array<Complex, 4> raw{};
  const Complex ipi = kImagUnit * kPi;
  int consecutive_small = 0;
  int terms = 0;
  for (int j = 0;; ++j) {
    double pair_mag = 0.0;
    for (const int n : {j, -1 - j}) {
      const double np = static_cast<double>(n) + 0.5;
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      const Complex base =
          sign * std::exp(ipi * (np * np) * m.tau + (2.0 * n + 1.0) * ipi * z0);
      Complex factor = 1.0;
      const Complex dfac = (2.0 * n + 1.0) * ipi;
      for (int k = 0; k <= kmax; ++k) {
        raw[k] += base * factor;
        if (k == kmax) pair_mag = std::max(pair_mag, std::abs(base * factor));
        factor *= dfac;
      }
      ++terms;
    }
    if (terms >= cfg.max_terms) {
      throw NonConvergent("theta1 series hit max_terms=" +
                          std::to_string(cfg.max_terms) + " at zeta=" +
                          cstr(zeta));
    }
    if (pair_mag < cfg.tol / 10.0) {
      if (++consecutive_small >= 2) break;
    } else {
      consecutive_small = 0;
    }
  }
  for (int k = 0; k <= kmax; ++k) raw[k] *= -kImagUnit;

  // Quasi-periodicity transfer back to the original argument:
  //   theta1(z0 + m + n tau) = (-1)^{m+n} e^{-pi i n^2 tau - 2 pi i n z0} theta1(z0)
  // so theta1(zeta) = C e^{b z0} theta1(z0) with b = -2 pi i n, and derivatives
  // follow by the Leibniz rule applied to the exponential prefactor.
  const double parity = ((red.m + red.n) % 2 == 0) ? 1.0 : -1.0;
  const double nn = static_cast<double>(red.n);
  const Complex b = -2.0 * kPi * kImagUnit * nn;
  const Complex C =
      parity * std::exp(-kImagUnit * kPi * nn * nn * m.tau + b * z0);

  std::array<Complex, 4> out{};
  for (int k = 0; k <= kmax; ++k) {
    Complex acc = 0.0;
    Complex bpow = 1.0;
    for (int j = k; j >= 0; --j) {
      acc += kBinom[k][j] * bpow * raw[j];
      bpow *= b;
    }
    out[k] = C * acc;
  }
  return out;
}

Complex theta1(Complex zeta, const ModularParameter& m, const SeriesConfig& cfg) {
  return theta1_derivs(zeta, m, 0, cfg)[0];
}

Complex theta1_deriv(Complex zeta, const ModularParameter& m, int order,
                     const SeriesConfig& cfg) {
  if (order < 1 || order > 3) {
    throw GradientUnavailable("theta1_deriv supports order 1..3, got " +
                              std::to_string(order));
  }
  return theta1_derivs(zeta, m, order, cfg)[order];
}

Complex theta_paper(Complex zeta, const ModularParameter& m,
                    const SeriesConfig& cfg) {
  const ReducedArgument red = reduce_modulo_lattice(zeta, m);
  const Complex z0 = red.reduced;
  const Complex ipi = kImagUnit * kPi;

  Complex raw = 1.0;  // n = 0 term
  int consecutive_small = 0;
  int terms = 1;
  for (int n = 1;; ++n) {
    const Complex term = std::exp(ipi * static_cast<double>(n) *
                                  static_cast<double>(n) * m.tau) *
                         (std::exp(2.0 * n * ipi * z0) +
                          std::exp(-2.0 * n * ipi * z0));
    raw += term;
    terms += 2;
    if (terms >= cfg.max_terms) {
      throw NonConvergent("theta series hit max_terms=" +
                          std::to_string(cfg.max_terms) + " at zeta=" +
                          cstr(zeta));
    }
    if (std::abs(term) < cfg.tol / 10.0) {
      if (++consecutive_small >= 2) break;
    } else {
      consecutive_small = 0;
    }
  }

  // theta(z0 + m + n tau) = e^{-pi i n^2 tau - 2 pi i n z0} theta(z0); the
  // integer shift is invisible.
  const double nn = static_cast<double>(red.n);
  const Complex factor =
      std::exp(-ipi * nn * nn * m.tau - 2.0 * kPi * kImagUnit * nn * z0);
  return factor * raw;
}

Complex eisenstein_e2(const ModularParameter& m, const SeriesConfig& cfg) {
  Complex acc = 1.0;
  Complex qn = 1.0;
  int consecutive_small = 0;
  for (int n = 1;; ++n) {
    if (n > cfg.max_terms) {
      throw NonConvergent("E2 series hit max_terms=" +
                          std::to_string(cfg.max_terms));
    }
    qn *= m.q;
    long sigma1 = 0;
    for (int d = 1; d <= n; ++d) {
      if (n % d == 0) sigma1 += d;
    }
    const Complex term = -24.0 * static_cast<double>(sigma1) * qn;
    acc += term;
    if (std::abs(term) < cfg.tol / 10.0) {
      if (++consecutive_small >= 2) break;
    } else {
      consecutive_small = 0;
    }
  }
  return acc;
}

Complex wp(Complex u, const ModularParameter& m, const SeriesConfig& cfg) {
  if (lattice_distance(u, m) < kPoleGuard) {
    throw PoleAtLattice("wp argument within pole guard of the lattice: u=" +
                        cstr(u));
  }
  // wp is elliptic, so the band-reduced argument needs no correction factors.
  const Complex u0 = reduce_modulo_lattice(u, m).reduced;
  const auto t = theta1_derivs(u0, m, 2, cfg);
  const Complex lt1 = t[1] / t[0];
  return -(t[2] / t[0] - lt1 * lt1) -
         (kPi * kPi / 3.0) * eisenstein_e2(m, cfg);
}

Complex wp_deriv(Complex u, const ModularParameter& m, const SeriesConfig& cfg) {
  if (lattice_distance(u, m) < kPoleGuard) {
    throw PoleAtLattice("wp' argument within pole guard of the lattice: u=" +
                        cstr(u));
  }
  const Complex u0 = reduce_modulo_lattice(u, m).reduced;
  const auto t = theta1_derivs(u0, m, 3, cfg);
  const Complex r1 = t[1] / t[0];
  const Complex r2 = t[2] / t[0];
  const Complex r3 = t[3] / t[0];
  return -(r3 - 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1);
}

}  // namespace hitchin
