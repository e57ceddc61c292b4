#include "hitchin/phase_space.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "hitchin/errors.hpp"
#include "hitchin/rng.hpp"
#include "hitchin/special_functions.hpp"

namespace hitchin {

PhasePoint make_phase_point(CVector u, CVector w, CMatrix p) {
  const auto N = u.size();
  if (N < 2) {
    throw DegenerateSample("phase point needs N >= 2, got N = " +
                           std::to_string(N));
  }
  if (w.size() != N || p.rows() != N || p.cols() != N) {
    throw DegenerateSample("phase point shape mismatch");
  }
  PhasePoint x;
  x.u = std::move(u);
  x.w = std::move(w);
  x.p = std::move(p);
  x.discarded_diag = x.p.diagonal();
  x.p.diagonal().setZero();
  return x;
}

namespace {

// Positions separated on the curve: retry whole draws until every pair keeps
// lattice distance >= 0.05 (plain mod-1 distance when no modulus is given).
CVector draw_positions(int N, Rng& rng, const ModularParameter* sep) {
  CVector u(N);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (int j = 0; j < N; ++j) {
      const double re = rng.uniform(0.0, 1.0);
      const double im = rng.uniform(-0.12, 0.12);
      u(j) = Complex(re, im);
    }
    bool ok = true;
    for (int j = 0; j < N && ok; ++j) {
      for (int k = 0; k < j && ok; ++k) {
        const Complex d = u(j) - u(k);
        if (sep != nullptr) {
          ok = lattice_distance(d, *sep) >= 0.05;
        } else {
          const double fr = std::abs(d.real() - std::round(d.real()));
          ok = std::hypot(fr, d.imag()) >= 0.05;
        }
      }
    }
    if (ok) return u;
  }
  throw DegenerateSample("could not draw separated positions for N = " +
                         std::to_string(N));
}

CMatrix draw_spin(int N, SpinKind kind, Rng& rng) {
  CMatrix p = CMatrix::Zero(N, N);
  switch (kind) {
    case SpinKind::spinless:
      break;
    case SpinKind::rank1: {
      CVector a(N), b(N);
      for (int j = 0; j < N; ++j) a(j) = rng.complex_uniform(-1.0, 1.0);
      for (int j = 0; j < N; ++j) b(j) = rng.complex_uniform(-1.0, 1.0);
      p = a * b.transpose();
      break;
    }
    case SpinKind::random:
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) p(j, k) = rng.complex_uniform(-1.0, 1.0);
      break;
  }
  return p;
}

}  // namespace

PhasePoint random_phase_point(int N, SpinKind kind, std::uint64_t seed,
                              const ModularParameter* sep) {
  Rng rng(seed);
  CVector u = draw_positions(N, rng, sep);
  CVector w(N);
  for (int j = 0; j < N; ++j) w(j) = rng.complex_uniform(-1.0, 1.0);
  return make_phase_point(std::move(u), std::move(w), draw_spin(N, kind, rng));
}

PhasePoint random_phase_point_real_slice(int N, SpinKind kind,
                                         std::uint64_t seed) {
  Rng rng(seed);
  CVector u(N), w(N);
  {
    CVector full = draw_positions(N, rng, nullptr);
    for (int j = 0; j < N; ++j) u(j) = Complex(full(j).real(), 0.0);
  }
  for (int j = 0; j < N; ++j) w(j) = Complex(rng.uniform(-1.0, 1.0), 0.0);
  CMatrix p = draw_spin(N, kind, rng);
  p = Complex(0.5, 0.0) * (p + p.adjoint().eval());
  return make_phase_point(std::move(u), std::move(w), std::move(p));
}

std::vector<Complex> casimirs(const PhasePoint& x, int kmax) {
  if (kmax < 1 || kmax > x.size()) {
    throw DegenerateSample("casimirs need 1 <= kmax <= N");
  }
  std::vector<Complex> out;
  out.reserve(kmax);
  CMatrix acc = x.p;
  out.push_back(acc.trace());
  for (int k = 2; k <= kmax; ++k) {
    acc = acc * x.p;
    out.push_back(acc.trace());
  }
  return out;
}

CMatrix orbit_attach(const CMatrix& J, const CMatrix& s) {
  if (J.rows() != J.cols() || s.rows() != s.cols() || J.rows() != s.rows()) {
    throw DegenerateSample("orbit_attach shape mismatch");
  }
  Eigen::JacobiSVD<CMatrix> svd(s);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0 || sv(0) / smin >= 1e8) {
    throw SingularS("group point s is numerically singular, cond >= 1e8");
  }
  return s.partialPivLu().solve(J * s);
}

PhasePoint attach_reduced(CVector u, CVector w, const CMatrix& J,
                          const CMatrix& s) {
  return make_phase_point(std::move(u), std::move(w), orbit_attach(J, s));
}

}  // namespace hitchin
