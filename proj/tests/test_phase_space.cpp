#include "hitchin/phase_space.hpp"

#include <cmath>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "hitchin/errors.hpp"
#include "hitchin/observable.hpp"
#include "hitchin/rng.hpp"
#include "hitchin/special_functions.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using hitchin::CMatrix;
using hitchin::Complex;
using hitchin::CVector;
using hitchin::ModularParameter;
using hitchin::PhasePoint;
using hitchin::PhasePolynomial;

namespace {

CMatrix random_full_matrix(int n, hitchin::Rng& rng) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = rng.complex_uniform(-1.0, 1.0);
  }
  return m;
}

}  // namespace

TEST(MakePhasePoint, RemovesAndRecordsDiagonal) {
  CVector u(2), w(2);
  u << Complex(0.1, 0.0), Complex(0.6, 0.0);
  w << Complex(0.0, 0.0), Complex(0.0, 0.0);
  CMatrix p(2, 2);
  p << Complex(3.0, 1.0), Complex(2.0, 0.0),
       Complex(5.0, 0.0), Complex(-1.0, 2.0);
  const PhasePoint x = hitchin::make_phase_point(u, w, p);
  EXPECT_EQ(x.p(0, 0), Complex(0.0, 0.0));
  EXPECT_EQ(x.p(1, 1), Complex(0.0, 0.0));
  EXPECT_EQ(x.p(0, 1), Complex(2.0, 0.0));
  EXPECT_EQ(x.discarded_diag(0), Complex(3.0, 1.0));
  EXPECT_EQ(x.discarded_diag(1), Complex(-1.0, 2.0));
}

TEST(MakePhasePoint, RejectsBadShapes) {
  CVector u1(1), w1(1);
  u1 << Complex(0.0, 0.0);
  w1 << Complex(0.0, 0.0);
  EXPECT_THROW(hitchin::make_phase_point(u1, w1, CMatrix::Zero(1, 1)),
               hitchin::DegenerateSample);
  CVector u(3), w(2);
  u.setZero();
  w.setZero();
  EXPECT_THROW(hitchin::make_phase_point(u, w, CMatrix::Zero(3, 3)),
               hitchin::DegenerateSample);
  CVector w3 = CVector::Zero(3);
  EXPECT_THROW(hitchin::make_phase_point(u, w3, CMatrix::Zero(2, 3)),
               hitchin::DegenerateSample);
}

TEST(RandomPhasePoint, DeterministicPerSeed) {
  const PhasePoint a = hitchin::random_phase_point(3, hitchin::SpinKind::random, 5);
  const PhasePoint b = hitchin::random_phase_point(3, hitchin::SpinKind::random, 5);
  EXPECT_EQ((a.u - b.u).norm(), 0.0);
  EXPECT_EQ((a.w - b.w).norm(), 0.0);
  EXPECT_EQ((a.p - b.p).norm(), 0.0);
  const PhasePoint c = hitchin::random_phase_point(3, hitchin::SpinKind::random, 6);
  EXPECT_GT((a.u - c.u).norm(), 0.0);
}

TEST(RandomPhasePoint, HonorsLatticeSeparation) {
  const ModularParameter m(oracle::kTauI);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PhasePoint x =
        hitchin::random_phase_point(5, hitchin::SpinKind::random, seed, &m);
    for (int j = 0; j < 5; ++j) {
      for (int k = 0; k < j; ++k) {
        EXPECT_GE(hitchin::lattice_distance(x.u(j) - x.u(k), m), 0.05)
            << "seed " << seed;
      }
    }
  }
}

TEST(RandomPhasePoint, SpinKindsShapeTheSpinMatrix) {
  const PhasePoint none =
      hitchin::random_phase_point(4, hitchin::SpinKind::spinless, 2);
  EXPECT_EQ(none.p.norm(), 0.0);

  const PhasePoint r1 =
      hitchin::random_phase_point(4, hitchin::SpinKind::rank1, 2);
  CMatrix full = r1.p;
  full.diagonal() = r1.discarded_diag;
  Eigen::JacobiSVD<CMatrix> svd(full);
  const auto& sv = svd.singularValues();
  EXPECT_GT(sv(0), 1e-3);
  EXPECT_LE(sv(1), 1e-12 * sv(0));
}

TEST(RandomPhasePoint, RealSliceIsRealAndHermitian) {
  const PhasePoint x =
      hitchin::random_phase_point_real_slice(3, hitchin::SpinKind::random, 9);
  EXPECT_EQ(x.u.imag().norm(), 0.0);
  EXPECT_EQ(x.w.imag().norm(), 0.0);
  EXPECT_LE((x.p - x.p.adjoint().eval()).norm(), 1e-14);
}

TEST(Casimirs, MatchDirectTraces) {
  hitchin::Rng rng(31);
  CVector u(3), w(3);
  u << Complex(0.1, 0.0), Complex(0.4, 0.0), Complex(0.8, 0.0);
  w.setZero();
  const CMatrix p = random_full_matrix(3, rng);
  const PhasePoint x = hitchin::make_phase_point(u, w, p);
  const auto cas = hitchin::casimirs(x, 3);
  ASSERT_EQ(cas.size(), 3u);
  EXPECT_TRUE(near_abs(cas[0], x.p.trace(), 1e-14));
  EXPECT_TRUE(near_abs(cas[1], (x.p * x.p).trace(), 1e-14));
  EXPECT_TRUE(near_abs(cas[2], (x.p * x.p * x.p).trace(), 1e-14));
  EXPECT_THROW(hitchin::casimirs(x, 0), hitchin::DegenerateSample);
  EXPECT_THROW(hitchin::casimirs(x, 4), hitchin::DegenerateSample);
}

TEST(OrbitAttach, ConjugationPreservesTraces) {
  hitchin::Rng rng(41);
  const CMatrix J = random_full_matrix(3, rng);
  const CMatrix s = CMatrix::Identity(3, 3) + 0.2 * random_full_matrix(3, rng);
  const CMatrix p = hitchin::orbit_attach(J, s);
  CMatrix pj = CMatrix::Identity(3, 3), jj = CMatrix::Identity(3, 3);
  for (int k = 1; k <= 3; ++k) {
    pj = (pj * p).eval();
    jj = (jj * J).eval();
    EXPECT_TRUE(near_rel(pj.trace(), jj.trace(), 1e-12)) << "k = " << k;
  }
  // OrbitData overload is the same attachment
  EXPECT_LE((hitchin::orbit_attach(hitchin::OrbitData{J, s}) - p).norm(), 0.0);
}

TEST(OrbitAttach, RejectsIllConditionedGroupPoint) {
  hitchin::Rng rng(43);
  const CMatrix J = random_full_matrix(3, rng);
  CMatrix s = random_full_matrix(3, rng);
  s.col(2).setZero();
  EXPECT_THROW(hitchin::orbit_attach(J, s), hitchin::SingularS);
  EXPECT_THROW(hitchin::orbit_attach(J, CMatrix::Zero(3, 3)), hitchin::SingularS);
}

TEST(OrbitAttach, AttachReducedLandsOnReducedSurface) {
  hitchin::Rng rng(47);
  const CMatrix J = random_full_matrix(3, rng);
  const CMatrix s = CMatrix::Identity(3, 3) + 0.1 * random_full_matrix(3, rng);
  CVector u(3), w(3);
  u << Complex(0.1, 0.0), Complex(0.45, 0.0), Complex(0.8, 0.0);
  w.setZero();
  const PhasePoint x = hitchin::attach_reduced(u, w, J, s);
  const CMatrix full = hitchin::orbit_attach(J, s);
  EXPECT_EQ(x.p.diagonal().norm(), 0.0);
  EXPECT_LE((x.discarded_diag - full.diagonal()).norm(), 1e-15);
  CMatrix off = full;
  off.diagonal().setZero();
  EXPECT_LE((x.p - off).norm(), 1e-15);
}

// ---- observables and the bracket ----

TEST(Observable, PolynomialEvalAndAnalyticGradient) {
  const PhasePoint x = oracle::n3_fixture();
  const PhasePolynomial f = PhasePolynomial::u(0) * PhasePolynomial::u(0) *
                                PhasePolynomial::w(1) +
                            PhasePolynomial::p(0, 1).scaled(Complex(3.0, 0.0)) *
                                PhasePolynomial::p(1, 0) +
                            PhasePolynomial::p(1, 2);
  const Complex direct = x.u(0) * x.u(0) * x.w(1) +
                         3.0 * x.p(0, 1) * x.p(1, 0) + x.p(1, 2);
  EXPECT_TRUE(near_rel(f.eval(x), direct, 1e-14));

  ASSERT_TRUE(f.has_analytic_gradient());
  const hitchin::PhaseGradient ga = f.gradient(x);
  const hitchin::PhaseGradient gf = hitchin::fd_gradient(f, x);
  EXPECT_LE((ga.du - gf.du).norm(), 1e-8);
  EXPECT_LE((ga.dw - gf.dw).norm(), 1e-8);
  EXPECT_LE((ga.dp - gf.dp).norm(), 1e-8);
  // spot values
  EXPECT_TRUE(near_rel(ga.du(0), 2.0 * x.u(0) * x.w(1), 1e-14));
  EXPECT_TRUE(near_rel(ga.dw(1), x.u(0) * x.u(0), 1e-14));
  EXPECT_TRUE(near_rel(ga.dp(0, 1), 3.0 * x.p(1, 0), 1e-14));
}

TEST(Observable, PlainFunctionHasNoAnalyticGradient) {
  const hitchin::FunctionObservable f(
      [](const PhasePoint& x) { return x.u(0) * x.w(0); });
  EXPECT_FALSE(f.has_analytic_gradient());
  EXPECT_THROW(f.gradient(oracle::n3_fixture()), hitchin::GradientUnavailable);
  // the finite-difference path still gives the gradient
  const hitchin::PhaseGradient g = hitchin::fd_gradient(f, oracle::n3_fixture());
  EXPECT_TRUE(near_rel(g.du(0), oracle::n3_fixture().w(0), 1e-9));
}

TEST(Bracket, CanonicalPairsAreExact) {
  const PhasePoint x = oracle::n3_fixture();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Complex want(i == j ? 1.0 : 0.0, 0.0);
      EXPECT_EQ(hitchin::canonical_bracket(PhasePolynomial::u(i),
                                           PhasePolynomial::w(j), x),
                want);
      EXPECT_EQ(hitchin::canonical_bracket(PhasePolynomial::u(i),
                                           PhasePolynomial::u(j), x),
                Complex(0.0, 0.0));
      EXPECT_EQ(hitchin::canonical_bracket(PhasePolynomial::w(i),
                                           PhasePolynomial::w(j), x),
                Complex(0.0, 0.0));
      // symbolic bracket agrees: a constant polynomial delta_ij
      const PhasePolynomial sym = hitchin::poly_bracket(PhasePolynomial::u(i),
                                                        PhasePolynomial::w(j));
      EXPECT_TRUE((sym - PhasePolynomial::constant(want)).terms().empty());
    }
  }
}

TEST(Bracket, SpinStructureRelations) {
  // {p_ab, p_cd} = d_cb p_ad - d_ad p_cb, exercised on both index patterns
  const PhasePolynomial p01 = PhasePolynomial::p(0, 1);
  const PhasePolynomial p12 = PhasePolynomial::p(1, 2);
  const PhasePolynomial p10 = PhasePolynomial::p(1, 0);

  const PhasePolynomial lhs1 = hitchin::poly_bracket(p01, p12);
  EXPECT_TRUE((lhs1 - PhasePolynomial::p(0, 2)).terms().empty());

  const PhasePolynomial lhs2 = hitchin::poly_bracket(p01, p10);
  const PhasePolynomial want2 =
      PhasePolynomial::p(0, 0) - PhasePolynomial::p(1, 1);
  EXPECT_TRUE((lhs2 - want2).terms().empty());

  // numeric path, analytic gradients: exact equality with the matrix entry
  const PhasePoint x = oracle::n3_fixture();
  EXPECT_EQ(hitchin::canonical_bracket(p01, p12, x), x.p(0, 2));
  // p is diagonal-free on the reduced surface, so {p01, p10} evaluates to 0
  EXPECT_EQ(hitchin::canonical_bracket(p01, p10, x), Complex(0.0, 0.0));
}

TEST(Bracket, AntisymmetryAndLeibniz) {
  const PhasePolynomial f =
      PhasePolynomial::u(0) * PhasePolynomial::w(1) + PhasePolynomial::p(0, 2);
  const PhasePolynomial g =
      PhasePolynomial::p(2, 0) * PhasePolynomial::p(0, 1) + PhasePolynomial::w(0);
  const PhasePolynomial h = PhasePolynomial::u(2) + PhasePolynomial::p(1, 0);

  const ModularParameter m(oracle::kTauI);
  for (std::uint64_t seed : {1u, 2u}) {
    const PhasePoint x =
        hitchin::random_phase_point(3, hitchin::SpinKind::random, seed, &m);
    const Complex fg = hitchin::poly_bracket(f, g).eval(x);
    const Complex gf = hitchin::poly_bracket(g, f).eval(x);
    EXPECT_TRUE(near_abs(fg, -gf, 1e-12 * std::max(1.0, std::abs(fg))));

    const Complex prod_rule = hitchin::poly_bracket(f * g, h).eval(x);
    const Complex expanded = f.eval(x) * hitchin::poly_bracket(g, h).eval(x) +
                             hitchin::poly_bracket(f, h).eval(x) * g.eval(x);
    EXPECT_TRUE(
        near_abs(prod_rule, expanded, 1e-10 * std::max(1.0, std::abs(expanded))));

    // numeric bracket agrees with the symbolic one
    EXPECT_TRUE(near_abs(hitchin::canonical_bracket(f, g, x), fg,
                         1e-12 * std::max(1.0, std::abs(fg))));
  }
}

TEST(Bracket, JacobiIdentityOnQuadraticObservables) {
  const PhasePoint x = oracle::n3_fixture();
  const PhasePolynomial a = PhasePolynomial::p(0, 1) * PhasePolynomial::p(1, 2);
  const PhasePolynomial b = PhasePolynomial::u(0) * PhasePolynomial::w(0);
  const PhasePolynomial c = PhasePolynomial::p(2, 1) + PhasePolynomial::w(1);
  EXPECT_LE(hitchin::jacobi_check(x, a, b, c), 1e-10);
  const PhasePolynomial d = PhasePolynomial::p(1, 0) * PhasePolynomial::p(0, 2);
  EXPECT_LE(hitchin::jacobi_check(x, a, c, d), 1e-10);
}

TEST(Bracket, TraceCasimirsCommuteWithSpinObservables) {
  // tr p and tr p^2 generate no motion on the orbit
  PhasePolynomial c1, c2;
  for (int a = 0; a < 3; ++a) {
    c1 = c1 + PhasePolynomial::p(a, a);
    for (int b = 0; b < 3; ++b) {
      c2 = c2 + PhasePolynomial::p(a, b) * PhasePolynomial::p(b, a);
    }
  }
  const PhasePolynomial probes[] = {
      PhasePolynomial::p(0, 1),
      PhasePolynomial::p(1, 2) * PhasePolynomial::p(2, 0),
      PhasePolynomial::u(0) * PhasePolynomial::p(1, 0),
  };
  const ModularParameter m(oracle::kTauI);
  const PhasePoint pts[] = {
      oracle::n3_fixture(),
      hitchin::random_phase_point(3, hitchin::SpinKind::random, 13, &m)};
  for (const PhasePoint& x : pts) {
    for (const PhasePolynomial& s : probes) {
      EXPECT_LE(std::abs(hitchin::poly_bracket(c1, s).eval(x)), 1e-12);
      EXPECT_LE(std::abs(hitchin::poly_bracket(c2, s).eval(x)), 1e-12);
    }
  }
}

TEST(Bracket, FiniteDifferencePathMatchesAnalytic) {
  // same observable once as a polynomial, once as an opaque function
  const PhasePolynomial f_poly =
      PhasePolynomial::p(0, 1) * PhasePolynomial::p(1, 0) +
      PhasePolynomial::u(1) * PhasePolynomial::w(1);
  const hitchin::FunctionObservable f_fn([](const PhasePoint& x) {
    return x.p(0, 1) * x.p(1, 0) + x.u(1) * x.w(1);
  });
  const PhasePolynomial g = PhasePolynomial::p(1, 2) + PhasePolynomial::w(1);
  const PhasePoint x = oracle::n3_fixture();
  const Complex exact = hitchin::canonical_bracket(f_poly, g, x);
  const Complex fd = hitchin::canonical_bracket(f_fn, g, x);
  EXPECT_TRUE(near_abs(fd, exact, 1e-8));
}
