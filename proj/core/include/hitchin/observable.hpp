#pragma once

#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "hitchin/errors.hpp"
#include "hitchin/phase_space.hpp"
#include "hitchin/types.hpp"

namespace hitchin {

struct PhaseGradient {
  CVector du;
  CVector dw;
  CMatrix dp;
};

// A scalar function on phase space. Gradients are holomorphic partials with
// respect to every coordinate, including the spin diagonal (the ambient
// extension off the reduced surface).
class Observable {
 public:
  virtual ~Observable() = default;
  virtual Complex eval(const PhasePoint& x) const = 0;
  virtual bool has_analytic_gradient() const { return false; }
  virtual PhaseGradient gradient(const PhasePoint& x) const;
};

class FunctionObservable final : public Observable {
 public:
  explicit FunctionObservable(std::function<Complex(const PhasePoint&)> fn)
      : fn_(std::move(fn)) {}
  Complex eval(const PhasePoint& x) const override { return fn_(x); }

 private:
  std::function<Complex(const PhasePoint&)> fn_;
};

// Central differences along real steps (valid for holomorphic observables),
// relative step 1e-6, one level of Richardson extrapolation.
PhaseGradient fd_gradient(const Observable& f, const PhasePoint& x);

struct VarId {
  enum class Kind { u, w, p };
  Kind kind;
  int i;
  int j;  // second spin index; -1 for u/w
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

// Polynomials in the coordinates u_j, w_j, p_ab with exact arithmetic on the
// coefficient field; the workhorse for bracket identities.
class PhasePolynomial final : public Observable {
 public:
  using Monomial = std::vector<std::pair<VarId, int>>;  // sorted, exponents >= 1

  PhasePolynomial() = default;

  static PhasePolynomial constant(Complex c);
  static PhasePolynomial u(int j);
  static PhasePolynomial w(int j);
  static PhasePolynomial p(int a, int b);

  PhasePolynomial operator+(const PhasePolynomial& rhs) const;
  PhasePolynomial operator-(const PhasePolynomial& rhs) const;
  PhasePolynomial operator*(const PhasePolynomial& rhs) const;
  PhasePolynomial scaled(Complex c) const;

  PhasePolynomial partial(const VarId& v) const;
  std::set<VarId> variables() const;
  const std::map<Monomial, Complex>& terms() const { return terms_; }

  Complex eval(const PhasePoint& x) const override;
  bool has_analytic_gradient() const override { return true; }
  PhaseGradient gradient(const PhasePoint& x) const override;

 private:
  void add_term(Monomial m, Complex c);

  std::map<Monomial, Complex> terms_;
};

// Exact symbolic bracket: canonical (u,w) pairs plus the spin structure
// {p_ab, p_cd} = d_cb p_ad - d_ad p_cb.
PhasePolynomial poly_bracket(const PhasePolynomial& f,
                             const PhasePolynomial& g);

// Numeric bracket via gradients (analytic when present, finite differences
// otherwise): sum_j (df/du_j dg/dw_j - df/dw_j dg/du_j) + tr(p^T [F_f, F_g]).
// The transpose in the spin trace is what realizes the structure relation
// above.
Complex canonical_bracket(const Observable& f, const Observable& g,
                          const PhasePoint& x);

// |{f,{g,h}} + {g,{h,f}} + {h,{f,g}}| evaluated at x, composed symbolically.
double jacobi_check(const PhasePoint& x, const PhasePolynomial& f,
                    const PhasePolynomial& g, const PhasePolynomial& h);

}  // namespace hitchin
