#include "hitchin/observable.hpp"

#include <algorithm>
#include <cmath>

namespace hitchin {

PhaseGradient Observable::gradient(const PhasePoint&) const {
  throw GradientUnavailable(
      "observable has no analytic gradient; use fd_gradient");
}

PhaseGradient fd_gradient(const Observable& f, const PhasePoint& x) {
  PhasePoint y = x;
  const auto deriv = [&f, &y](Complex* slot, Complex base) {
    const double h0 = 1e-6 * std::max(1.0, std::abs(base));
    const auto central = [&](double h) {
      *slot = base + h;
      const Complex fp = f.eval(y);
      *slot = base - h;
      const Complex fm = f.eval(y);
      *slot = base;
      return (fp - fm) / (2.0 * h);
    };
    return (4.0 * central(0.5 * h0) - central(h0)) / 3.0;
  };

  const int N = x.size();
  PhaseGradient g;
  g.du = CVector::Zero(N);
  g.dw = CVector::Zero(N);
  g.dp = CMatrix::Zero(N, N);
  for (int j = 0; j < N; ++j) g.du(j) = deriv(&y.u(j), x.u(j));
  for (int j = 0; j < N; ++j) g.dw(j) = deriv(&y.w(j), x.w(j));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) g.dp(a, b) = deriv(&y.p(a, b), x.p(a, b));
  return g;
}

void PhasePolynomial::add_term(Monomial m, Complex c) {
  if (c == Complex(0.0, 0.0)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), c);
    return;
  }
  it->second += c;
  if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
}

PhasePolynomial PhasePolynomial::constant(Complex c) {
  PhasePolynomial out;
  out.add_term({}, c);
  return out;
}

PhasePolynomial PhasePolynomial::u(int j) {
  PhasePolynomial out;
  out.add_term({{VarId{VarId::Kind::u, j, -1}, 1}}, Complex(1.0, 0.0));
  return out;
}

PhasePolynomial PhasePolynomial::w(int j) {
  PhasePolynomial out;
  out.add_term({{VarId{VarId::Kind::w, j, -1}, 1}}, Complex(1.0, 0.0));
  return out;
}

PhasePolynomial PhasePolynomial::p(int a, int b) {
  PhasePolynomial out;
  out.add_term({{VarId{VarId::Kind::p, a, b}, 1}}, Complex(1.0, 0.0));
  return out;
}

PhasePolynomial PhasePolynomial::operator+(const PhasePolynomial& rhs) const {
  PhasePolynomial out = *this;
  for (const auto& [m, c] : rhs.terms_) out.add_term(m, c);
  return out;
}

PhasePolynomial PhasePolynomial::operator-(const PhasePolynomial& rhs) const {
  PhasePolynomial out = *this;
  for (const auto& [m, c] : rhs.terms_) out.add_term(m, -c);
  return out;
}

PhasePolynomial PhasePolynomial::operator*(const PhasePolynomial& rhs) const {
  PhasePolynomial out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : rhs.terms_) {
      Monomial m;
      m.reserve(ma.size() + mb.size());
      auto ia = ma.begin();
      auto ib = mb.begin();
      while (ia != ma.end() && ib != mb.end()) {
        if (ia->first < ib->first) {
          m.push_back(*ia++);
        } else if (ib->first < ia->first) {
          m.push_back(*ib++);
        } else {
          m.emplace_back(ia->first, ia->second + ib->second);
          ++ia;
          ++ib;
        }
      }
      m.insert(m.end(), ia, ma.end());
      m.insert(m.end(), ib, mb.end());
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

PhasePolynomial PhasePolynomial::scaled(Complex c) const {
  PhasePolynomial out;
  for (const auto& [m, coeff] : terms_) out.add_term(m, c * coeff);
  return out;
}

PhasePolynomial PhasePolynomial::partial(const VarId& v) const {
  PhasePolynomial out;
  for (const auto& [m, c] : terms_) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (!(m[k].first == v)) continue;
      Monomial dm = m;
      const int e = dm[k].second;
      if (e == 1) {
        dm.erase(dm.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        dm[k].second = e - 1;
      }
      out.add_term(std::move(dm), c * static_cast<double>(e));
      break;
    }
  }
  return out;
}

std::set<VarId> PhasePolynomial::variables() const {
  std::set<VarId> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) vars.insert(v);
  return vars;
}

Complex PhasePolynomial::eval(const PhasePoint& x) const {
  Complex out(0.0, 0.0);
  for (const auto& [m, c] : terms_) {
    Complex term = c;
    for (const auto& [v, e] : m) {
      Complex base;
      switch (v.kind) {
        case VarId::Kind::u:
          base = x.u(v.i);
          break;
        case VarId::Kind::w:
          base = x.w(v.i);
          break;
        case VarId::Kind::p:
          base = x.p(v.i, v.j);
          break;
      }
      for (int k = 0; k < e; ++k) term *= base;
    }
    out += term;
  }
  return out;
}

PhaseGradient PhasePolynomial::gradient(const PhasePoint& x) const {
  const int N = x.size();
  PhaseGradient g;
  g.du = CVector::Zero(N);
  g.dw = CVector::Zero(N);
  g.dp = CMatrix::Zero(N, N);
  for (const VarId& v : variables()) {
    const Complex val = partial(v).eval(x);
    switch (v.kind) {
      case VarId::Kind::u:
        g.du(v.i) = val;
        break;
      case VarId::Kind::w:
        g.dw(v.i) = val;
        break;
      case VarId::Kind::p:
        g.dp(v.i, v.j) = val;
        break;
    }
  }
  return g;
}

PhasePolynomial poly_bracket(const PhasePolynomial& f,
                             const PhasePolynomial& g) {
  PhasePolynomial out;
  const std::set<VarId> fv = f.variables();
  const std::set<VarId> gv = g.variables();

  for (const VarId& v : fv) {
    if (v.kind == VarId::Kind::u) {
      out = out + f.partial(v) * g.partial(VarId{VarId::Kind::w, v.i, -1});
    } else if (v.kind == VarId::Kind::w) {
      out = out - f.partial(v) * g.partial(VarId{VarId::Kind::u, v.i, -1});
    }
  }

  for (const VarId& vf : fv) {
    if (vf.kind != VarId::Kind::p) continue;
    const PhasePolynomial df = f.partial(vf);
    for (const VarId& vg : gv) {
      if (vg.kind != VarId::Kind::p) continue;
      const PhasePolynomial prod = df * g.partial(vg);
      // {p_ab, p_cd} = d_cb p_ad - d_ad p_cb with (a,b)=vf, (c,d)=vg.
      if (vg.i == vf.j) out = out + prod * PhasePolynomial::p(vf.i, vg.j);
      if (vf.i == vg.j) out = out - prod * PhasePolynomial::p(vg.i, vf.j);
    }
  }
  return out;
}

Complex canonical_bracket(const Observable& f, const Observable& g,
                          const PhasePoint& x) {
  const PhaseGradient gf =
      f.has_analytic_gradient() ? f.gradient(x) : fd_gradient(f, x);
  const PhaseGradient gg =
      g.has_analytic_gradient() ? g.gradient(x) : fd_gradient(g, x);
  Complex out =
      (gf.du.array() * gg.dw.array() - gf.dw.array() * gg.du.array()).sum();
  out += (x.p.transpose() * (gf.dp * gg.dp - gg.dp * gf.dp)).trace();
  return out;
}

double jacobi_check(const PhasePoint& x, const PhasePolynomial& f,
                    const PhasePolynomial& g, const PhasePolynomial& h) {
  const PhasePolynomial cyc = poly_bracket(f, poly_bracket(g, h)) +
                              poly_bracket(g, poly_bracket(h, f)) +
                              poly_bracket(h, poly_bracket(f, g));
  return std::abs(cyc.eval(x));
}

}  // namespace hitchin
