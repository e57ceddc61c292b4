#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "hitchin/errors.hpp"

namespace hitchin {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kImagUnit{0.0, 1.0};

// Curve datum: modulus tau in the upper half plane, with the nome q = e^{2 pi i tau}
// cached on construction. |q| < 1 follows from Im tau > 0.
struct ModularParameter {
  Complex tau;
  Complex q;

  explicit ModularParameter(Complex tau_) : tau(tau_) {
    if (!(tau.imag() > 0.0)) {
      throw InvalidModulus("Im tau must be positive, got Im tau = " +
                           std::to_string(tau.imag()));
    }
    q = std::exp(Complex(0.0, 2.0 * kPi) * tau);
  }
};

struct SeriesConfig {
  double tol = 1e-14;   // absolute tail bound
  int max_terms = 512;  // hard cap before NonConvergent
};

}  // namespace hitchin
