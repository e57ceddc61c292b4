#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hitchin {

// Domain error carrying a stable machine-readable code; the CLI maps these to
// {"error": code, "detail": ...} on stderr with exit status 1.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define HITCHIN_DEFINE_ERROR(Name, code_literal)                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& detail)                       \
        : Error(code_literal, detail) {}                           \
  }

HITCHIN_DEFINE_ERROR(NonConvergent, "non_convergent");
HITCHIN_DEFINE_ERROR(InvalidModulus, "invalid_modulus");
HITCHIN_DEFINE_ERROR(PoleAtLattice, "pole_at_lattice");
HITCHIN_DEFINE_ERROR(SpectralPole, "spectral_pole");
HITCHIN_DEFINE_ERROR(CollidingPositions, "colliding_positions");
HITCHIN_DEFINE_ERROR(Resonance, "resonance");
HITCHIN_DEFINE_ERROR(SingularS, "singular_s");
HITCHIN_DEFINE_ERROR(GradientUnavailable, "gradient_unavailable");
HITCHIN_DEFINE_ERROR(DegenerateSample, "degenerate_sample");
HITCHIN_DEFINE_ERROR(ContourThroughPole, "contour_through_pole");
HITCHIN_DEFINE_ERROR(StepCollision, "step_collision");
HITCHIN_DEFINE_ERROR(NoConvergence, "no_convergence");
HITCHIN_DEFINE_ERROR(SpectralCollision, "spectral_collision");

#undef HITCHIN_DEFINE_ERROR

}  // namespace hitchin
