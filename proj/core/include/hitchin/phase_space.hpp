#pragma once

#include <cstdint>
#include <vector>

#include "hitchin/types.hpp"

namespace hitchin {

// Reduced coordinates (u, w, p): positions, momenta and the spin matrix on its
// coadjoint orbit. On the reduced surface diag(p) = 0; construction enforces
// that and keeps the removed part for callers that care.
struct PhasePoint {
  CVector u;
  CVector w;
  CMatrix p;
  CVector discarded_diag;

  int size() const { return static_cast<int>(u.size()); }
};

// Zeroes diag(p) (recording it) and validates shapes; N >= 2.
PhasePoint make_phase_point(CVector u, CVector w, CMatrix p);

// Orbit representative J plus group point s; the attached spin is s^{-1} J s.
struct OrbitData {
  CMatrix J;
  CMatrix s;
};

enum class SpinKind { random, rank1, spinless };

// Generic complex sample. Positions are drawn with pairwise separation at
// least 0.05 (against the lattice of `sep` when given, else against Z) so
// two-body kernels stay well away from their poles.
PhasePoint random_phase_point(int N, SpinKind kind, std::uint64_t seed,
                              const ModularParameter* sep = nullptr);

// Demo slice with real u, w and Hermitian p (diagonal removed as always).
PhasePoint random_phase_point_real_slice(int N, SpinKind kind,
                                         std::uint64_t seed);

// (tr p, tr p^2, ..., tr p^kmax), kmax <= N.
std::vector<Complex> casimirs(const PhasePoint& x, int kmax);

// p = s^{-1} J s. Throws SingularS when cond(s) >= 1e8. The returned matrix
// keeps its diagonal; use attach_reduced to land on the reduced surface.
CMatrix orbit_attach(const CMatrix& J, const CMatrix& s);

inline CMatrix orbit_attach(const OrbitData& orbit) {
  return orbit_attach(orbit.J, orbit.s);
}

PhasePoint attach_reduced(CVector u, CVector w, const CMatrix& J,
                          const CMatrix& s);

}  // namespace hitchin
