#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hitchin/types.hpp"

namespace hitchin {

// Point on the Riemann sphere; infinity is a first-class value so Moebius maps
// never need special-cased callers.
struct SpherePoint {
  Complex z{};
  bool infinite = false;

  static SpherePoint at_infinity() { return {Complex{}, true}; }
  static SpherePoint finite(Complex v) { return {v, false}; }
};

// SL(2,C) representative of a PSL(2,C) element; ad - bc = 1 after construction.
struct MoebiusMap {
  Complex a, b, c, d;

  MoebiusMap(Complex a_, Complex b_, Complex c_, Complex d_);
  static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

  SpherePoint apply(SpherePoint p) const;
  SpherePoint apply(Complex z) const { return apply(SpherePoint::finite(z)); }

  MoebiusMap compose(const MoebiusMap& rhs) const;  // this after rhs
  MoebiusMap inverse() const;
};

// Equality in PSL(2,C): matrices agree up to global sign.
bool same_psl(const MoebiusMap& lhs, const MoebiusMap& rhs, double tol = 1e-12);

// exterior=false: the disk is {|z-center| <= radius}; exterior=true: the disk
// is the complement component containing infinity. The genus-1 annulus needs
// the latter for its unit circle.
struct Circle {
  Complex center;
  double radius = 1.0;
  bool exterior = false;
};

// Image of the circle (as a point set) under the map, from three boundary
// points. Throws if the image is a line through infinity.
Circle image_circle(const MoebiusMap& map, const Circle& circle);

struct SchottkyGroup {
  int genus = 0;
  std::vector<MoebiusMap> generators;                // size genus
  std::vector<std::pair<Circle, Circle>> circles;    // (A_a, A'_a) per generator
};

// Checks the defining invariants: generator a maps circle A_a onto A'_a and
// the 2g disks are pairwise disjoint. Throws Error subclasses on violation.
void validate(const SchottkyGroup& grp, double tol = 1e-9);

// Strict exterior of every disk, with a 1e-12 boundary tolerance (boundary
// points count as outside the domain).
bool in_fundamental_domain(const SchottkyGroup& grp, Complex z,
                           double tol = 1e-12);

// Word in the free group: (generator index, exponent +-1) letters.
struct GroupWord {
  std::vector<std::pair<int, int>> letters;
};

GroupWord reduce_word(GroupWord w);
MoebiusMap word_matrix(const SchottkyGroup& grp, const GroupWord& w);
// Applies the letters right to left, i.e. the same element as word_matrix.
SpherePoint word_apply(const SchottkyGroup& grp, const GroupWord& w,
                       SpherePoint z);

// Genus-1 group: one generator z -> qz pairing |z|=1 with |z|=|q|; the
// fundamental domain is the annulus |q| < |z| < 1.
SchottkyGroup genus1(const ModularParameter& m);

// dim = N^2 (g-1) + 1 for the constant-tuple double coset, g >= 2.
long moduli_dimension_formula(int N, int g);

// Same dimension measured numerically: draws random tuples (g_1..g_g),
// linearizes simultaneous conjugation X -> ([X,g_1],...,[X,g_g]) and counts
// the kernel by SVD. Throws DegenerateSample if the kernel dimension is not
// stable across trials.
long moduli_dimension_numeric(int N, int g, int trials, std::uint64_t seed);

}  // namespace hitchin
