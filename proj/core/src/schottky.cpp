#include "hitchin/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "hitchin/rng.hpp"

namespace hitchin {

namespace {

constexpr double kDisjointTol = 1e-12;

std::string istr(long v) { return std::to_string(v); }

}  // namespace

MoebiusMap::MoebiusMap(Complex a_, Complex b_, Complex c_, Complex d_)
    : a(a_), b(b_), c(c_), d(d_) {
  const Complex det = a * d - b * c;
  if (std::abs(det) < 1e-14) {
    throw SingularS("Moebius matrix is singular, |det| = " +
                    std::to_string(std::abs(det)));
  }
  const Complex s = std::sqrt(det);
  a /= s;
  b /= s;
  c /= s;
  d /= s;
}

SpherePoint MoebiusMap::apply(SpherePoint p) const {
  if (p.infinite) {
    if (std::abs(c) == 0.0) return SpherePoint::at_infinity();
    return SpherePoint::finite(a / c);
  }
  const Complex den = c * p.z + d;
  if (std::abs(den) == 0.0) return SpherePoint::at_infinity();
  return SpherePoint::finite((a * p.z + b) / den);
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& rhs) const {
  return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
          c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
}

MoebiusMap MoebiusMap::inverse() const { return {d, -b, -c, a}; }

bool same_psl(const MoebiusMap& lhs, const MoebiusMap& rhs, double tol) {
  const auto dist = [&](double sign) {
    return std::abs(lhs.a - sign * rhs.a) + std::abs(lhs.b - sign * rhs.b) +
           std::abs(lhs.c - sign * rhs.c) + std::abs(lhs.d - sign * rhs.d);
  };
  return std::min(dist(1.0), dist(-1.0)) < tol;
}

Circle image_circle(const MoebiusMap& map, const Circle& circle) {
  // Three boundary points determine the image circle; the disk side is not
  // needed by the validation contract.
  std::array<Complex, 3> pts;
  const std::array<Complex, 3> dirs = {Complex{1, 0}, Complex{0, 1},
                                       Complex{-1, 0}};
  for (int i = 0; i < 3; ++i) {
    const SpherePoint im = map.apply(circle.center + circle.radius * dirs[i]);
    if (im.infinite) {
      throw DegenerateSample("circle maps to a line through infinity");
    }
    pts[i] = im.z;
  }
  const Complex u = pts[1] - pts[0];
  const Complex v = pts[2] - pts[0];
  const Complex den = std::conj(u) * v - u * std::conj(v);
  if (std::abs(den) < 1e-14) {
    throw DegenerateSample("collinear image points in circle transport");
  }
  const Complex center =
      pts[0] + (std::norm(u) * v - std::norm(v) * u) / den;
  return Circle{center, std::abs(center - pts[0]), false};
}

namespace {

// Disks are disjoint as closed sets; mixed orientations compare containment.
bool disks_disjoint(const Circle& x, const Circle& y) {
  const double sep = std::abs(x.center - y.center);
  if (!x.exterior && !y.exterior) return sep > x.radius + y.radius + kDisjointTol;
  if (x.exterior && y.exterior) return false;  // both contain infinity
  const Circle& inner = x.exterior ? y : x;
  const Circle& outer = x.exterior ? x : y;
  return std::abs(inner.center - outer.center) + inner.radius <
         outer.radius - kDisjointTol;
}

}  // namespace

void validate(const SchottkyGroup& grp, double tol) {
  if (grp.genus < 1 ||
      grp.generators.size() != static_cast<size_t>(grp.genus) ||
      grp.circles.size() != static_cast<size_t>(grp.genus)) {
    throw DegenerateSample("Schottky group shape mismatch: genus=" +
                           istr(grp.genus));
  }
  for (int a = 0; a < grp.genus; ++a) {
    const auto& [ca, cb] = grp.circles[a];
    if (!(ca.radius > 0.0) || !(cb.radius > 0.0)) {
      throw DegenerateSample("circle radius must be positive");
    }
    const Circle image = image_circle(grp.generators[a], ca);
    if (std::abs(image.center - cb.center) > tol ||
        std::abs(image.radius - cb.radius) > tol) {
      throw DegenerateSample("generator " + istr(a) +
                             " does not map its circle onto the paired one");
    }
  }
  std::vector<Circle> disks;
  for (const auto& [ca, cb] : grp.circles) {
    disks.push_back(ca);
    disks.push_back(cb);
  }
  for (size_t i = 0; i < disks.size(); ++i) {
    for (size_t j = i + 1; j < disks.size(); ++j) {
      if (!disks_disjoint(disks[i], disks[j])) {
        throw DegenerateSample("disks " + istr(long(i)) + " and " +
                               istr(long(j)) + " are not disjoint");
      }
    }
  }
}

bool in_fundamental_domain(const SchottkyGroup& grp, Complex z, double tol) {
  for (const auto& [ca, cb] : grp.circles) {
    for (const Circle& c : {ca, cb}) {
      const double dist = std::abs(z - c.center);
      const bool outside_disk =
          c.exterior ? (dist < c.radius - tol) : (dist > c.radius + tol);
      if (!outside_disk) return false;
    }
  }
  return true;
}

GroupWord reduce_word(GroupWord w) {
  std::vector<std::pair<int, int>> out;
  for (const auto& letter : w.letters) {
    if (!out.empty() && out.back().first == letter.first &&
        out.back().second == -letter.second) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return GroupWord{std::move(out)};
}

MoebiusMap word_matrix(const SchottkyGroup& grp, const GroupWord& w) {
  MoebiusMap acc = MoebiusMap::identity();
  for (const auto& [idx, exp] : w.letters) {
    if (idx < 0 || idx >= grp.genus) {
      throw DegenerateSample("word letter index " + istr(idx) +
                             " out of range for genus " + istr(grp.genus));
    }
    const MoebiusMap& g = grp.generators[idx];
    acc = acc.compose(exp > 0 ? g : g.inverse());
  }
  return acc;
}

SpherePoint word_apply(const SchottkyGroup& grp, const GroupWord& w,
                       SpherePoint z) {
  // Rightmost letter acts first, matching the matrix product in word_matrix.
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    const auto& [idx, exp] = *it;
    if (idx < 0 || idx >= grp.genus) {
      throw DegenerateSample("word letter index " + istr(idx) +
                             " out of range for genus " + istr(grp.genus));
    }
    const MoebiusMap& g = grp.generators[idx];
    z = (exp > 0 ? g : g.inverse()).apply(z);
  }
  return z;
}

SchottkyGroup genus1(const ModularParameter& m) {
  const Complex sq = std::sqrt(m.q);
  SchottkyGroup grp;
  grp.genus = 1;
  grp.generators.push_back(MoebiusMap(sq, 0.0, 0.0, 1.0 / sq));
  grp.circles.push_back({Circle{0.0, 1.0, true}, Circle{0.0, std::abs(m.q), false}});
  return grp;
}

long moduli_dimension_formula(int N, int g) {
  if (N < 1 || g < 2) {
    throw DegenerateSample("dimension formula needs N >= 1 and g >= 2");
  }
  return static_cast<long>(N) * N * (g - 1) + 1;
}

long moduli_dimension_numeric(int N, int g, int trials, std::uint64_t seed) {
  if (N < 1 || g < 2 || trials < 1) {
    throw DegenerateSample("need N >= 1, g >= 2, trials >= 1");
  }
  const int n2 = N * N;
  long kernel_dim = -1;
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(t + 1));

    std::vector<CMatrix> gens;
    for (int a = 0; a < g; ++a) {
      CMatrix ga(N, N);
      do {
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) ga(i, j) = rng.complex_uniform(-1.0, 1.0);
      } while (std::abs(ga.determinant()) < 1e-6);
      gens.push_back(std::move(ga));
    }

    // Column-major vec: vec(X g) = (g^T (x) I) vec X, vec(g X) = (I (x) g) vec X,
    // so the block for [X, g_a] is g_a^T (x) I - I (x) g_a.
    CMatrix L = CMatrix::Zero(static_cast<long>(g) * n2, n2);
    for (int a = 0; a < g; ++a) {
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
          for (int k = 0; k < N; ++k) {
            L(static_cast<long>(a) * n2 + j * N + i, k * N + i) +=
                gens[a](k, j);
            L(static_cast<long>(a) * n2 + j * N + i, j * N + k) -=
                gens[a](i, k);
          }
        }
      }
    }

    Eigen::BDCSVD<CMatrix> svd(L);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    long k = 0;
    if (smax == 0.0) {
      k = n2;
    } else {
      for (long i = 0; i < sv.size(); ++i) {
        if (sv(i) <= 1e-8 * smax) ++k;
      }
    }
    if (kernel_dim < 0) {
      kernel_dim = k;
    } else if (kernel_dim != k) {
      throw DegenerateSample("kernel dimension varies across trials: " +
                             istr(kernel_dim) + " vs " + istr(k));
    }
  }
  return static_cast<long>(g) * n2 - n2 + kernel_dim;
}

}  // namespace hitchin
