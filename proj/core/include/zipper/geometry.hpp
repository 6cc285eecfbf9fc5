// Rigid-body transforms and the sheet lattice that expands the AB/GH
// asymmetric unit into the 12-chain fibril cell.
//
// Chain layout produced by replicate_lattice():
//
//   sheet 1:  E F  <-  A B  ->  C D      (A,B -/+ intra_sheet_step)
//   sheet 2:  K L  <-  G H  ->  I J      (G,H -/+ intra_sheet_step)
//
// with G,H = sheet2_transform applied to A,B.

#ifndef ZIPPER_GEOMETRY_HPP_
#define ZIPPER_GEOMETRY_HPP_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdb.hpp"
#include "vec3.hpp"

namespace zipper {

using Mat3 = std::array<std::array<double, 3>, 3>;  // row-major

Vec3 operator*(const Mat3& m, const Vec3& v);
Mat3 operator*(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& m);
double determinant(const Mat3& m);

/// p -> rotation * p + translation. The rotation must be orthogonal
/// (det +1 or -1) to within 1e-9.
struct RigidTransform {
  Mat3 rotation{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  Vec3 translation;

  static RigidTransform identity() { return {}; }
  static RigidTransform translate(const Vec3& t);
  /// Sheet-1 -> sheet-2 operator of the 3NHC template:
  /// rotation diag(1,-1,-1), translation (9.07500, 4.77650, 0).
  static RigidTransform template_sheet2();

  /// Throws DomainError if the rotation is not orthogonal or values are not finite.
  void validate() const;
  bool operator==(const RigidTransform&) const = default;
};

Vec3 apply_transform(const RigidTransform& t, const Vec3& p);

/// Result applies b first, then a.
RigidTransform compose_transforms(const RigidTransform& a, const RigidTransform& b);
RigidTransform inverse(const RigidTransform& t);

/// 12 whitespace-separated reals: rotation row-major, then translation.
std::string serialize_transform(const RigidTransform& t);
RigidTransform parse_transform(std::string_view text);

struct SheetLattice {
  Vec3 intra_sheet_step{0.0, 9.5530, 0.0};
  RigidTransform sheet2_transform = RigidTransform::template_sheet2();

  void validate() const;  // step must be nonzero
};

/// Returns a copy of `st` with chain `new_id` appended: every atom of
/// `chain_id` moved by `t`, metadata copied.
Structure transform_chain(const Structure& st, char chain_id, const RigidTransform& t,
                          char new_id);

struct LatticeSources {
  char a = 'A', b = 'B', g = 'G', h = 'H';
};

/// Expands chains A,B,G,H into A-L (sorted by id) with +/- lattice.intra_sheet_step.
/// Chains other than the four sources are dropped.
Structure replicate_lattice(const Structure& st, const SheetLattice& lattice,
                            LatticeSources sources = {});

struct Reconciliation {
  RigidTransform transform;
  double residual = 0.0;  // max |d_i - mean(d)|, Angstrom
  Vec3 mean_displacement;
};

/// Shifts base.translation by the mean displacement (optimized - initial).
Reconciliation reconcile_translation(std::span<const Vec3> initial_free,
                                     std::span<const Vec3> optimized_free,
                                     const RigidTransform& base);

} // namespace zipper

#endif
