// Nonbonded pair potentials, Lennard-Jones cluster energy and gradient,
// backbone hydrogen-bond detection and clash auditing.
//
//   lj_pair_energy  4 eps [(sigma/r)^12 - (sigma/r)^6]
//   lj_ab_energy    A/r^12 - B/r^6
//   hb_pair_energy  C/r^12 - D/r^10      (minimum at r^2 = 6C/5D)

#ifndef ZIPPER_ENERGETICS_HPP_
#define ZIPPER_ENERGETICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pdb.hpp"

namespace zipper {

/// Well depth `epsilon` and zero-crossing distance `sigma`; both > 0.
struct LJParams {
  double epsilon;
  double sigma;
  LJParams(double eps, double sig);
  double optimal_distance() const;  // 2^(1/6) sigma
};

struct LJABParams {
  double a;
  double b;
  LJABParams(double a_, double b_);
};

struct HBParams {
  double c;
  double d;
  HBParams(double c_, double d_);
  /// 10-12 parameters with minimum `depth` at distance `r0`: C = 5 E r0^12, D = 6 E r0^10.
  static HBParams from_minimum(double r0, double depth);
  double optimal_distance() const;  // sqrt(6C / 5D)
};

LJABParams to_ab(const LJParams& p);    // A = 4 eps sigma^12, B = 4 eps sigma^6
LJParams from_ab(const LJABParams& p);  // sigma^6 = A/B, eps = B^2 / 4A

/// All throw DomainError for r <= 0.
double lj_pair_energy(double r, const LJParams& p);
double lj_pair_derivative(double r, const LJParams& p);  // dV/dr
double lj_ab_energy(double r, const LJABParams& p);
double hb_pair_energy(double r, const HBParams& p);

struct IndexPair {
  std::size_t i;
  std::size_t j;
};

/// Pair distances below this raise SingularityError.
inline constexpr double kSingularDistance = 1e-8;

/// Sum of lj_pair_energy over all i<j atom pairs of the flat 3N coordinate
/// vector, or over `pairs` only when given.
double lj_cluster_energy(std::span<const double> coords, const LJParams& p,
                         std::optional<std::span<const IndexPair>> pairs = std::nullopt);

/// Analytic gradient of lj_cluster_energy (same pair selection).
std::vector<double> lj_cluster_gradient(std::span<const double> coords, const LJParams& p,
                                        std::optional<std::span<const IndexPair>> pairs = std::nullopt);
/// Energy and gradient in one pass; `grad` must have coords.size() entries.
double lj_cluster_energy_gradient(std::span<const double> coords, const LJParams& p,
                                  std::optional<std::span<const IndexPair>> pairs,
                                  std::span<double> grad);

/// Two selectors whose atoms interact through `params`.
struct ContactPair {
  AtomSelector first;
  AtomSelector second;
  LJParams params;
  ContactPair(AtomSelector a, AtomSelector b, LJParams p);
};

struct HBond {
  AtomSite donor;     // backbone N
  AtomSite acceptor;  // backbone O
  double distance;
};

inline constexpr double kHBondCutoff = 3.5;

/// Backbone N...O pairs within kHBondCutoff, skipping pairs in the same or
/// sequence-adjacent residues of one chain. Sorted by (donor, acceptor).
std::vector<HBond> detect_hbonds(const Structure& st, double cutoff = kHBondCutoff);

struct Clash {
  AtomSite first;
  AtomSite second;
  double distance;
};

/// Atom pairs from different residues closer than `cutoff`, ascending by
/// distance. The C(i)-N(i+1) peptide bond is not a clash.
std::vector<Clash> clash_audit(const Structure& st, double cutoff);

} // namespace zipper

#endif
