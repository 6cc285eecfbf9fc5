// Steric-zipper model pipeline: mutate the template's AB strands to a
// poly-Ala/Gly hexapeptide, place the opposing sheet by minimizing the LJ
// energy of declared CB...CB contacts, and expand to the 12-chain cell.

#ifndef ZIPPER_BUILDER_HPP_
#define ZIPPER_BUILDER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "energetics.hpp"
#include "geometry.hpp"
#include "optimizer.hpp"
#include "pdb.hpp"

namespace zipper {

enum class Aa { ala, gly };

std::string residue_name(Aa aa);  // "ALA" / "GLY"
char residue_letter(Aa aa);       // 'A' / 'G'

/// One-letter sequence over {A, G}. Throws ConfigError for any other letter.
std::vector<Aa> parse_sequence(std::string_view letters);
std::string sequence_string(const std::vector<Aa>& seq);

/// CA-CB bond length and the N-CA-CB / C-CA-CB angle of a constructed CB.
inline constexpr double kCaCbBond = 1.521;
inline constexpr double kTetrahedralAngle = 109.5;

/// Ideal CB position from the backbone N, CA, C (L chirality).
Vec3 ideal_cb(const Vec3& n, const Vec3& ca, const Vec3& c);

/// Truncates the residue's side chain to `target`. Backbone atoms are copied
/// untouched; a missing CB is built with ideal_cb. Throws NotFoundError or
/// StructureError (missing N/CA/C/O).
Structure mutate_residue(const Structure& s, char chain, int res_seq, Aa target);

/// Mutates residue k of the chain to seq[k] and renumbers the residues 1..n.
/// Throws MismatchError if the chain length differs from the sequence length.
Structure apply_sequence(const Structure& s, char chain, const std::vector<Aa>& seq);

struct FibrilSpec {
  std::string model_name = "model";
  std::vector<Aa> sequence;
  /// anchors[i] (sheet 1, fixed) pairs with free_atoms[i] (sheet 2, moved).
  std::vector<AtomSelector> anchors = {AtomSelector::parse("A.ALA3.CB"),
                                       AtomSelector::parse("B.ALA4.CB")};
  std::vector<AtomSelector> free_atoms = {AtomSelector::parse("G.ALA4.CB"),
                                          AtomSelector::parse("H.ALA3.CB")};
  LJParams lj{1.0, 5.4};
  SheetLattice lattice;
  OptimizerConfig optimizer;
  /// Sum LJ over every pair of the anchor+free atoms, not just the contacts.
  bool full_sum = false;
  double residual_threshold = 0.5;  // Angstrom; above -> warning
  double clash_cutoff = 2.0;
  double contact_tolerance = 0.02;  // relative to 2^(1/6) sigma
  /// After reconciliation, re-optimize the sheet-2 translation against the
  /// contacts plus a heavy-atom overlap penalty below `steric_floor`.
  bool rigid_stage = true;
  double steric_floor = 2.8;
  double steric_weight = 100.0;

  void validate() const;  // throws ConfigError
  std::vector<ContactPair> contact_pairs() const;
};

/// Trace digest for reports.
struct TraceSummary {
  std::size_t evaluations = 0;
  std::size_t generations = 0;
  std::size_t restarts = 0;
  std::string terminated_by;
  double best_value = 0.0;
  std::size_t improvements = 0;  // trace length
};

TraceSummary summarize(const OptimizationResult& r);

struct Placement {
  RigidTransform transform;          // final sheet-1 -> sheet-2 operator
  OptimizationResult search;         // SAEC over free-atom coordinates
  OptimizationResult refine;         // local_refine from search.best_point
  Reconciliation reconciliation;     // single translation from the displacements
  std::optional<OptimizationResult> rigid;  // translation-only stage
  std::vector<Vec3> initial_free;
  std::vector<Vec3> optimized_free;
};

/// `s` must contain the anchor atoms and the free atoms (sheet 2 placed by
/// spec.lattice.sheet2_transform). The rotation of the result is always that
/// of spec.lattice.sheet2_transform; only the translation changes.
Placement place_opposing_sheet(const Structure& s, const FibrilSpec& spec);

struct ContactReport {
  AtomSite anchor;
  AtomSite free;
  double distance = 0.0;
  double energy = 0.0;
  double optimal_distance = 0.0;
  bool within_tolerance = false;
};

enum class BuildStatus { ok, warning, failed };
std::string to_string(BuildStatus s);

struct BuildReport {
  std::string model_name;
  std::string sequence;
  std::uint64_t seed = 0;
  double sigma = 0.0;
  double epsilon = 0.0;
  bool full_sum = false;
  std::vector<ContactReport> contacts;
  double contact_energy = 0.0;
  double placement_energy = 0.0;   // 6-variable optimum (search + refine)
  double residual = 0.0;
  Vec3 mean_displacement;
  std::size_t hbond_count_before = 0;  // template AB
  std::size_t hbond_count_after = 0;   // mutated AB
  std::size_t model_hbond_count = 0;   // all 12 chains
  std::vector<Clash> clashes;
  double min_interchain_distance = 0.0;
  RigidTransform transform;
  TraceSummary search;
  TraceSummary refine;
  std::optional<TraceSummary> rigid;
  BuildStatus status = BuildStatus::ok;
  std::vector<std::string> messages;
};

struct BuildResult {
  Structure model;
  BuildReport report;
};

/// Full pipeline. Stage failures are rethrown as BuildError naming the
/// stage; clashes or off-target contacts mark the report failed instead.
BuildResult build_fibril_model(const Structure& template_st, const FibrilSpec& spec);

/// Energy analysis of an arbitrary structure: contact LJ over the pairs that
/// resolve, backbone hydrogen bonds with their 10-12 energies, clash audit.
struct EnergyReport {
  std::vector<ContactReport> contacts;
  std::vector<std::string> unresolved;  // contact pairs missing from the input
  double contact_energy = 0.0;
  std::vector<HBond> hbonds;
  std::vector<double> hbond_energies;
  double hbond_energy = 0.0;
  std::vector<Clash> clashes;
};

EnergyReport analyze_energy(const Structure& st, const std::vector<ContactPair>& contacts,
                            const HBParams& hb, double clash_cutoff,
                            double contact_tolerance = 0.02);

/// The default contact pairs A.ALA3.CB-G.ALA4.CB and B.ALA4.CB-H.ALA3.CB.
std::vector<ContactPair> default_contacts(const LJParams& lj);

} // namespace zipper

#endif
