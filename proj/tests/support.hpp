// Shared fixtures for the unit and acceptance tests.
#ifndef ZIPPER_TESTS_SUPPORT_HPP_
#define ZIPPER_TESTS_SUPPORT_HPP_

#include <random>
#include <string>
#include <vector>

#include "zipper/builder.hpp"
#include "zipper/geometry.hpp"
#include "zipper/pdb.hpp"

namespace zipper::test {

inline std::string data_path(const std::string& name) {
  return std::string(ZIPPER_TEST_DATA_DIR) + "/" + name;
}

inline Structure load_template() { return read_pdb_file(data_path("gymlgs_template.pdb")); }

/// The three models of the build: sequences placed on the GYMLGS template.
inline const std::vector<std::string>& model_sequences() {
  static const std::vector<std::string> s{"AGAAAA", "GAAAAG", "AAAAGA"};
  return s;
}

inline Atom make_atom(std::string name, Vec3 pos, std::string element = "C") {
  Atom a;
  a.name = std::move(name);
  a.pos = pos;
  a.element = std::move(element);
  return a;
}

/// Two-anchor placement problem with CB atoms only: sheet 1 is chains A, B
/// (ALA3, ALA4 each); sheet 2 is G, H = template operator applied to A, B.
/// The contacts A3-G4 and B4-H3 admit a common translation.
inline Structure synthetic_two_anchor() {
  Structure s;
  auto chain = [](char id, Vec3 cb3, Vec3 cb4) {
    Chain c;
    c.id = id;
    c.residues.push_back({3, "ALA", {make_atom("CB", cb3)}});
    c.residues.push_back({4, "ALA", {make_atom("CB", cb4)}});
    return c;
  };
  s.chains.push_back(chain('A', {0.0, 0.0, 0.0}, {1.2, 0.4, 0.0}));
  s.chains.push_back(chain('B', {1.0, 3.1, 0.2}, {0.1, 3.0, -0.3}));
  const RigidTransform t = RigidTransform::template_sheet2();
  s = transform_chain(s, 'A', t, 'G');
  s = transform_chain(s, 'B', t, 'H');
  assign_serials(s);
  return s;
}

/// Hand-rolled generator of random reals in [lo, hi).
class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Vec3 vec(double lo, double hi) { return {real(lo, hi), real(lo, hi), real(lo, hi)}; }
  /// N atoms in a box, no pair closer than `min_dist`.
  std::vector<double> cluster(std::size_t n, double box, double min_dist) {
    std::vector<Vec3> pts;
    while (pts.size() < n) {
      Vec3 p = vec(-box, box);
      bool ok = true;
      for (const Vec3& q : pts)
        ok = ok && p.dist(q) >= min_dist;
      if (ok)
        pts.push_back(p);
    }
    std::vector<double> x;
    for (const Vec3& p : pts)
      x.insert(x.end(), {p.x, p.y, p.z});
    return x;
  }
  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

} // namespace zipper::test

#endif
