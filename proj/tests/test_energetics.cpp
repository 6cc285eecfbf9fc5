#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "zipper/energetics.hpp"
#include "zipper/error.hpp"

using namespace zipper;

TEST(LJ, ClosedFormPoints) {
  test::Gen g(21);
  for (int k = 0; k < 100; ++k) {
    LJParams p(g.real(0.1, 5), g.real(0.5, 6));
    EXPECT_NEAR(lj_pair_energy(p.optimal_distance(), p), -p.epsilon, 1e-12);
    EXPECT_NEAR(lj_pair_energy(p.sigma, p), 0.0, 1e-12);
    EXPECT_NEAR(lj_pair_derivative(p.optimal_distance(), p), 0.0, 1e-10 * p.epsilon / p.sigma);
  }
}

TEST(LJ, DerivativeMatchesFiniteDifference) {
  test::Gen g(22);
  for (int k = 0; k < 100; ++k) {
    LJParams p(g.real(0.1, 5), g.real(0.5, 6));
    double r = g.real(0.85, 3) * p.sigma, h = 1e-6 * p.sigma;
    double fd = (lj_pair_energy(r + h, p) - lj_pair_energy(r - h, p)) / (2 * h);
    EXPECT_NEAR(lj_pair_derivative(r, p), fd, 1e-6 * std::max(1.0, std::fabs(fd)));
  }
}

TEST(LJ, ABConversionRoundTrips) {
  test::Gen g(23);
  for (int k = 0; k < 50; ++k) {
    LJParams p(g.real(0.1, 5), g.real(0.5, 6));
    LJParams q = from_ab(to_ab(p));
    EXPECT_NEAR(q.epsilon, p.epsilon, 1e-12 * p.epsilon);
    EXPECT_NEAR(q.sigma, p.sigma, 1e-12 * p.sigma);
    double r = g.real(0.9, 2.5) * p.sigma;
    EXPECT_NEAR(lj_ab_energy(r, to_ab(p)), lj_pair_energy(r, p), 1e-10 * p.epsilon);
  }
}

TEST(LJ, DomainErrors) {
  EXPECT_THROW(LJParams(0.0, 1.0), DomainError);
  EXPECT_THROW(LJParams(1.0, -1.0), DomainError);
  EXPECT_THROW(LJParams(NAN, 1.0), DomainError);
  EXPECT_THROW(lj_pair_energy(0.0, LJParams(1, 1)), DomainError);
  EXPECT_THROW(HBParams(-1, 1), DomainError);
}

TEST(HB, MinimumAtDesignedPoint) {
  HBParams p = HBParams::from_minimum(2.9, 1.0);
  EXPECT_NEAR(p.optimal_distance(), 2.9, 1e-12);
  EXPECT_NEAR(hb_pair_energy(2.9, p), -1.0, 1e-12);
  EXPECT_GT(hb_pair_energy(2.8, p), -1.0);
  EXPECT_GT(hb_pair_energy(3.0, p), -1.0);
}

TEST(Cluster, GradientMatchesFiniteDifference) {
  test::Gen g(24);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = static_cast<std::size_t>(g.integer(2, 8));
    LJParams p(g.real(0.2, 3), g.real(0.8, 4));
    std::vector<double> x = g.cluster(n, 1.2 * p.sigma, 0.85 * p.sigma);
    std::vector<double> ga = lj_cluster_gradient(x, p);
    std::vector<double> g2(x.size());
    EXPECT_NEAR(lj_cluster_energy_gradient(x, p, std::nullopt, g2), lj_cluster_energy(x, p),
                1e-12 * std::max(1.0, std::fabs(lj_cluster_energy(x, p))));
    EXPECT_EQ(ga, g2);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double h = 1e-6 * p.sigma;
      std::vector<double> xp = x, xm = x;
      xp[i] += h, xm[i] -= h;
      double fd = (lj_cluster_energy(xp, p) - lj_cluster_energy(xm, p)) / (2 * h);
      EXPECT_NEAR(ga[i], fd, 1e-6 * std::max(1.0, std::fabs(fd)));
    }
  }
}

TEST(Cluster, PairSubset) {
  LJParams p(1, 1);
  std::vector<double> x{0, 0, 0, 1.2, 0, 0, 0, 1.5, 0};
  std::vector<IndexPair> only{{0, 1}};
  EXPECT_DOUBLE_EQ(lj_cluster_energy(x, p, std::span<const IndexPair>(only)),
                   lj_pair_energy(1.2, p));
  std::vector<double> g = lj_cluster_gradient(x, p, std::span<const IndexPair>(only));
  EXPECT_EQ(g[6], 0.0);
  EXPECT_EQ(g[7], 0.0);
  EXPECT_DOUBLE_EQ(g[0], -g[3]);
}

TEST(Cluster, CoincidentAtomsAreSingular) {
  std::vector<double> x{0, 0, 0, 0, 0, 0};
  EXPECT_THROW(lj_cluster_energy(x, LJParams(1, 1)), SingularityError);
  std::vector<double> bad{0, 0, 0, 1};
  EXPECT_THROW(lj_cluster_energy(bad, LJParams(1, 1)), DomainError);
}

TEST(HBonds, FixtureSheetHasInterStrandBonds) {
  Structure s = test::load_template();
  auto hb = detect_hbonds(s);
  EXPECT_FALSE(hb.empty());
  for (const HBond& b : hb) {
    EXPECT_LE(b.distance, kHBondCutoff);
    EXPECT_EQ(b.donor.atom_name, "N");
    EXPECT_EQ(b.acceptor.atom_name, "O");
  }
}

TEST(Clashes, TemplateIsClean) {
  EXPECT_TRUE(clash_audit(test::load_template(), 2.0).empty());
}

TEST(Clashes, DetectsOverlapSortedByDistance) {
  Structure s;
  s.chains.push_back({'A', {{1, "ALA", {test::make_atom("CA", {0, 0, 0})}},
                            {2, "ALA", {test::make_atom("CA", {3.8, 0, 0})}}}});
  s.chains.push_back({'B', {{1, "ALA", {test::make_atom("CA", {0, 1.0, 0})}},
                            {2, "ALA", {test::make_atom("CA", {3.8, 1.5, 0})}}}});
  auto c = clash_audit(s, 2.0);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_LT(c[0].distance, c[1].distance);
  EXPECT_DOUBLE_EQ(c[0].distance, 1.0);
}
