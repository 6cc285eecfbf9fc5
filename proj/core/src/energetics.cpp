#include "zipper/energetics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "zipper/error.hpp"

namespace zipper {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string(what) + " must be positive and finite, got " + std::to_string(v));
}

void require_distance(double r) {
  if (!(r > 0.0))
    throw DomainError("pair distance must be > 0, got " + std::to_string(r));
}

std::size_t atom_count(std::span<const double> coords) {
  if (coords.size() % 3 != 0)
    throw DomainError("coordinate vector length " + std::to_string(coords.size()) +
                      " is not a multiple of 3");
  std::size_t n = coords.size() / 3;
  if (n < 2)
    throw DomainError("cluster needs at least two atoms");
  return n;
}

template <typename F>
void for_each_pair(std::size_t n, std::optional<std::span<const IndexPair>> pairs, F&& f) {
  if (pairs) {
    for (const IndexPair& p : *pairs) {
      if (p.i >= n || p.j >= n || p.i == p.j)
        throw DomainError("contact pair (" + std::to_string(p.i) + ", " + std::to_string(p.j) +
                          ") invalid for " + std::to_string(n) + " atoms");
      f(p.i, p.j);
    }
  } else {
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        f(i, j);
  }
}

bool is_backbone_n(const Atom& a) { return a.name == "N"; }
bool is_backbone_o(const Atom& a) { return a.name == "O"; }

struct SiteAtom {
  AtomSite site;
  const Atom* atom;
};

std::vector<SiteAtom> flatten(const Structure& st) {
  std::vector<SiteAtom> out;
  for (const Chain& c : st.chains)
    for (const Residue& r : c.residues)
      for (const Atom& a : r.atoms)
        out.push_back({AtomSite{c.id, r.seq, r.name, a.name}, &a});
  return out;
}

} // namespace

LJParams::LJParams(double eps, double sig) : epsilon(eps), sigma(sig) {
  require_positive(epsilon, "LJ epsilon");
  require_positive(sigma, "LJ sigma");
}

double LJParams::optimal_distance() const { return std::pow(2.0, 1.0 / 6.0) * sigma; }

LJABParams::LJABParams(double a_, double b_) : a(a_), b(b_) {
  require_positive(a, "LJ A");
  require_positive(b, "LJ B");
}

HBParams::HBParams(double c_, double d_) : c(c_), d(d_) {
  require_positive(c, "HB C");
  require_positive(d, "HB D");
}

HBParams HBParams::from_minimum(double r0, double depth) {
  require_positive(r0, "HB optimal distance");
  require_positive(depth, "HB well depth");
  return HBParams(5.0 * depth * std::pow(r0, 12), 6.0 * depth * std::pow(r0, 10));
}

double HBParams::optimal_distance() const { return std::sqrt(6.0 * c / (5.0 * d)); }

LJABParams to_ab(const LJParams& p) {
  double s6 = std::pow(p.sigma, 6);
  return LJABParams(4.0 * p.epsilon * s6 * s6, 4.0 * p.epsilon * s6);
}

LJParams from_ab(const LJABParams& p) {
  return LJParams(p.b * p.b / (4.0 * p.a), std::pow(p.a / p.b, 1.0 / 6.0));
}

double lj_pair_energy(double r, const LJParams& p) {
  require_distance(r);
  double s = p.sigma / r;
  double s6 = s * s * s;
  s6 *= s6;
  return 4.0 * p.epsilon * (s6 * s6 - s6);
}

double lj_pair_derivative(double r, const LJParams& p) {
  require_distance(r);
  double s = p.sigma / r;
  double s6 = s * s * s;
  s6 *= s6;
  return 4.0 * p.epsilon * (-12.0 * s6 * s6 + 6.0 * s6) / r;
}

double lj_ab_energy(double r, const LJABParams& p) {
  require_distance(r);
  double r6 = r * r * r;
  r6 *= r6;
  return p.a / (r6 * r6) - p.b / r6;
}

double hb_pair_energy(double r, const HBParams& p) {
  require_distance(r);
  double r2 = r * r;
  double r10 = r2 * r2 * r2 * r2 * r2;
  return p.c / (r10 * r2) - p.d / r10;
}

double lj_cluster_energy_gradient(std::span<const double> coords, const LJParams& p,
                                  std::optional<std::span<const IndexPair>> pairs,
                                  std::span<double> grad) {
  std::size_t n = atom_count(coords);
  bool want_grad = !grad.empty();
  if (want_grad) {
    if (grad.size() != coords.size())
      throw DomainError("gradient buffer has wrong size");
    std::fill(grad.begin(), grad.end(), 0.0);
  }
  const double s2 = p.sigma * p.sigma;
  double energy = 0.0;
  for_each_pair(n, pairs, [&](std::size_t i, std::size_t j) {
    double dx = coords[3 * i] - coords[3 * j];
    double dy = coords[3 * i + 1] - coords[3 * j + 1];
    double dz = coords[3 * i + 2] - coords[3 * j + 2];
    double t = dx * dx + dy * dy + dz * dz;  // squared distance
    if (!(t >= kSingularDistance * kSingularDistance))
      throw SingularityError("atoms " + std::to_string(i) + " and " + std::to_string(j) +
                             " coincide");
    double u = s2 / t;
    double u3 = u * u * u;
    energy += 4.0 * p.epsilon * (u3 * u3 - u3);
    if (want_grad) {
      // dV/dt * 2 (x_i - x_j), dV/dt = 4 eps (-6 u^6 + 3 u^3) / t
      double f = 8.0 * p.epsilon * (-6.0 * u3 * u3 + 3.0 * u3) / t;
      grad[3 * i] += f * dx;
      grad[3 * i + 1] += f * dy;
      grad[3 * i + 2] += f * dz;
      grad[3 * j] -= f * dx;
      grad[3 * j + 1] -= f * dy;
      grad[3 * j + 2] -= f * dz;
    }
  });
  return energy;
}

double lj_cluster_energy(std::span<const double> coords, const LJParams& p,
                         std::optional<std::span<const IndexPair>> pairs) {
  return lj_cluster_energy_gradient(coords, p, pairs, {});
}

std::vector<double> lj_cluster_gradient(std::span<const double> coords, const LJParams& p,
                                        std::optional<std::span<const IndexPair>> pairs) {
  std::vector<double> grad(coords.size());
  lj_cluster_energy_gradient(coords, p, pairs, grad);
  return grad;
}

ContactPair::ContactPair(AtomSelector a, AtomSelector b, LJParams p)
    : first(std::move(a)), second(std::move(b)), params(p) {
  if (first == second)
    throw DomainError("contact pair " + first.str() + " pairs an atom with itself");
}

std::vector<HBond> detect_hbonds(const Structure& st, double cutoff) {
  std::vector<SiteAtom> donors, acceptors;
  for (SiteAtom& s : flatten(st)) {
    if (is_backbone_n(*s.atom))
      donors.push_back(s);
    else if (is_backbone_o(*s.atom))
      acceptors.push_back(s);
  }
  std::vector<HBond> out;
  for (const SiteAtom& d : donors)
    for (const SiteAtom& a : acceptors) {
      if (d.site.chain == a.site.chain && std::abs(d.site.res_seq - a.site.res_seq) <= 1)
        continue;
      double r = d.atom->pos.dist(a.atom->pos);
      if (r <= cutoff)
        out.push_back({d.site, a.site, r});
    }
  std::sort(out.begin(), out.end(), [](const HBond& x, const HBond& y) {
    return std::tie(x.donor, x.acceptor) < std::tie(y.donor, y.acceptor);
  });
  return out;
}

std::vector<Clash> clash_audit(const Structure& st, double cutoff) {
  if (!(cutoff > 0.0))
    throw DomainError("clash cutoff must be > 0");
  std::vector<SiteAtom> atoms = flatten(st);
  std::vector<Clash> out;
  const double c2 = cutoff * cutoff;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const AtomSite& a = atoms[i].site;
      const AtomSite& b = atoms[j].site;
      if (a.chain == b.chain && a.res_seq == b.res_seq)
        continue;
      if (a.chain == b.chain) {
        bool peptide = (b.res_seq == a.res_seq + 1 && a.atom_name == "C" && b.atom_name == "N") ||
                       (a.res_seq == b.res_seq + 1 && b.atom_name == "C" && a.atom_name == "N");
        if (peptide)
          continue;
      }
      double d2 = (atoms[i].atom->pos - atoms[j].atom->pos).length_sq();
      if (d2 < c2)
        out.push_back({a, b, std::sqrt(d2)});
    }
  std::sort(out.begin(), out.end(), [](const Clash& x, const Clash& y) {
    return std::tie(x.distance, x.first, x.second) < std::tie(y.distance, y.first, y.second);
  });
  return out;
}

} // namespace zipper
