#include "zipper/builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "zipper/error.hpp"

namespace zipper {

namespace {

bool is_backbone(const std::string& name) {
  return name == "N" || name == "CA" || name == "C" || name == "O" || name == "OXT";
}

bool is_hydrogen(const Atom& a) {
  if (!a.element.empty())
    return a.element == "H" || a.element == "D";
  return !a.name.empty() && a.name[0] == 'H';
}

const Atom& backbone_atom(const Residue& r, char chain, const char* name) {
  const Atom* a = r.find_atom(name);
  if (!a)
    throw StructureError(std::string("residue ") + chain + "." + r.name + std::to_string(r.seq) +
                         " has no backbone atom " + name);
  return *a;
}

Vec3 unit(const Vec3& v) {
  double len = v.length();
  if (!(len > 0.0))
    throw DomainError("degenerate backbone geometry");
  return v / len;
}

// Stage wrapper: anything thrown inside becomes BuildError(stage, ...).
template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const BuildError&) {
    throw;
  } catch (const std::exception& e) {
    throw BuildError(name, e.what());
  }
}

ContactReport contact_report(const Structure& st, const ContactPair& cp, double tol) {
  auto site = [&](const AtomSelector& s) {
    return AtomSite{s.chain, s.res_seq, s.res_name, s.atom_name};
  };
  ContactReport r;
  r.anchor = site(cp.first);
  r.free = site(cp.second);
  r.distance = select_atom(st, cp.first).pos.dist(select_atom(st, cp.second).pos);
  r.energy = lj_pair_energy(r.distance, cp.params);
  r.optimal_distance = cp.params.optimal_distance();
  r.within_tolerance = std::fabs(r.distance - r.optimal_distance) <= tol * r.optimal_distance;
  return r;
}

// LJ energy of the anchor/free configuration as a function of the free
// atoms' flat coordinates. Anchors occupy the first half of the packed vector.
class ContactEnergy {
public:
  ContactEnergy(std::vector<Vec3> anchors, const LJParams& lj, bool full_sum)
      : lj_(lj), n_(anchors.size()), packed_(6 * anchors.size()), grad_(6 * anchors.size()) {
    for (std::size_t i = 0; i < n_; ++i)
      for (int k = 0; k < 3; ++k)
        packed_[3 * i + k] = anchors[i][k];
    if (!full_sum)
      for (std::size_t i = 0; i < n_; ++i)
        pairs_.push_back({i, n_ + i});
  }

  double operator()(std::span<const double> free, std::span<double> grad) const {
    std::copy(free.begin(), free.end(), packed_.begin() + 3 * n_);
    std::span<double> g = grad.empty() ? std::span<double>() : std::span<double>(grad_);
    double e = pairs_.empty()
                   ? lj_cluster_energy_gradient(packed_, lj_, std::nullopt, g)
                   : lj_cluster_energy_gradient(packed_, lj_, std::span<const IndexPair>(pairs_), g);
    if (!grad.empty())
      std::copy(grad_.begin() + 3 * n_, grad_.end(), grad.begin());
    return e;
  }

private:
  LJParams lj_;
  std::size_t n_;
  std::vector<IndexPair> pairs_;
  mutable std::vector<double> packed_;
  mutable std::vector<double> grad_;
};

std::vector<double> flatten(const std::vector<Vec3>& v) {
  std::vector<double> out;
  out.reserve(3 * v.size());
  for (const Vec3& p : v) {
    out.push_back(p.x);
    out.push_back(p.y);
    out.push_back(p.z);
  }
  return out;
}

std::vector<Vec3> unflatten(std::span<const double> x) {
  std::vector<Vec3> out;
  for (std::size_t i = 0; i + 2 < x.size(); i += 3)
    out.push_back({x[i], x[i + 1], x[i + 2]});
  return out;
}

std::vector<Vec3> heavy_atoms(const Chain& c, const Vec3& shift = {}) {
  std::vector<Vec3> out;
  for (const Residue& r : c.residues)
    for (const Atom& a : r.atoms)
      if (!is_hydrogen(a))
        out.push_back(a.pos + shift);
  return out;
}

// Translation-only placement of sheet 2: contact LJ plus a quadratic overlap
// penalty between sheet-2 atoms and sheet-1 atoms (including lattice images).
OptimizationResult rigid_translation_stage(const Structure& s, const FibrilSpec& spec,
                                           const ContactEnergy& energy,
                                           const std::vector<Vec3>& free_at_base,
                                           const RigidTransform& start) {
  const Vec3 t_base = spec.lattice.sheet2_transform.translation;
  std::vector<Vec3> fixed, moving;
  std::vector<char> sheet1, sheet2;
  for (const AtomSelector& a : spec.anchors)
    if (std::find(sheet1.begin(), sheet1.end(), a.chain) == sheet1.end())
      sheet1.push_back(a.chain);
  for (const AtomSelector& f : spec.free_atoms)
    if (std::find(sheet2.begin(), sheet2.end(), f.chain) == sheet2.end())
      sheet2.push_back(f.chain);
  for (char id : sheet1)
    for (int k = -2; k <= 2; ++k) {
      std::vector<Vec3> img = heavy_atoms(*s.find_chain(id), spec.lattice.intra_sheet_step * k);
      fixed.insert(fixed.end(), img.begin(), img.end());
    }
  for (char id : sheet2) {
    std::vector<Vec3> m = heavy_atoms(*s.find_chain(id));
    moving.insert(moving.end(), m.begin(), m.end());
  }

  const double floor2 = spec.steric_floor * spec.steric_floor;
  const double w = spec.steric_weight * spec.lj.epsilon;
  const std::size_t nf = free_at_base.size();
  auto value_and_grad = [&, nf](std::span<const double> t, std::span<double> g) {
    Vec3 d = Vec3{t[0], t[1], t[2]} - t_base;
    std::vector<double> free(3 * nf), fg(g.empty() ? 0 : 3 * nf);
    for (std::size_t i = 0; i < nf; ++i)
      for (int k = 0; k < 3; ++k)
        free[3 * i + k] = free_at_base[i][k] + d[k];
    double e = energy(free, fg);
    Vec3 grad;
    for (std::size_t i = 0; i < fg.size(); i += 3)
      grad += Vec3{fg[i], fg[i + 1], fg[i + 2]};
    for (const Vec3& m : moving) {
      Vec3 p = m + d;
      for (const Vec3& q : fixed) {
        Vec3 diff = p - q;
        double r2 = diff.length_sq();
        if (r2 >= floor2)
          continue;
        double r = std::sqrt(r2);
        double gap = spec.steric_floor - r;
        e += w * gap * gap;
        if (!g.empty() && r > 0.0)
          grad -= diff * (2.0 * w * gap / r);
      }
    }
    if (!g.empty())
      for (int k = 0; k < 3; ++k)
        g[k] = grad[k];
    return e;
  };

  const double reach = 2.0 * spec.lj.optimal_distance();
  Objective obj;
  obj.dimension = 3;
  obj.evaluate = [&](std::span<const double> t) { return value_and_grad(t, {}); };
  obj.gradient = [&](std::span<const double> t, std::span<double> g) { value_and_grad(t, g); };
  for (int k = 0; k < 3; ++k) {
    obj.lower.push_back(start.translation[k] - reach);
    obj.upper.push_back(start.translation[k] + reach);
    obj.start.push_back(start.translation[k]);
  }
  OptimizerConfig cfg = spec.optimizer;
  cfg.seed = mix_seed(spec.optimizer.seed ^ 0x7269676964ULL);
  if (!spec.full_sum) {
    double optimum = -spec.lj.epsilon * static_cast<double>(nf);
    cfg.target_value = optimum + 1e-9 * std::fabs(optimum);
  }
  OptimizationResult global = minimize_saec(obj, cfg);
  OptimizationResult local = local_refine(obj, global.best_point, 1e-10, 20000);
  // Report the combined run: search bookkeeping, refined point.
  global.best_point = local.best_point;
  global.best_value = local.best_value;
  global.evaluations_used += local.evaluations_used;
  if (local.best_value < global.trace.back().best_value)
    global.trace.push_back({global.evaluations_used, local.best_value});
  return global;
}

} // namespace

std::string residue_name(Aa aa) { return aa == Aa::ala ? "ALA" : "GLY"; }
char residue_letter(Aa aa) { return aa == Aa::ala ? 'A' : 'G'; }

std::vector<Aa> parse_sequence(std::string_view letters) {
  std::vector<Aa> out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] == 'A')
      out.push_back(Aa::ala);
    else if (letters[i] == 'G')
      out.push_back(Aa::gly);
    else
      throw ConfigError("sequence '" + std::string(letters) + "': residue " +
                        std::to_string(i + 1) + " is '" + letters[i] +
                        "', only A (ALA) and G (GLY) are supported");
  }
  if (out.empty())
    throw ConfigError("empty sequence");
  return out;
}

std::string sequence_string(const std::vector<Aa>& seq) {
  std::string s;
  for (Aa aa : seq)
    s += residue_letter(aa);
  return s;
}

Vec3 ideal_cb(const Vec3& n, const Vec3& ca, const Vec3& c) {
  Vec3 b1 = unit(n - ca);
  Vec3 b2 = unit(c - ca);
  Vec3 bis = b1 + b2;
  double bl = bis.length();
  // d.b1 = d.b2 = cos(109.5 deg) for d = cos(th) u + sin(th) w, u = -bis/|bis|
  double cos_t = -2.0 * std::cos(kTetrahedralAngle * std::numbers::pi / 180.0) / bl;
  if (!(bl > 0.0) || cos_t > 1.0)
    throw DomainError("N-CA-C angle too open to place a tetrahedral CB");
  Vec3 u = bis / -bl;
  Vec3 w = unit(b1.cross(b2));
  double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  return ca + (u * cos_t + w * sin_t) * kCaCbBond;
}

Structure mutate_residue(const Structure& s, char chain, int res_seq, Aa target) {
  Structure out = s;
  Chain* c = out.find_chain(chain);
  if (!c)
    throw NotFoundError(std::string("no chain ") + chain);
  Residue* r = c->find_residue(res_seq);
  if (!r)
    throw NotFoundError("no residue " + std::to_string(res_seq) + " in chain " + chain);
  const Atom& n = backbone_atom(*r, chain, "N");
  const Atom& ca = backbone_atom(*r, chain, "CA");
  const Atom& cc = backbone_atom(*r, chain, "C");
  backbone_atom(*r, chain, "O");
  const std::string name = residue_name(target);
  if (r->name == name)
    return out;

  std::vector<Atom> atoms;
  bool have_cb = false;
  for (const Atom& a : r->atoms) {
    if (is_backbone(a.name) || (target == Aa::ala && a.name == "CB")) {
      have_cb = have_cb || a.name == "CB";
      atoms.push_back(a);
    }
  }
  if (target == Aa::ala && !have_cb) {
    Atom cb = ca;
    cb.name = "CB";
    cb.element = "C";
    cb.pos = ideal_cb(n.pos, ca.pos, cc.pos);
    // Conventional order: backbone N CA C O, then CB, then OXT.
    auto pos = std::find_if(atoms.begin(), atoms.end(),
                            [](const Atom& a) { return a.name == "OXT"; });
    atoms.insert(pos, cb);
  }
  r->atoms = std::move(atoms);
  r->name = name;
  return out;
}

Structure apply_sequence(const Structure& s, char chain, const std::vector<Aa>& seq) {
  const Chain* c = s.find_chain(chain);
  if (!c)
    throw NotFoundError(std::string("no chain ") + chain);
  if (c->residues.size() != seq.size())
    throw MismatchError(std::string("chain ") + chain + " has " +
                        std::to_string(c->residues.size()) + " residues, sequence has " +
                        std::to_string(seq.size()));
  std::vector<int> numbers;
  for (const Residue& r : c->residues)
    numbers.push_back(r.seq);
  Structure out = s;
  for (std::size_t k = 0; k < seq.size(); ++k)
    out = mutate_residue(out, chain, numbers[k], seq[k]);
  Chain* oc = out.find_chain(chain);
  for (std::size_t k = 0; k < oc->residues.size(); ++k)
    oc->residues[k].seq = static_cast<int>(k + 1);
  return out;
}

void FibrilSpec::validate() const {
  if (sequence.size() != 6)
    throw ConfigError("sequence must have 6 residues, got " + std::to_string(sequence.size()));
  if (anchors.empty() || anchors.size() != free_atoms.size())
    throw ConfigError("anchors and free atoms must be non-empty lists of equal length");
  auto check = [&](const AtomSelector& s, const char* role) {
    if (s.atom_name != "CB")
      return;
    if (s.res_name != "ALA")
      throw ConfigError(std::string(role) + " " + s.str() + " selects a CB of a non-ALA residue");
    if (s.res_seq >= 1 && s.res_seq <= static_cast<int>(sequence.size()) &&
        sequence[static_cast<std::size_t>(s.res_seq - 1)] != Aa::ala)
      throw ConfigError(std::string(role) + " " + s.str() + " is GLY in sequence " +
                        sequence_string(sequence));
  };
  for (const AtomSelector& a : anchors)
    check(a, "anchor");
  for (const AtomSelector& f : free_atoms)
    check(f, "free atom");
  if (!(residual_threshold >= 0.0) || !(clash_cutoff > 0.0) || !(contact_tolerance > 0.0))
    throw ConfigError("residual threshold, clash cutoff and contact tolerance must be positive");
  if (rigid_stage && (!(steric_floor > 0.0) || !(steric_weight > 0.0)))
    throw ConfigError("steric floor and weight must be positive");
  lattice.validate();
  lattice.sheet2_transform.validate();
  optimizer.validate();
}

std::vector<ContactPair> FibrilSpec::contact_pairs() const {
  std::vector<ContactPair> out;
  for (std::size_t i = 0; i < anchors.size() && i < free_atoms.size(); ++i)
    out.emplace_back(anchors[i], free_atoms[i], lj);
  return out;
}

std::vector<ContactPair> default_contacts(const LJParams& lj) {
  FibrilSpec spec;
  spec.lj = lj;
  return spec.contact_pairs();
}

TraceSummary summarize(const OptimizationResult& r) {
  return {r.evaluations_used, r.generations, r.restarts_used, to_string(r.terminated_by),
          r.best_value, r.trace.size()};
}

std::string to_string(BuildStatus s) {
  switch (s) {
    case BuildStatus::ok: return "ok";
    case BuildStatus::warning: return "warning";
    case BuildStatus::failed: return "failed";
  }
  return "unknown";
}

Placement place_opposing_sheet(const Structure& s, const FibrilSpec& spec) {
  if (spec.anchors.empty() || spec.anchors.size() != spec.free_atoms.size())
    throw ConfigError("anchors and free atoms must be non-empty lists of equal length");
  Placement p;
  std::vector<Vec3> anchors;
  for (const AtomSelector& a : spec.anchors)
    anchors.push_back(select_atom(s, a).pos);
  for (const AtomSelector& f : spec.free_atoms)
    p.initial_free.push_back(select_atom(s, f).pos);
  const std::size_t nf = p.initial_free.size();
  ContactEnergy energy(anchors, spec.lj, spec.full_sum);

  const double reach = 2.0 * spec.lj.optimal_distance();
  Objective obj;
  obj.dimension = 3 * nf;
  obj.evaluate = [&](std::span<const double> x) { return energy(x, {}); };
  obj.gradient = [&](std::span<const double> x, std::span<double> g) { energy(x, g); };
  obj.start = flatten(p.initial_free);
  for (double v : obj.start) {
    obj.lower.push_back(v - reach);
    obj.upper.push_back(v + reach);
  }
  OptimizerConfig cfg = spec.optimizer;
  if (!spec.full_sum && !cfg.target_value) {
    // Each contact pair bottoms out at -epsilon independently.
    double optimum = -spec.lj.epsilon * static_cast<double>(nf);
    cfg.target_value = optimum + 1e-9 * std::fabs(optimum);
  }
  p.search = minimize_saec(obj, cfg);
  p.refine = local_refine(obj, p.search.best_point, 1e-10, 20000);
  p.optimized_free = unflatten(p.refine.best_point);
  p.reconciliation =
      reconcile_translation(p.initial_free, p.optimized_free, spec.lattice.sheet2_transform);
  p.transform = p.reconciliation.transform;

  if (spec.rigid_stage) {
    p.rigid = rigid_translation_stage(s, spec, energy, p.initial_free, p.transform);
    p.transform.translation = {p.rigid->best_point[0], p.rigid->best_point[1],
                               p.rigid->best_point[2]};
  }
  p.transform.rotation = spec.lattice.sheet2_transform.rotation;
  return p;
}

BuildResult build_fibril_model(const Structure& template_st, const FibrilSpec& spec) {
  stage("spec", [&] {
    spec.validate();
    return 0;
  });

  // AB strands of the template, mutated and renumbered.
  Structure ab;
  ab.header = template_st.header;
  std::size_t hb_before = stage("template", [&] {
    for (char id : {'A', 'B'}) {
      const Chain* c = template_st.find_chain(id);
      if (!c)
        throw NotFoundError(std::string("template has no chain ") + id);
      ab.chains.push_back(*c);
    }
    return detect_hbonds(ab).size();
  });
  ab = stage("mutate", [&] {
    Structure m = apply_sequence(ab, 'A', spec.sequence);
    return apply_sequence(m, 'B', spec.sequence);
  });
  std::size_t hb_after = detect_hbonds(ab).size();

  // Sheet 2 at the template operator, then the placement search.
  Structure abgh = stage("sheet2", [&] {
    Structure s = transform_chain(ab, 'A', spec.lattice.sheet2_transform, 'G');
    s = transform_chain(s, 'B', spec.lattice.sheet2_transform, 'H');
    for (char id : {'G', 'H'})
      for (std::size_t k = 0; k < spec.sequence.size(); ++k)
        if (s.find_chain(id)->residues[k].name != residue_name(spec.sequence[k]))
          throw StructureError(std::string("chain ") + id + " does not carry the sequence");
    return s;
  });
  Placement placement = stage("placement", [&] { return place_opposing_sheet(abgh, spec); });

  BuildResult result;
  result.model = stage("lattice", [&] {
    Structure s = transform_chain(ab, 'A', placement.transform, 'G');
    s = transform_chain(s, 'B', placement.transform, 'H');
    SheetLattice lattice = spec.lattice;
    lattice.sheet2_transform = placement.transform;
    return replicate_lattice(s, lattice);
  });

  BuildReport& rep = result.report;
  rep.model_name = spec.model_name;
  rep.sequence = sequence_string(spec.sequence);
  rep.seed = spec.optimizer.seed;
  rep.sigma = spec.lj.sigma;
  rep.epsilon = spec.lj.epsilon;
  rep.full_sum = spec.full_sum;
  rep.placement_energy = placement.refine.best_value;
  rep.residual = placement.reconciliation.residual;
  rep.mean_displacement = placement.reconciliation.mean_displacement;
  rep.hbond_count_before = hb_before;
  rep.hbond_count_after = hb_after;
  rep.transform = placement.transform;
  rep.search = summarize(placement.search);
  rep.refine = summarize(placement.refine);
  if (placement.rigid)
    rep.rigid = summarize(*placement.rigid);

  stage("audit", [&] {
    for (const ContactPair& cp : spec.contact_pairs()) {
      rep.contacts.push_back(contact_report(result.model, cp, spec.contact_tolerance));
      rep.contact_energy += rep.contacts.back().energy;
    }
    rep.model_hbond_count = detect_hbonds(result.model).size();
    rep.clashes = clash_audit(result.model, spec.clash_cutoff);
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < result.model.chains.size(); ++i)
      for (std::size_t j = i + 1; j < result.model.chains.size(); ++j)
        for (const Residue& ri : result.model.chains[i].residues)
          for (const Atom& ai : ri.atoms)
            for (const Residue& rj : result.model.chains[j].residues)
              for (const Atom& aj : rj.atoms)
                dmin = std::min(dmin, ai.pos.dist(aj.pos));
    rep.min_interchain_distance = dmin;
    return 0;
  });

  if (hb_after != hb_before)
    rep.messages.push_back("hydrogen-bond count changed across mutation: " +
                           std::to_string(hb_before) + " -> " + std::to_string(hb_after));
  if (rep.residual > spec.residual_threshold) {
    rep.status = BuildStatus::warning;
    rep.messages.push_back("reconciliation residual " + format_fixed(rep.residual, 0, 3) +
                           " A exceeds " + format_fixed(spec.residual_threshold, 0, 3) +
                           " A; the free atoms did not move as one rigid body");
  }
  bool failed = !rep.clashes.empty();
  if (!rep.clashes.empty())
    rep.messages.push_back(std::to_string(rep.clashes.size()) + " atom pairs closer than " +
                           format_fixed(spec.clash_cutoff, 0, 2) + " A");
  for (const ContactReport& c : rep.contacts)
    if (!c.within_tolerance) {
      failed = true;
      rep.messages.push_back("contact " + c.anchor.str() + "-" + c.free.str() + " at " +
                             format_fixed(c.distance, 0, 4) + " A is off the optimum " +
                             format_fixed(c.optimal_distance, 0, 4) + " A");
    }
  if (failed)
    rep.status = BuildStatus::failed;
  return result;
}

EnergyReport analyze_energy(const Structure& st, const std::vector<ContactPair>& contacts,
                            const HBParams& hb, double clash_cutoff, double contact_tolerance) {
  EnergyReport rep;
  for (const ContactPair& cp : contacts) {
    try {
      rep.contacts.push_back(contact_report(st, cp, contact_tolerance));
      rep.contact_energy += rep.contacts.back().energy;
    } catch (const NotFoundError&) {
      rep.unresolved.push_back(cp.first.str() + "-" + cp.second.str());
    } catch (const MismatchError&) {
      rep.unresolved.push_back(cp.first.str() + "-" + cp.second.str());
    }
  }
  rep.hbonds = detect_hbonds(st);
  for (const HBond& h : rep.hbonds) {
    rep.hbond_energies.push_back(hb_pair_energy(h.distance, hb));
    rep.hbond_energy += rep.hbond_energies.back();
  }
  rep.clashes = clash_audit(st, clash_cutoff);
  return rep;
}

} // namespace zipper
