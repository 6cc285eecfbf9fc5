#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "zipper/bench_suite.hpp"
#include "zipper/builder.hpp"
#include "zipper/error.hpp"
#include "zipper/geometry.hpp"
#include "zipper/pdb.hpp"
#include "zipper/report.hpp"

namespace zipper::cli {

namespace {

// Bad flag values found after CLI11 parsing; maps to exit 2.
struct UsageError : Error {
  using Error::Error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush())
    throw Error("cannot write " + path);
}

std::uint64_t generated_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::vector<Aa> sequence_arg(const std::string& text) {
  try {
    return parse_sequence(text);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

struct BuildArgs {
  std::string template_path, sequence, out, spec_path, model_name;
  std::optional<std::uint64_t> seed;
  std::optional<double> sigma, epsilon;
  bool full_sum = false;
  bool no_rigid_stage = false;
};

int do_build(const BuildArgs& a, std::ostream& out) {
  FibrilSpec spec;
  try {
    if (!a.spec_path.empty())
      spec = fibril_spec_from_json(slurp(a.spec_path), spec);
    if (!a.sequence.empty())
      spec.sequence = sequence_arg(a.sequence);
    if (a.sigma || a.epsilon)
      spec.lj = LJParams(a.epsilon.value_or(spec.lj.epsilon), a.sigma.value_or(spec.lj.sigma));
    if (a.full_sum)
      spec.full_sum = true;
    if (a.no_rigid_stage)
      spec.rigid_stage = false;
    if (!a.model_name.empty())
      spec.model_name = a.model_name;
    else if (a.spec_path.empty() || spec.model_name == "model")
      spec.model_name = std::filesystem::path(a.out).stem().string();
    if (a.seed)
      spec.optimizer.seed = *a.seed;
    else if (a.spec_path.empty() || slurp(a.spec_path).find("\"seed\"") == std::string::npos)
      spec.optimizer.seed = generated_seed();
    if (spec.sequence.empty())
      throw UsageError("no sequence given (--sequence or the spec file)");
    spec.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  Structure tmpl = read_pdb_file(a.template_path);
  BuildResult r = build_fibril_model(tmpl, spec);
  std::string pdb = write_pdb(r.model);
  const std::string report_path = a.out + ".report.json";
  write_text(a.out, pdb);
  write_text(report_path, to_json(r.report));
  out << spec.model_name << " " << sequence_string(spec.sequence) << ": "
      << to_string(r.report.status) << ", " << r.model.chains.size() << " chains, "
      << r.report.clashes.size() << " clashes, seed " << spec.optimizer.seed << "\n"
      << "wrote " << a.out << " and " << report_path << "\n";
  return r.report.status == BuildStatus::failed ? kFailure : kSuccess;
}

struct MutateArgs {
  std::string in, sequence, out;
  std::vector<char> chains;
};

int do_mutate(const MutateArgs& a, std::ostream& out) {
  std::vector<Aa> seq = sequence_arg(a.sequence);
  Structure st = read_pdb_file(a.in);
  std::vector<char> chains = a.chains;
  if (chains.empty())
    for (const Chain& c : st.chains)
      chains.push_back(c.id);
  for (char id : chains)
    st = apply_sequence(st, id, seq);
  write_text(a.out, write_pdb(st));
  out << "wrote " << a.out << "\n";
  return kSuccess;
}

struct TransformArgs {
  std::string in, out;
  char chain = 'A';
  std::optional<char> new_chain;
  std::vector<double> matrix, translate;
  bool sheet2 = false;
};

int do_transform(const TransformArgs& a, std::ostream& out) {
  RigidTransform t;
  if (a.sheet2) {
    if (!a.matrix.empty() || !a.translate.empty())
      throw UsageError("--sheet2 excludes --matrix and --translate");
    t = RigidTransform::template_sheet2();
  } else {
    if (!a.matrix.empty() && a.matrix.size() != 9)
      throw UsageError("--matrix needs 9 reals, got " + std::to_string(a.matrix.size()));
    if (!a.translate.empty() && a.translate.size() != 3)
      throw UsageError("--translate needs 3 reals, got " + std::to_string(a.translate.size()));
    for (std::size_t k = 0; k < a.matrix.size(); ++k)
      t.rotation[k / 3][k % 3] = a.matrix[k];
    if (!a.translate.empty())
      t.translation = {a.translate[0], a.translate[1], a.translate[2]};
    try {
      t.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  Structure st = read_pdb_file(a.in);
  if (a.new_chain) {
    st = transform_chain(st, a.chain, t, *a.new_chain);
  } else {
    // In place: move a transformed copy over the original chain.
    const char tmp = '\x01';
    Structure moved = transform_chain(st, a.chain, t, tmp);
    Chain copy = moved.chains.back();
    copy.id = a.chain;
    *st.find_chain(a.chain) = std::move(copy);
  }
  write_text(a.out, write_pdb(st));
  out << "wrote " << a.out << "\n";
  return kSuccess;
}

struct EnergyArgs {
  std::string in, report;
  double sigma = 5.4, epsilon = 1.0, clash_cutoff = 2.0;
  std::optional<double> hb_c, hb_d;
};

int do_energy(const EnergyArgs& a, std::ostream& out) {
  LJParams lj(1.0, 1.0);
  HBParams hb = HBParams::from_minimum(2.9, 1.0);
  try {
    lj = LJParams(a.epsilon, a.sigma);
    if (a.hb_c.has_value() != a.hb_d.has_value())
      throw UsageError("--hb-c and --hb-d go together");
    if (a.hb_c)
      hb = HBParams(*a.hb_c, *a.hb_d);
    if (!(a.clash_cutoff > 0.0))
      throw UsageError("--clash-cutoff must be > 0");
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  Structure st = read_pdb_file(a.in);
  EnergyReport rep = analyze_energy(st, default_contacts(lj), hb, a.clash_cutoff);
  write_text(a.report, to_json(rep));
  out << "contact energy " << rep.contact_energy << ", " << rep.hbonds.size()
      << " hydrogen bonds, " << rep.clashes.size() << " clashes\n"
      << "wrote " << a.report << "\n";
  return kSuccess;
}

struct BenchArgs {
  std::string suite = "classic", report, config_path;
  std::vector<std::size_t> dims{2, 5, 10};
  std::vector<std::string> problems;
  std::size_t runs = 30;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

int do_bench(const BenchArgs& a, std::ostream& out) {
  if (a.suite != "classic")
    throw UsageError("unknown suite '" + a.suite + "' (available: classic)");
  if (a.runs < 1)
    throw UsageError("--runs must be >= 1");
  OptimizerConfig cfg = benchmark_config();
  BenchmarkReport rep;
  try {
    for (std::size_t d : a.dims)
      if (d < 1)
        throw UsageError("--dims entries must be >= 1");
    for (const std::string& p : a.problems)
      make_problem(p, 2);
    if (!a.config_path.empty())
      cfg = optimizer_config_from_json(slurp(a.config_path), cfg);
    cfg.seed = a.seed ? *a.seed : generated_seed();
    cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  rep = run_benchmark(a.suite, a.dims, a.runs, cfg, a.problems, a.threads);
  write_text(a.report, to_json(rep));
  std::size_t passed = 0;
  for (const BenchmarkCell& c : rep.cells) {
    passed += c.passed;
    out << c.problem << " n=" << c.dim << ": " << c.successes << "/" << c.runs
        << (c.passed ? " ok" : " FAILED") << "\n";
  }
  out << passed << "/" << rep.cells.size() << " cells met their success rate, seed " << cfg.seed
      << "\nwrote " << a.report << "\n";
  return rep.all_passed ? kSuccess : kFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steric-zipper fibril model builder"};
  app.name("zipper");
  app.require_subcommand(1);
  app.set_version_flag("--version", "zipper 0.1.0");

  BuildArgs build;
  CLI::App* b = app.add_subcommand("build", "Build a 12-chain fibril model from a template");
  b->add_option("--template", build.template_path, "Template PDB with chains A and B")
      ->required();
  b->add_option("--sequence", build.sequence, "Six residues over {A, G}, e.g. GAAAAG");
  b->add_option("--out", build.out, "Output PDB; the report goes to <out>.report.json")
      ->required();
  b->add_option("--seed", build.seed, "Optimizer seed (generated when absent)");
  b->add_option("--sigma", build.sigma, "LJ sigma of the contact pairs, Angstrom");
  b->add_option("--epsilon", build.epsilon, "LJ well depth of the contact pairs");
  b->add_flag("--full-sum", build.full_sum, "Sum LJ over all anchor/free atom pairs");
  b->add_flag("--no-rigid-stage", build.no_rigid_stage,
              "Keep the reconciled translation without the steric re-placement");
  b->add_option("--spec", build.spec_path, "JSON spec file; flags override its values");
  b->add_option("--name", build.model_name, "Model name for the report");

  MutateArgs mutate;
  CLI::App* m = app.add_subcommand("mutate", "Mutate chains to a poly-Ala/Gly sequence");
  m->add_option("--in", mutate.in, "Input PDB")->required();
  m->add_option("--sequence", mutate.sequence, "Six residues over {A, G}")->required();
  m->add_option("--out", mutate.out, "Output PDB")->required();
  m->add_option("--chain", mutate.chains, "Chain to mutate (repeatable; default all)");

  TransformArgs transform;
  CLI::App* t = app.add_subcommand("transform", "Apply a rigid transform to one chain");
  t->add_option("--in", transform.in, "Input PDB")->required();
  t->add_option("--out", transform.out, "Output PDB")->required();
  t->add_option("--chain", transform.chain, "Chain to transform")->required();
  t->add_option("--new-chain", transform.new_chain, "Append the image as this chain instead");
  t->add_option("--matrix", transform.matrix, "Rotation, 9 reals row-major")->expected(9);
  t->add_option("--translate", transform.translate, "Translation, 3 reals")->expected(3);
  t->add_flag("--sheet2", transform.sheet2, "Use the template sheet-1 -> sheet-2 operator");

  EnergyArgs energy;
  CLI::App* e = app.add_subcommand("energy", "Contact LJ, hydrogen bonds and clashes");
  e->add_option("--in", energy.in, "Input PDB")->required();
  e->add_option("--report", energy.report, "Output JSON report")->required();
  e->add_option("--sigma", energy.sigma, "LJ sigma, Angstrom")->capture_default_str();
  e->add_option("--epsilon", energy.epsilon, "LJ well depth")->capture_default_str();
  e->add_option("--hb-c", energy.hb_c, "10-12 repulsive coefficient C");
  e->add_option("--hb-d", energy.hb_d, "10-12 attractive coefficient D");
  e->add_option("--clash-cutoff", energy.clash_cutoff, "Angstrom")->capture_default_str();

  BenchArgs bench;
  CLI::App* be = app.add_subcommand("bench", "Run the optimizer benchmark suite");
  be->add_option("--suite", bench.suite, "Problem suite")->capture_default_str();
  be->add_option("--dims", bench.dims, "Dimensions, comma separated")->delimiter(',');
  be->add_option("--runs", bench.runs, "Seeded runs per cell")->capture_default_str();
  be->add_option("--seed", bench.seed, "Master seed (generated when absent)");
  be->add_option("--report", bench.report, "Output JSON report")->required();
  be->add_option("--problems", bench.problems, "Subset of problems, comma separated")
      ->delimiter(',');
  be->add_option("--threads", bench.threads, "Worker threads (0 = all cores)");
  be->add_option("--config", bench.config_path, "JSON optimizer config overriding the preset");

  std::vector<const char*> argv{"zipper"};
  for (const std::string& s : args)
    argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& pe) {
    std::ostringstream o, er;
    int code = app.exit(pe, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (b->parsed())
      return do_build(build, out);
    if (m->parsed())
      return do_mutate(mutate, out);
    if (t->parsed())
      return do_transform(transform, out);
    if (e->parsed())
      return do_energy(energy, out);
    return do_bench(bench, out);
  } catch (const UsageError& ex) {
    err << "zipper: usage error: " << ex.what() << "\n";
    return kUsage;
  } catch (const ParseError& ex) {
    err << "zipper: parse error: " << ex.what() << "\n";
    return kFailure;
  } catch (const std::exception& ex) {
    err << "zipper: error: " << ex.what() << "\n";
    return kFailure;
  }
}

} // namespace zipper::cli
