#include "graphlim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "graphlim/density.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/random_graphs.hpp"
#include "graphlim/reduction.hpp"
#include "graphlim/spectral.hpp"

namespace graphlim::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path);
  file << text;
}

LabeledMultigraph load_graph(const std::string& path) {
  try {
    return parse_graph(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

StepGraphon load_graphon(const std::string& path) {
  try {
    return parse_graphon(read_file(path));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

AnchorAssignment parse_anchors(const std::string& text) {
  AnchorAssignment anchors;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("anchor '" + item + "' is not label=block");
    try {
      std::size_t used = 0;
      const Label label = std::stoull(item.substr(0, eq), &used);
      if (used != eq) throw std::invalid_argument("label");
      const std::string rhs = item.substr(eq + 1);
      const std::size_t block = std::stoull(rhs, &used);
      if (used != rhs.size()) throw std::invalid_argument("block");
      if (!anchors.emplace(label, block).second) throw InvalidArgument("label " + std::to_string(label) + " repeated");
    } catch (const std::logic_error&) {
      throw InvalidArgument("anchor '" + item + "' is not label=block");
    }
  }
  return anchors;
}

struct Options {
  std::string graph, graphon, graphon2, output, anchors, partition, sizes;
  std::uint64_t mc = 0, seed = 0;
  unsigned threads = 1, k = 1;
  std::size_t n = 0, reps = 0, distinguisher_nodes = 0;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and sampled computations with graph limits", "graphlim"};
  app.require_subcommand(1);
  Options o;

  auto* density = app.add_subcommand("density", "Homomorphism density t(F, H)");
  density->add_option("--graph", o.graph, "Pattern graph file")->required();
  density->add_option("--graphon", o.graphon, "Graphon file")->required();
  density->add_option("--mc", o.mc, "Monte Carlo samples instead of the exact value")->check(CLI::Range(2ULL, ~0ULL));
  density->add_option("--seed", o.seed, "Seed for --mc");
  density->add_option("--threads", o.threads, "Worker threads for --mc")->check(CLI::Range(1u, 256u));

  auto* anchored = app.add_subcommand("anchored-density", "Density with labeled nodes pinned to blocks");
  anchored->add_option("--graph", o.graph, "Partially labeled pattern graph file")->required();
  anchored->add_option("--graphon", o.graphon, "Graphon file")->required();
  anchored->add_option("--anchors", o.anchors, "label=block pairs, e.g. \"1=0,2=3\"")->required();

  auto* reduce = app.add_subcommand("twin-reduce", "Merge twin blocks and drop zero-weight blocks");
  reduce->add_option("graphon", o.graphon, "Graphon file")->required();
  reduce->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* weak = app.add_subcommand("weak-iso", "Decide weak isomorphism");
  weak->add_option("graphon1", o.graphon, "First graphon file")->required();
  weak->add_option("graphon2", o.graphon2, "Second graphon file")->required();
  weak->add_option("--distinguisher-max-nodes", o.distinguisher_nodes,
                   "On a negative verdict, search distinguishing graphs up to this size")
      ->check(CLI::Range(std::size_t{2}, kDefaultEnumerationLimit));

  auto* blow = app.add_subcommand("blowup", "k-fold block replication");
  blow->add_option("graphon", o.graphon, "Graphon file")->required();
  blow->add_option("--k", o.k, "Replication factor")->required()->check(CLI::PositiveNumber);
  blow->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* quot = app.add_subcommand("quotient", "Quotient by a block partition");
  quot->add_option("graphon", o.graphon, "Graphon file")->required();
  quot->add_option("--partition", o.partition, "Partition file {\"class_of\": [...]} or list \"0,0,1\"")->required();
  quot->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* spec = app.add_subcommand("spectrum", "Kernel eigenvalues, largest magnitude first");
  spec->add_option("graphon", o.graphon, "Graphon file")->required();

  auto* couple = app.add_subcommand("couple", "Coupling of two weakly isomorphic graphons");
  couple->add_option("graphon1", o.graphon, "First graphon file")->required();
  couple->add_option("graphon2", o.graphon2, "Second graphon file")->required();
  couple->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* sample = app.add_subcommand("sample", "Draw a W-random graph");
  sample->add_option("graphon", o.graphon, "Graphon file")->required();
  sample->add_option("--n", o.n, "Number of nodes")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", o.seed, "Seed")->required();
  sample->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* converge = app.add_subcommand("converge", "Density convergence of W-random graphs, as CSV");
  converge->add_option("graphon", o.graphon, "Graphon file")->required();
  converge->add_option("--graph", o.graph, "Motif graph file")->required();
  converge->add_option("--sizes", o.sizes, "Comma-separated node counts")->required();
  converge->add_option("--reps", o.reps, "Replications per size")->required()->check(CLI::PositiveNumber);
  converge->add_option("--seed", o.seed, "Master seed")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (density->parsed() && o.mc == 0 && (density->count("--seed") || density->count("--threads")))
      throw CLI::ValidationError("--seed/--threads only apply together with --mc");
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (density->parsed()) {
      const LabeledMultigraph f = load_graph(o.graph);
      const StepGraphon h = load_graphon(o.graphon);
      const DensityValue t = o.mc > 0 ? density_mc(f, as_kernel(h), o.mc, o.seed, o.threads) : density_exact(f, h);
      out << t.to_string() << '\n';
    } else if (anchored->parsed()) {
      const DensityValue t = anchored_density(load_graph(o.graph), load_graphon(o.graphon), parse_anchors(o.anchors));
      out << t.to_string() << '\n';
    } else if (reduce->parsed()) {
      emit(format_graphon(twin_reduce(load_graphon(o.graphon))), o.output, out);
    } else if (weak->parsed()) {
      const StepGraphon h1 = load_graphon(o.graphon);
      const StepGraphon h2 = load_graphon(o.graphon2);
      WeakIsoVerdict v = weak_iso(h1, h2);
      if (auto* no = std::get_if<NotIsomorphic>(&v.outcome); no && o.distinguisher_nodes > 0)
        no->distinguisher = find_distinguishing_graph(h1, h2, o.distinguisher_nodes);
      out << format_verdict(v);
    } else if (blow->parsed()) {
      emit(format_graphon(blowup(load_graphon(o.graphon), o.k)), o.output, out);
    } else if (quot->parsed()) {
      std::ifstream probe(o.partition);
      const BlockPartition p = parse_partition(probe ? read_file(o.partition) : o.partition);
      emit(format_graphon(quotient(load_graphon(o.graphon), p)), o.output, out);
    } else if (spec->parsed()) {
      const Spectrum s = eigendecompose(kernel_matrix(load_graphon(o.graphon)));
      for (double lambda : s.eigenvalues) out << format_real(lambda) << '\n';
    } else if (couple->parsed()) {
      const auto c = build_coupling(load_graphon(o.graphon), load_graphon(o.graphon2));
      if (!c) throw Error("graphons are not weakly isomorphic; no coupling exists");
      emit(format_coupling(*c), o.output, out);
    } else if (sample->parsed()) {
      emit(format_graph(sample_wrandom(load_graphon(o.graphon), o.n, o.seed)), o.output, out);
    } else if (converge->parsed()) {
      std::vector<std::size_t> sizes;
      std::istringstream in(o.sizes);
      std::string item;
      while (std::getline(in, item, ',')) {
        try {
          std::size_t used = 0;
          sizes.push_back(std::stoul(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
          err << "error: bad size '" << item << "' in --sizes\n";
          return kExitUsage;
        }
      }
      const LabeledMultigraph f = load_graph(o.graph);
      out << format_csv(convergence_experiment(load_graphon(o.graphon), f, sizes, o.reps, o.seed));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace graphlim::cli
