#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "hiertags/baselines.hpp"
#include "hiertags/benchmark.hpp"
#include "hiertags/error.hpp"
#include "hiertags/extract_a.hpp"
#include "hiertags/extract_b.hpp"
#include "hiertags/metrics.hpp"
#include "hiertags/parallel.hpp"
#include "hiertags/version.hpp"
#include "manifest.hpp"

namespace hiertags::cli {

namespace {

const std::map<std::string, RewireOrder> orders{
    {"leaf-first", RewireOrder::leaf_first}, {"random", RewireOrder::random}, {"top-first", RewireOrder::top_first}};

const std::map<std::string, HeymannCentrality> heymann_centralities{{"degree", HeymannCentrality::degree},
                                                                     {"strength", HeymannCentrality::strength},
                                                                     {"closeness", HeymannCentrality::closeness}};

std::vector<std::string> keys(const auto& map) {
  std::vector<std::string> out;
  for (const auto& [k, v] : map) out.push_back(k);
  return out;
}

/// Output sink: the --out file, or `fallback` when no file was named.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }
  void close() {
    if (!file_.is_open()) return;
    file_.close();
    if (!file_) throw Error("failed writing " + path_);
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_;
};

struct Common {
  std::string out;
  unsigned threads = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output file (default: standard output)");
  sub->add_option("--threads", c.threads, "Worker threads (default: $HIERTAG_THREADS or 1)");
}

/// Every option of `sub` as "arg.<name>", flags as true/false.
void record_args(const CLI::App& sub, Manifest& m) {
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    std::string value;
    if (opt->get_expected_max() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    m.set("arg." + name, value);
  }
}

CooccurrenceNetwork network_from(const std::string& path, bool with_ids, unsigned threads) {
  return build_cooccurrence(load_corpus(path, CorpusFormat{with_ids}), threads);
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  // "--manifest FILE [extra args]" replays a recorded run.
  if (args.size() >= 3 && args[1] == "--manifest") {
    try {
      auto replay = Manifest::load(args[2]).replay_args();
      replay.insert(replay.begin(), args[0]);
      replay.insert(replay.end(), args.begin() + 3, args.end());
      args = std::move(replay);
    } catch (const std::exception& e) {
      err << "hiertags: error: " << e.what() << '\n';
      return 1;
    }
  }

  CLI::App app{"Tag hierarchy extraction, evaluation and synthetic benchmarks", "hiertags"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version));
  std::string manifest_file;
  app.add_option("--manifest", manifest_file, "Replay the run recorded in a manifest file");

  Common common;

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random-walk benchmark corpus from a hierarchy");
  std::string gen_hierarchy, gen_tags = "poisson:3", gen_walk = "uniform:1:3", gen_profile = "linear-depth",
                             gen_table;
  BenchmarkConfig config;
  gen->add_option("--hierarchy", gen_hierarchy, "Exact hierarchy (edge list)")->required()->check(CLI::ExistingFile);
  gen->add_option("--objects", config.object_count, "Number of objects")->check(CLI::PositiveNumber);
  gen->add_option("--tags-per-object", gen_tags, "poisson:<mean> or fixed:<k>");
  gen->add_option("--p-rw", config.p_rw, "Probability of a random-walk tag")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--walk", gen_walk, "Walk length, uniform:<a>:<b> or fixed:<k>");
  gen->add_option("--profile", gen_profile, "linear-depth, power-law[:<g>] (frequency tail exponent, default 2) or zipf:<a>");
  gen->add_option("--profile-table", gen_table, "Explicit 'tag TAB weight' table (overrides --profile)")
      ->check(CLI::ExistingFile);
  gen->add_option("--seed", config.seed, "Random seed");
  add_common(gen, common);

  // extract
  auto* ext = app.add_subcommand("extract", "Extract a tag hierarchy from a corpus");
  std::string ext_corpus, algorithm, centrality = "degree";
  bool with_ids = false;
  AlgoAParams a_params;
  AlgoBParams b_params;
  HeymannParams h_params;
  SchmitzParams s_params;
  ext->add_option("--corpus", ext_corpus, "Objects file")->required()->check(CLI::ExistingFile);
  ext->add_flag("--with-ids", with_ids, "First field of every object line is an id");
  ext->add_option("--algorithm", algorithm, "a, b, heymann or schmitz")
      ->required()
      ->check(CLI::IsMember({"a", "b", "heymann", "schmitz"}));
  ext->add_option("--omega", a_params.omega, "Algorithm A: incoming-link threshold fraction")
      ->check(CLI::Range(0.0, 1.0));
  ext->add_option("--z-threshold", b_params.z_threshold, "Algorithm B: z-score pruning threshold")
      ->check(CLI::NonNegativeNumber);
  ext->add_flag("--force-single-root", b_params.force_single_root, "Algorithm B: join the roots into one tree");
  ext->add_option("--similarity-threshold", h_params.similarity_threshold, "Heymann: cosine similarity threshold")
      ->check(CLI::Range(0.0, 1.0));
  ext->add_option("--centrality", centrality, "Heymann: degree, strength or closeness")
      ->check(CLI::IsMember(keys(heymann_centralities)));
  ext->add_option("--t-subsume", s_params.t_subsume, "Schmitz: subsumption threshold")
      ->check(CLI::Range(0.0, 1.0));
  ext->add_option("--min-cooccurrence", s_params.min_cooccurrence, "Schmitz: minimum co-occurrence count");
  add_common(ext, common);

  // evaluate
  auto* eva = app.add_subcommand("evaluate", "Compare a reconstructed hierarchy to the exact one");
  std::string eva_exact, eva_recon, eva_curve, curve_order = "random";
  bool pad_missing = false, with_lmi = false;
  int curve_runs = 10;
  std::uint64_t curve_seed = 1;
  eva->add_option("--exact", eva_exact, "Exact hierarchy")->required()->check(CLI::ExistingFile);
  eva->add_option("--recon", eva_recon, "Reconstructed hierarchy")->required()->check(CLI::ExistingFile);
  eva->add_flag("--pad-missing", pad_missing, "Treat exact tags absent from the reconstruction as isolated");
  eva->add_flag("--lmi", with_lmi, "Also report LMI from a decay curve of the exact hierarchy");
  eva->add_option("--curve", eva_curve, "Precomputed decay curve ('f TAB I' lines) for LMI")
      ->check(CLI::ExistingFile);
  eva->add_option("--curve-runs", curve_runs, "Rewiring runs per grid point")->check(CLI::PositiveNumber);
  eva->add_option("--curve-order", curve_order, "Rewiring order of the curve")->check(CLI::IsMember(keys(orders)));
  eva->add_option("--seed", curve_seed, "Seed of the decay curve");
  add_common(eva, common);

  // curve
  auto* cur = app.add_subcommand("curve", "Tabulate the NMI decay of a tree under link rewiring");
  std::string cur_exact, cur_order = "random";
  std::optional<int> binary_levels;
  int cur_runs = 10;
  double grid_step = 0.05;
  std::uint64_t cur_seed = 1;
  auto* cur_exact_opt = cur->add_option("--exact", cur_exact, "Tree to rewire")->check(CLI::ExistingFile);
  cur->add_option("--binary-tree", binary_levels, "Use the full binary tree with this many levels instead")
      ->check(CLI::Range(1, 24))
      ->excludes(cur_exact_opt);
  cur->add_option("--order", cur_order, "leaf-first, random or top-first")->check(CLI::IsMember(keys(orders)));
  cur->add_option("--runs", cur_runs, "Runs per grid point")->check(CLI::PositiveNumber);
  cur->add_option("--grid-step", grid_step, "Spacing of the f grid")->check(CLI::Range(1e-6, 1.0));
  cur->add_option("--seed", cur_seed, "Random seed");
  add_common(cur, common);

  // randomize
  auto* ran = app.add_subcommand("randomize", "Rewire a fraction of the links of a tree");
  std::string ran_hierarchy, ran_order = "random";
  double fraction = 0.0;
  std::uint64_t ran_seed = 1;
  ran->add_option("--hierarchy", ran_hierarchy, "Tree to rewire")->required()->check(CLI::ExistingFile);
  ran->add_option("--f", fraction, "Fraction of links to rewire")->required()->check(CLI::Range(0.0, 1.0));
  ran->add_option("--order", ran_order, "leaf-first, random or top-first")->check(CLI::IsMember(keys(orders)));
  ran->add_option("--seed", ran_seed, "Random seed");
  add_common(ran, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  const auto start = std::chrono::steady_clock::now();
  const CLI::App* sub = app.get_subcommands().front();
  Manifest manifest;
  manifest.set("subcommand", sub->get_name());
  record_args(*sub, manifest);
  const unsigned threads = resolve_threads(common.threads);
  manifest.set("arg.threads", std::to_string(threads));

  try {
    Sink sink(common.out, out);
    if (sub == gen) {
      const Hierarchy h = load_hierarchy(gen_hierarchy);
      config.tags_per_object = TagsPerObject::parse(gen_tags);
      config.walk = WalkLength::parse(gen_walk);
      config.profile = gen_table.empty() ? FrequencyProfile::parse(gen_profile) : FrequencyProfile::load_table(gen_table);
      config.threads = threads;
      write_corpus(*sink, generate(h, config));
      manifest.set("input", gen_hierarchy);
      manifest.set("seed", std::to_string(config.seed));
    } else if (sub == ext) {
      const auto net = network_from(ext_corpus, with_ids, threads);
      Hierarchy h = [&] {
        if (algorithm == "a") return extract_a(net, a_params);
        if (algorithm == "b") return extract_b(net, b_params);
        if (algorithm == "heymann") {
          h_params.centrality = heymann_centralities.at(centrality);
          return extract_heymann(net, h_params).without_synthetic_root();
        }
        return extract_schmitz(net, s_params);
      }();
      write_hierarchy(*sink, h);
      manifest.set("input", ext_corpus);
    } else if (sub == eva) {
      const Hierarchy exact = load_hierarchy(eva_exact);
      const Hierarchy recon = align(exact, load_hierarchy(eva_recon), pad_missing);
      std::optional<DecayCurve> curve;
      if (!eva_curve.empty()) {
        std::ifstream in(eva_curve);
        curve = read_curve(in);
      } else if (with_lmi) {
        curve = decay_curve(exact, {orders.at(curve_order), curve_runs, CurveOptions::default_grid(), curve_seed,
                                    threads});
      }
      write_report(*sink, evaluate(exact, recon, curve ? &*curve : nullptr));
      manifest.set("input", eva_exact + "," + eva_recon);
      if (with_lmi && eva_curve.empty()) manifest.set("seed", std::to_string(curve_seed));
    } else if (sub == cur) {
      if (cur_exact.empty() && !binary_levels) throw Error("curve needs --exact or --binary-tree");
      const Hierarchy tree = cur_exact.empty() ? binary_tree(*binary_levels) : load_hierarchy(cur_exact);
      std::vector<double> grid;
      const auto steps = static_cast<int>(std::floor(1.0 / grid_step + 1e-9));
      for (int k = 0; k <= steps; ++k) grid.push_back(k * grid_step);
      if (grid.back() < 1.0 - 1e-12) grid.push_back(1.0);
      grid.back() = std::min(grid.back(), 1.0);
      write_curve(*sink, decay_curve(tree, {orders.at(cur_order), cur_runs, std::move(grid), cur_seed, threads}));
      manifest.set("input", cur_exact.empty() ? "binary-tree:" + std::to_string(*binary_levels) : cur_exact);
      manifest.set("seed", std::to_string(cur_seed));
    } else if (sub == ran) {
      const Hierarchy h = load_hierarchy(ran_hierarchy);
      Rng rng(ran_seed);
      write_hierarchy(*sink, rewire(h, fraction, orders.at(ran_order), rng));
      manifest.set("input", ran_hierarchy);
      manifest.set("seed", std::to_string(ran_seed));
    }
    sink.close();
  } catch (const std::exception& e) {
    err << "hiertags: error: " << e.what() << '\n';
    return 1;
  }

  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  manifest.set("output", common.out.empty() ? "-" : common.out);
  manifest.set("version", version);
  std::ostringstream secs;
  secs << std::fixed << std::setprecision(3) << took.count();
  manifest.set("duration_seconds", secs.str());
  if (common.out.empty()) {
    manifest.write(err);
  } else {
    std::ofstream mf(common.out + ".manifest", std::ios::binary);
    manifest.write(mf);
    if (!mf) {
      err << "hiertags: error: cannot write " << common.out << ".manifest\n";
      return 1;
    }
  }
  return 0;
}

}  // namespace hiertags::cli
