#include "adk/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "adk/conjecture.hpp"
#include "adk/diffusion.hpp"
#include "adk/errors.hpp"
#include "adk/io.hpp"
#include "adk/setfn.hpp"
#include "adk/transforms.hpp"
#include "adk/verify.hpp"

namespace adk::cli {

namespace {

enum class Status { ok, violation, budget, error };

int finish(std::ostream& out, Status status) {
  switch (status) {
    case Status::ok:
      out << "# status ok\n";
      return 0;
    case Status::violation:
      out << "# status violation\n";
      return 1;
    case Status::budget:
      out << "# status budget-exceeded\n";
      return 3;
    case Status::error:
      out << "# status error\n";
      return 2;
  }
  return 2;
}

int parse_order(const std::string& text) {
  if (text == "inf" || text == "INF" || text == "unbounded") return k_unbounded;
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("order must be a positive integer or 'inf'");
  }
  if (used != text.size() || value < 1) {
    throw std::invalid_argument("order must be a positive integer or 'inf'");
  }
  return value;
}

std::string order_to_string(int k) {
  return k == k_unbounded ? std::string("inf") : std::to_string(k);
}

std::string format_double(double value) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << value;
  return os.str();
}

Instance load_with_digest(const std::string& path, std::ostream& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'", 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  out << "# input " << hex64(fnv1a64(text)) << "\n";
  return parse_instance(text);
}

GTInstance to_gt(const Instance& inst) {
  if (const auto* gt = std::get_if<GTInstance>(&inst)) return *gt;
  return triggering_to_gt(std::get<TriggeringInstance>(inst));
}

int single_bit_index(std::uint32_t mask) { return __builtin_ctz(mask); }

// ---- subcommand bodies ----------------------------------------------------

Status cmd_check_adk(const Instance& inst, const std::string& node, bool all,
                     int k, std::ostream& out) {
  const GTInstance gt = to_gt(inst);
  std::vector<int> targets;
  if (all) {
    for (int v = 0; v < gt.n(); ++v) targets.push_back(v);
  } else {
    const int v = gt.node_by_label(node);
    if (v < 0) throw parse_error("unknown node label '" + node + "'", 0);
    targets.push_back(v);
  }
  out << "order " << order_to_string(k) << "\n";
  bool any_fail = false;
  for (int v : targets) {
    const AdkReport rep = is_adk(gt.thresholds[v], k);
    const GroundSet& ground = gt.thresholds[v].ground();
    if (rep.holds) {
      out << "node " << gt.labels[v] << " holds order=" << rep.order_checked
          << "\n";
    } else {
      any_fail = true;
      const AdkWitness& w = *rep.witness;
      out << "node " << gt.labels[v] << " fails A=" << ground.mask_to_string(w.a_mask)
          << " S=" << ground.mask_to_string(w.s_mask)
          << " value=" << rational_to_string(w.value) << "\n";
    }
  }
  return any_fail ? Status::violation : Status::ok;
}

Status cmd_spread(const Instance& inst, const std::string& seeds_text, bool mc,
                  long long trials, std::uint64_t mc_seed, long long budget,
                  std::ostream& out) {
  const std::vector<std::string>& labels = instance_labels(inst);
  const std::uint32_t seeds = parse_node_set(labels, seeds_text);
  if (!mc) {
    SpreadResult sp;
    if (const auto* trig = std::get_if<TriggeringInstance>(&inst)) {
      sp = live_edge_spread(*trig, seeds, budget);
    } else {
      sp = exact_spread(std::get<GTInstance>(inst), seeds, budget);
    }
    out << "sigma " << rational_to_string(sp.sigma) << "\n";
    for (std::size_t v = 0; v < labels.size(); ++v) {
      out << "node " << labels[v] << " " << rational_to_string(sp.per_node[v])
          << "\n";
    }
    return Status::ok;
  }
  const GTInstance gt = to_gt(inst);
  const MonteCarloSpread est = monte_carlo_spread(gt, seeds, trials, mc_seed);
  out << "sigma-mean " << format_double(est.mean) << "\n";
  out << "std-error " << format_double(est.std_error) << "\n";
  out << "trials " << est.trials << "\n";
  out << "rng-seed " << est.seed << "\n";
  return Status::ok;
}

Status cmd_global_adk(const Instance& inst, int k, long long budget,
                      std::ostream& out) {
  const GTInstance gt = to_gt(inst);
  const GlobalCheck chk = global_adk_check(gt, k, budget);
  out << "order " << order_to_string(k) << "\n";
  out << "functions " << (gt.n() + 1) << "\n";
  if (chk.holds) {
    out << "result holds\n";
    return Status::ok;
  }
  const GroundSet& ground = chk.sigma.ground();
  const AdkWitness& w = *chk.report.witness;
  out << "result fails function=" << chk.function
      << " A=" << ground.mask_to_string(w.a_mask)
      << " S=" << ground.mask_to_string(w.s_mask)
      << " value=" << rational_to_string(w.value) << "\n";
  return Status::violation;
}

Status cmd_convert(const Instance& inst, const std::string& to,
                   std::ostream& out) {
  if (to == "triggering") {
    if (const auto* trig = std::get_if<TriggeringInstance>(&inst)) {
      out << serialize_instance(*trig);
      return Status::ok;
    }
    const GTInstance& gt = std::get<GTInstance>(inst);
    try {
      out << serialize_instance(gt_to_triggering(gt));
      return Status::ok;
    } catch (const not_ad_infinity_error& e) {
      const GroundSet& ground = gt.thresholds[e.node()].ground();
      out << "not-representable node=" << gt.labels[e.node()]
          << " A=" << ground.mask_to_string(e.a_mask())
          << " coefficient=" << e.coefficient() << "\n";
      return Status::violation;
    }
  }
  if (const auto* gt = std::get_if<GTInstance>(&inst)) {
    out << serialize_instance(*gt);
  } else {
    out << serialize_instance(triggering_to_gt(std::get<TriggeringInstance>(inst)));
  }
  return Status::ok;
}

Status cmd_transform(const Instance& inst, bool lift, long long budget,
                     std::ostream& out) {
  const GTInstance gt = to_gt(inst);
  LayeredInstance image;
  if (lift) {
    LayerAssignment la = dag_layering(gt.graph);
    if (la.m() < 2) {
      // One layer means no edges at all; pad with an empty top layer so the
      // expansion below is defined.
      la.layer.assign(gt.n(), 2);
      la.layer_count = 2;
    }
    image = lift_layered(gt, la);
  } else {
    image = dag_to_layered(gt);
  }

  out << serialize_instance(image.instance);
  out << "# image-nodes " << image.instance.n() << "\n";
  for (int i = 1; i <= image.layers.m(); ++i) {
    out << "# layer " << i;
    std::string sep = " ";
    for (int v = 0; v < image.instance.n(); ++v) {
      if (image.layers.layer[v] == i) {
        out << sep << image.instance.labels[v];
        sep = ",";
      }
    }
    if (sep == " ") out << " -";
    out << "\n";
  }
  for (int v = 0; v < gt.n(); ++v) {
    const int kept = image.map.kept[v];
    const int seed_image = single_bit_index(image.map.map_seeds(1u << v));
    out << "# map " << gt.labels[v] << " kept=" << image.instance.labels[kept]
        << " seed-image=" << image.instance.labels[seed_image] << "\n";
  }

  std::vector<std::uint32_t> seed_sets;
  seed_sets.push_back(0);
  for (int v = 0; v < gt.n(); ++v) seed_sets.push_back(1u << v);
  seed_sets.push_back(gt.graph.all_nodes());
  const GroundSet node_set(gt.labels);
  const TransformCheck chk = verify_transform(gt, image, seed_sets, std::nullopt, budget);
  for (const TransformCheckRow& row : chk.rows) {
    out << "# spread seeds=" << node_set.mask_to_string(row.seeds)
        << " original=" << rational_to_string(row.original)
        << " transformed=" << rational_to_string(row.transformed) << "\n";
  }
  out << "# spread-identity " << (chk.spreads_match() ? "ok" : "MISMATCH") << "\n";
  return chk.spreads_match() ? Status::ok : Status::violation;
}

Status cmd_search(const GenConfig& cfg, int instances, long long budget,
                  int threads, std::ostream& out) {
  const ConjectureReport rep = run_campaign(cfg, instances, budget, threads);
  out << "config graph=" << to_string(cfg.graph_kind) << " n=" << cfg.n
      << " k=" << order_to_string(cfg.k) << " family=" << to_string(cfg.family)
      << " density=" << rational_to_string(cfg.edge_density)
      << " max-indegree=" << cfg.max_indegree << " max-layers=" << cfg.max_layers
      << " strict=" << (cfg.strict ? "yes" : "no") << " seed=" << cfg.rng_seed
      << " instances=" << rep.instances
      << " mode=" << (rep.search_mode ? "search" : "regression") << "\n";
  for (const CampaignItem& item : rep.items) {
    out << "instance " << item.index << " seed=0x" << hex64(item.stream_seed) << " ";
    switch (item.verdict) {
      case InstanceVerdict::pass:
        out << "pass";
        break;
      case InstanceVerdict::violation:
        out << "violation";
        break;
      case InstanceVerdict::budget_skipped:
        out << "budget-skipped";
        break;
      case InstanceVerdict::gen_failed:
        out << "gen-failed";
        break;
    }
    if (!item.detail.empty()) out << " " << item.detail;
    out << "\n";
  }
  out << "summary passes=" << rep.passes << " violations=" << rep.violations
      << " budget-skipped=" << rep.budget_skipped
      << " gen-failed=" << rep.gen_failed << "\n";
  if (rep.counterexample) {
    const Counterexample& cex = *rep.counterexample;
    const GroundSet node_set(cex.instance.labels);
    out << "verdict counterexample\n";
    out << "counterexample index=" << cex.index << " seed=0x"
        << hex64(cex.stream_seed) << " function=" << cex.function
        << " A=" << node_set.mask_to_string(cex.witness.a_mask)
        << " S=" << node_set.mask_to_string(cex.witness.s_mask)
        << " value=" << rational_to_string(cex.witness.value)
        << " confirmed=" << (cex.confirmed ? "yes" : "no") << "\n";
    out << "recheck " << cex.recheck_detail << "\n";
    out << "begin-instance\n";
    out << serialize_instance(cex.instance);
    out << "end-instance\n";
    return Status::violation;
  }
  if (rep.violations > 0) {
    out << "verdict counterexample\n";
    return Status::violation;
  }
  out << "verdict " << (rep.all_pass() ? "all-pass" : "incomplete") << "\n";
  return Status::ok;
}

Status cmd_verify(const std::vector<int>& ids, std::ostream& out,
                  std::ostream& err) {
  const std::vector<CriterionResult> results = run_acceptance(ids, &err);
  int passed = 0;
  for (const CriterionResult& r : results) {
    if (r.pass) ++passed;
    out << "criterion " << r.id << " " << r.name << " "
        << (r.pass ? "pass" : "FAIL") << " (" << r.detail << ")\n";
  }
  out << "passed " << passed << "/" << results.size() << "\n";
  return passed == static_cast<int>(results.size()) ? Status::ok
                                                    : Status::violation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact oracles for order-k sign profiles of set functions and "
               "threshold cascades"};
  app.name("adk");
  app.require_subcommand(1);

  // check-adk
  std::string check_file, check_node, check_k = "inf";
  bool check_all = false;
  CLI::App* c_check = app.add_subcommand(
      "check-adk", "Sign-profile check of per-node threshold tables");
  c_check->add_option("file", check_file, "instance file")->required();
  CLI::Option* o_node = c_check->add_option("--node", check_node, "node label");
  CLI::Option* o_all = c_check->add_flag("--all", check_all, "check every node");
  o_node->excludes(o_all);
  o_all->excludes(o_node);
  c_check->add_option("--k", check_k, "order: positive integer or 'inf'")
      ->required();

  // spread
  std::string spread_file, spread_seeds;
  bool spread_exact = false, spread_mc = false;
  long long spread_trials = 100'000;
  std::uint64_t spread_seed = 1;
  long long spread_budget = k_default_budget;
  CLI::App* c_spread =
      app.add_subcommand("spread", "Expected active-set size from a seed set");
  c_spread->add_option("file", spread_file, "instance file")->required();
  c_spread->add_option("--seeds", spread_seeds, "comma-separated node labels")
      ->required();
  CLI::Option* o_exact = c_spread->add_flag("--exact", spread_exact, "exact oracle (default)");
  CLI::Option* o_mc = c_spread->add_flag("--mc", spread_mc, "Monte Carlo estimate");
  o_exact->excludes(o_mc);
  o_mc->excludes(o_exact);
  c_spread->add_option("--trials", spread_trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber);
  c_spread->add_option("--seed", spread_seed, "Monte Carlo rng seed");
  c_spread->add_option("--budget", spread_budget, "exact-oracle state budget")
      ->check(CLI::PositiveNumber);

  // global-adk
  std::string global_file, global_k = "inf";
  long long global_budget = k_default_budget;
  CLI::App* c_global = app.add_subcommand(
      "global-adk",
      "Sign-profile check of the spread and every activation probability over "
      "all seed sets");
  c_global->add_option("file", global_file, "instance file")->required();
  c_global->add_option("--k", global_k, "order: positive integer or 'inf'")
      ->required();
  c_global->add_option("--budget", global_budget, "exact-oracle state budget")
      ->check(CLI::PositiveNumber);

  // convert
  std::string convert_file, convert_to;
  CLI::App* c_convert = app.add_subcommand(
      "convert", "Convert between threshold and triggering form");
  c_convert->add_option("file", convert_file, "instance file")->required();
  c_convert->add_option("--to", convert_to, "target model")
      ->required()
      ->check(CLI::IsMember({"gt", "triggering"}));

  // transform
  std::string transform_file;
  bool transform_lift = false, transform_layerize = false;
  long long transform_budget = k_default_budget;
  CLI::App* c_transform = app.add_subcommand(
      "transform", "Graph rewrites that preserve the spread");
  c_transform->add_option("file", transform_file, "instance file")->required();
  CLI::Option* o_lift = c_transform->add_flag(
      "--lift", transform_lift, "copy every node down through the layers");
  CLI::Option* o_layerize = c_transform->add_flag(
      "--layerize", transform_layerize, "relay-expand a dag into layered form");
  o_lift->excludes(o_layerize);
  o_layerize->excludes(o_lift);
  c_transform->add_option("--budget", transform_budget, "exact-oracle state budget")
      ->check(CLI::PositiveNumber);

  // search
  std::string search_graph = "general", search_k = "2", search_family = "mixed";
  std::string search_density = "1/2";
  int search_n = 5, search_instances = 50, search_threads = 0;
  int search_max_indegree = 4, search_max_layers = 4;
  bool search_strict = false;
  std::uint64_t search_seed = 1;
  long long search_budget = k_default_budget;
  CLI::App* c_search = app.add_subcommand(
      "search", "Random-instance campaign checking sign profiles of the spread");
  c_search->add_option("--graph", search_graph, "graph kind")
      ->check(CLI::IsMember({"layered", "dag", "general"}));
  c_search->add_option("--n", search_n, "node count")->check(CLI::Range(1, 20));
  c_search->add_option("--k", search_k, "order: positive integer or 'inf'");
  c_search->add_option("--instances", search_instances, "number of instances")
      ->check(CLI::PositiveNumber);
  c_search->add_option("--seed", search_seed, "campaign rng seed");
  c_search->add_option("--density", search_density, "edge probability p/q");
  c_search->add_option("--family", search_family, "threshold function family")
      ->check(CLI::IsMember({"triggering", "rejection", "coverage", "mixed"}));
  c_search->add_option("--max-indegree", search_max_indegree,
                       "trim in-neighborhoods to this size")
      ->check(CLI::Range(0, 12));
  c_search->add_option("--max-layers", search_max_layers,
                       "layer cap for layered generation")
      ->check(CLI::Range(1, 20));
  c_search->add_flag("--strict", search_strict,
                     "demand thresholds that fail at order k+1");
  c_search->add_option("--budget", search_budget, "exact-oracle state budget")
      ->check(CLI::PositiveNumber);
  c_search->add_option("--threads", search_threads,
                       "worker threads (0 = ADK_THREADS or hardware)")
      ->check(CLI::Range(0, 64));

  // verify-paper
  std::vector<int> verify_ids;
  CLI::App* c_verify = app.add_subcommand(
      "verify-paper", "Run the built-in acceptance battery of exactness checks");
  c_verify
      ->add_option("--criteria", verify_ids,
                   "criterion ids to run (default: all)")
      ->delimiter(',')
      ->check(CLI::Range(1, 10));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  out << "# adk";
  for (const std::string& a : args) out << " " << a;
  out << "\n";

  Status status = Status::error;
  try {
    if (app.got_subcommand(c_check)) {
      if (check_node.empty() && !check_all) {
        throw std::invalid_argument("pass --node <label> or --all");
      }
      const Instance inst = load_with_digest(check_file, out);
      status = cmd_check_adk(inst, check_node, check_all, parse_order(check_k), out);
    } else if (app.got_subcommand(c_spread)) {
      const Instance inst = load_with_digest(spread_file, out);
      status = cmd_spread(inst, spread_seeds, spread_mc, spread_trials,
                          spread_seed, spread_budget, out);
    } else if (app.got_subcommand(c_global)) {
      const Instance inst = load_with_digest(global_file, out);
      status = cmd_global_adk(inst, parse_order(global_k), global_budget, out);
    } else if (app.got_subcommand(c_convert)) {
      const Instance inst = load_with_digest(convert_file, out);
      status = cmd_convert(inst, convert_to, out);
    } else if (app.got_subcommand(c_transform)) {
      if (!transform_lift && !transform_layerize) {
        throw std::invalid_argument("pass --lift or --layerize");
      }
      const Instance inst = load_with_digest(transform_file, out);
      status = cmd_transform(inst, transform_lift, transform_budget, out);
    } else if (app.got_subcommand(c_search)) {
      GenConfig cfg;
      if (search_graph == "layered") {
        cfg.graph_kind = GraphKind::layered;
      } else if (search_graph == "dag") {
        cfg.graph_kind = GraphKind::dag;
      } else {
        cfg.graph_kind = GraphKind::general;
      }
      cfg.n = search_n;
      cfg.k = parse_order(search_k);
      if (search_family == "triggering") {
        cfg.family = FunctionFamily::triggering_derived;
      } else if (search_family == "rejection") {
        cfg.family = FunctionFamily::rejection;
      } else if (search_family == "coverage") {
        cfg.family = FunctionFamily::coverage;
      } else {
        cfg.family = FunctionFamily::mixed;
      }
      cfg.edge_density = rational_from_string(search_density);
      if (!in_unit_interval(cfg.edge_density)) {
        throw std::invalid_argument("--density must lie in [0,1]");
      }
      cfg.rng_seed = search_seed;
      cfg.max_indegree = search_max_indegree;
      cfg.max_layers = search_max_layers;
      cfg.strict = search_strict;
      status = cmd_search(cfg, search_instances, search_budget, search_threads, out);
    } else if (app.got_subcommand(c_verify)) {
      status = cmd_verify(verify_ids, out, err);
    }
  } catch (const budget_error& e) {
    out << "error " << e.what() << "\n";
    status = Status::budget;
  } catch (const parse_error& e) {
    out << "error " << e.what() << "\n";
    status = Status::error;
  } catch (const std::exception& e) {
    out << "error " << e.what() << "\n";
    status = Status::error;
  }
  return finish(out, status);
}

}  // namespace adk::cli
