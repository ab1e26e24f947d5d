#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adk/diffusion.hpp"
#include "adk/rng.hpp"
#include "adk/setfn.hpp"

namespace adk {

enum class GraphKind { layered, dag, general };

enum class FunctionFamily {
  triggering_derived,  // hitting probability of a random subset distribution
  rejection,           // redrawn until the sign profile certifies at order k
  coverage,            // weighted coverage
  mixed,               // per-node choice among the applicable families
};

std::string to_string(GraphKind kind);
std::string to_string(FunctionFamily family);

struct GenConfig {
  GraphKind graph_kind = GraphKind::general;
  int n = 5;
  Rational edge_density = Rational(1, 2);
  int k = 2;  // target local order; k_unbounded for no finite cap
  FunctionFamily family = FunctionFamily::mixed;
  std::uint64_t rng_seed = 1;
  // Tuning knobs beyond the core contract:
  int max_indegree = 4;   // in-neighborhoods are trimmed to this size
  int max_layers = 4;     // layered generation only
  bool strict = false;    // demand is_adk(k+1) failure where the ground allows
};

/// Random function on `ground` certified AD at order k before being
/// returned (and, when `strict` and the ground is large enough, certified to
/// fail at order k+1).  Throws budget_error after 10^4 rejected draws.
SetFunction gen_adk_function(const GroundSet& ground, int k, FunctionFamily family,
                             RngStream& rng, bool strict = false);

struct GeneratedInstance {
  GTInstance instance;
  /// Present for layered generation (the construction-time assignment; a
  /// peeling pass need not recover a one-step layering even when one
  /// exists).
  std::optional<LayerAssignment> layers;
};

/// Random instance with self-certified locally-AD-k thresholds.
GeneratedInstance gen_instance(const GenConfig& cfg, RngStream& rng);

/// Random triggering instance (always corresponds to locally AD-unbounded
/// thresholds).
TriggeringInstance gen_triggering_instance(const GenConfig& cfg, RngStream& rng);

struct GlobalCheck {
  bool holds = true;
  /// "sigma" or the label of the node whose activation-probability function
  /// fails; empty while holds.
  std::string function;
  AdkReport report;
  SetFunction sigma;                  // ground: node labels, indexed by seed mask
  std::vector<SetFunction> per_node;  // activation probability per node
};

/// Tabulates sigma and every per-node activation probability over all 2^n
/// seed sets with the exact oracle, then checks signs at order k; reports
/// the first violation (sigma first, then nodes in id order).
GlobalCheck global_adk_check(const GTInstance& inst, int k,
                             long long budget = k_default_budget);

enum class InstanceVerdict { pass, violation, budget_skipped, gen_failed };

struct CampaignItem {
  int index = 0;
  std::uint64_t stream_seed = 0;
  InstanceVerdict verdict = InstanceVerdict::pass;
  std::string detail;
};

struct Counterexample {
  int index = 0;
  std::uint64_t stream_seed = 0;
  GTInstance instance;
  std::string function;  // "sigma" or node label
  AdkWitness witness;
  /// True when an independent recomputation under a permuted node order
  /// reproduces the violation.
  bool confirmed = false;
  std::string recheck_detail;
};

struct ConjectureReport {
  GenConfig config;
  int instances = 0;
  bool search_mode = false;
  int passes = 0;
  int violations = 0;
  int budget_skipped = 0;
  int gen_failed = 0;
  std::vector<CampaignItem> items;
  std::optional<Counterexample> counterexample;

  bool all_pass() const { return passes == instances; }
};

/// Generates `instances` instances from per-index derived streams and runs
/// the global check on each.  Search mode (general graphs, finite k with
/// 3 <= k <= n-1) re-verifies any violation on a permuted copy of the
/// instance before reporting it; regression mode treats violations as plain
/// failures.  threads = 0 picks ADK_THREADS or the hardware count.
ConjectureReport run_campaign(const GenConfig& cfg, int instances,
                              long long budget = k_default_budget, int threads = 0);

struct IdentityCheck {
  bool ok = true;
  long long checks = 0;
  std::vector<std::string> failures;
};

/// Exact identity suite on the reachability side of a triggering instance:
/// for every node u, with P_u(S) the activation probability and R_u the
/// ancestor-set distribution,
///   (a) P_u(S) = sum of R_u over sets meeting S, R_u >= 0, total mass 1;
///   (b) R_u equals the signed subset sum of h_u(T) := 1 - P_u(V \ T), and
///       every difference of h_u is nonnegative;
///   (c) difference(P_u, S, P) = (-1)^(|S|+1) difference(h_u, S, V\(P u S))
///       for all disjoint pairs.
IdentityCheck verify_identities(const TriggeringInstance& inst,
                                long long budget = k_default_budget);

/// Convenience overload: converts first (throws not_ad_infinity_error when
/// the thresholds admit no triggering representation).
IdentityCheck verify_identities(const GTInstance& inst,
                                long long budget = k_default_budget);

/// Relabels nodes by a permutation: node v becomes perm[v].  Used for the
/// independent counterexample recheck.
GTInstance permute_instance(const GTInstance& inst, const std::vector<int>& perm);

}  // namespace adk
