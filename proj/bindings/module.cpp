#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "adk/cli.hpp"
#include "adk/conjecture.hpp"
#include "adk/diffusion.hpp"
#include "adk/errors.hpp"
#include "adk/io.hpp"
#include "adk/rational.hpp"
#include "adk/setfn.hpp"
#include "adk/transforms.hpp"

namespace py = pybind11;

namespace {

using namespace adk;

int parse_k(const py::object& k) {
  if (py::isinstance<py::str>(k)) {
    const auto text = k.cast<std::string>();
    if (text == "inf" || text == "unbounded") return k_unbounded;
    throw std::invalid_argument("order must be an int or 'inf'");
  }
  const int value = k.cast<int>();
  if (value < 1) throw std::invalid_argument("order must be at least 1");
  return value;
}

py::dict report_to_dict(const AdkReport& rep, const GroundSet& ground) {
  py::dict d;
  d["holds"] = rep.holds;
  d["order_checked"] = rep.order_checked;
  if (rep.witness) {
    py::dict w;
    w["A"] = ground.mask_to_string(rep.witness->a_mask);
    w["S"] = ground.mask_to_string(rep.witness->s_mask);
    w["value"] = rational_to_string(rep.witness->value);
    d["witness"] = w;
  } else {
    d["witness"] = py::none();
  }
  return d;
}

SetFunction make_setfn(const std::vector<std::string>& labels,
                       const std::vector<std::string>& values) {
  GroundSet ground(labels);
  std::vector<Rational> table;
  table.reserve(values.size());
  for (const std::string& v : values) table.push_back(rational_from_string(v));
  return SetFunction(std::move(ground), std::move(table));
}

PointVector make_point(const std::vector<std::string>& coords) {
  PointVector x;
  for (const std::string& c : coords) x.coords.push_back(rational_from_string(c));
  return x;
}

struct PyInstance {
  Instance inner;

  const std::vector<std::string>& labels() const { return instance_labels(inner); }

  std::uint32_t seed_mask(const std::vector<std::string>& seeds) const {
    std::uint32_t mask = 0;
    const std::vector<std::string>& all = labels();
    for (const std::string& s : seeds) {
      bool found = false;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i] == s) {
          mask |= 1u << i;
          found = true;
          break;
        }
      }
      if (!found) throw std::invalid_argument("unknown node label '" + s + "'");
    }
    return mask;
  }

  GTInstance as_gt() const {
    if (const auto* gt = std::get_if<GTInstance>(&inner)) return *gt;
    return triggering_to_gt(std::get<TriggeringInstance>(inner));
  }
};

py::dict spread_to_dict(const SpreadResult& sp,
                        const std::vector<std::string>& labels) {
  py::dict d;
  d["sigma"] = rational_to_string(sp.sigma);
  py::dict per;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    per[py::str(labels[v])] = rational_to_string(sp.per_node[v]);
  }
  d["per_node"] = per;
  return d;
}

}  // namespace

PYBIND11_MODULE(adk_core, m) {
  m.doc() = "Exact rational oracles for order-k sign profiles of set functions "
            "and threshold/triggering cascades";

  py::register_exception<budget_error>(m, "BudgetError");
  py::register_exception<not_ad_infinity_error>(m, "NotADInfinityError");
  py::register_exception<not_a_dag_error>(m, "NotADAGError");
  py::register_exception<parse_error>(m, "ParseError");

  m.attr("UNBOUNDED") = "inf";

  py::class_<SetFunction>(m, "SetFunction")
      .def(py::init(&make_setfn), py::arg("labels"), py::arg("values"),
           "Dense table of 2^n rational strings indexed by subset bitmask")
      .def("__len__", [](const SetFunction& f) { return f.table_size(); })
      .def_property_readonly(
          "labels", [](const SetFunction& f) { return f.ground().labels(); })
      .def("value",
           [](const SetFunction& f, std::uint32_t mask) {
             return rational_to_string(f.at(mask));
           })
      .def("is_monotone", &SetFunction::is_monotone)
      .def("difference",
           [](const SetFunction& f, std::uint32_t a_mask, std::uint32_t s_mask) {
             return rational_to_string(difference(f, a_mask, s_mask));
           },
           py::arg("a_mask"), py::arg("s_mask"))
      .def("is_adk",
           [](const SetFunction& f, const py::object& k) {
             return report_to_dict(is_adk(f, parse_k(k)), f.ground());
           },
           py::arg("k"))
      .def("mobius", [](const SetFunction& f) { return mobius(f); })
      .def("mobius_inverse", [](const SetFunction& f) { return mobius_inverse(f); })
      .def("multilinear",
           [](const SetFunction& f, const std::vector<std::string>& coords) {
             return rational_to_string(multilinear_eval(f, make_point(coords)));
           },
           py::arg("coords"))
      .def("multilinear_partial",
           [](const SetFunction& f, std::uint32_t a_mask,
              const std::vector<std::string>& coords) {
             return rational_to_string(
                 multilinear_partial(f, a_mask, make_point(coords)));
           },
           py::arg("a_mask"), py::arg("coords"));

  m.def("compound",
        [](const SetFunction& f, const std::vector<SetFunction>& inner) {
          return compound(f, inner);
        },
        py::arg("outer"), py::arg("inner"));

  py::class_<PyInstance>(m, "Instance")
      .def_property_readonly(
          "model",
          [](const PyInstance& self) {
            return std::holds_alternative<GTInstance>(self.inner)
                       ? std::string("gt")
                       : std::string("triggering");
          })
      .def_property_readonly(
          "labels", [](const PyInstance& self) { return self.labels(); })
      .def("serialize",
           [](const PyInstance& self) { return serialize_instance(self.inner); })
      .def("exact_spread",
           [](const PyInstance& self, const std::vector<std::string>& seeds,
              long long budget) {
             const std::uint32_t mask = self.seed_mask(seeds);
             SpreadResult sp;
             if (const auto* trig = std::get_if<TriggeringInstance>(&self.inner)) {
               sp = live_edge_spread(*trig, mask, budget);
             } else {
               sp = exact_spread(std::get<GTInstance>(self.inner), mask, budget);
             }
             return spread_to_dict(sp, self.labels());
           },
           py::arg("seeds"), py::arg("budget") = k_default_budget)
      .def("mc_spread",
           [](const PyInstance& self, const std::vector<std::string>& seeds,
              long long trials, std::uint64_t seed) {
             const MonteCarloSpread est =
                 monte_carlo_spread(self.as_gt(), self.seed_mask(seeds), trials, seed);
             py::dict d;
             d["mean"] = est.mean;
             d["std_error"] = est.std_error;
             d["trials"] = est.trials;
             return d;
           },
           py::arg("seeds"), py::arg("trials") = 100000, py::arg("seed") = 1)
      .def("check_adk",
           [](const PyInstance& self, const std::string& node, const py::object& k) {
             const GTInstance gt = self.as_gt();
             const int v = gt.node_by_label(node);
             if (v < 0) throw std::invalid_argument("unknown node label '" + node + "'");
             return report_to_dict(is_adk(gt.thresholds[v], parse_k(k)),
                                   gt.thresholds[v].ground());
           },
           py::arg("node"), py::arg("k"))
      .def("global_adk",
           [](const PyInstance& self, const py::object& k, long long budget) {
             const GlobalCheck chk = global_adk_check(self.as_gt(), parse_k(k), budget);
             py::dict d;
             d["holds"] = chk.holds;
             d["function"] = chk.function;
             if (!chk.holds) {
               d["report"] = report_to_dict(chk.report, chk.sigma.ground());
             }
             return d;
           },
           py::arg("k"), py::arg("budget") = k_default_budget)
      .def("convert",
           [](const PyInstance& self, const std::string& to) {
             if (to == "triggering") {
               if (std::holds_alternative<TriggeringInstance>(self.inner)) return self;
               return PyInstance{gt_to_triggering(std::get<GTInstance>(self.inner))};
             }
             if (to == "gt") {
               if (std::holds_alternative<GTInstance>(self.inner)) return self;
               return PyInstance{
                   triggering_to_gt(std::get<TriggeringInstance>(self.inner))};
             }
             throw std::invalid_argument("target model must be 'gt' or 'triggering'");
           },
           py::arg("to"))
      .def("verify_identities",
           [](const PyInstance& self, long long budget) {
             IdentityCheck chk;
             if (const auto* trig = std::get_if<TriggeringInstance>(&self.inner)) {
               chk = verify_identities(*trig, budget);
             } else {
               chk = verify_identities(std::get<GTInstance>(self.inner), budget);
             }
             py::dict d;
             d["ok"] = chk.ok;
             d["checks"] = chk.checks;
             d["failures"] = chk.failures;
             return d;
           },
           py::arg("budget") = k_default_budget);

  m.def("parse_instance",
        [](const std::string& text) { return PyInstance{parse_instance(text)}; },
        py::arg("text"));
  m.def("load_instance",
        [](const std::string& path) { return PyInstance{load_instance(path)}; },
        py::arg("path"));

  m.def("run_campaign",
        [](const std::string& graph, int n, const py::object& k, int instances,
           std::uint64_t seed, const std::string& density, const std::string& family,
           bool strict, long long budget, int threads) {
          GenConfig cfg;
          if (graph == "layered") {
            cfg.graph_kind = GraphKind::layered;
          } else if (graph == "dag") {
            cfg.graph_kind = GraphKind::dag;
          } else if (graph == "general") {
            cfg.graph_kind = GraphKind::general;
          } else {
            throw std::invalid_argument("graph must be layered, dag or general");
          }
          cfg.n = n;
          cfg.k = parse_k(k);
          cfg.rng_seed = seed;
          cfg.edge_density = rational_from_string(density);
          if (family == "triggering") {
            cfg.family = FunctionFamily::triggering_derived;
          } else if (family == "rejection") {
            cfg.family = FunctionFamily::rejection;
          } else if (family == "coverage") {
            cfg.family = FunctionFamily::coverage;
          } else if (family == "mixed") {
            cfg.family = FunctionFamily::mixed;
          } else {
            throw std::invalid_argument("unknown function family");
          }
          cfg.strict = strict;
          const ConjectureReport rep = run_campaign(cfg, instances, budget, threads);
          py::dict d;
          d["instances"] = rep.instances;
          d["search_mode"] = rep.search_mode;
          d["passes"] = rep.passes;
          d["violations"] = rep.violations;
          d["budget_skipped"] = rep.budget_skipped;
          d["gen_failed"] = rep.gen_failed;
          d["all_pass"] = rep.all_pass();
          if (rep.counterexample) {
            const Counterexample& cex = *rep.counterexample;
            const GroundSet nodes(cex.instance.labels);
            py::dict c;
            c["index"] = cex.index;
            c["function"] = cex.function;
            c["A"] = nodes.mask_to_string(cex.witness.a_mask);
            c["S"] = nodes.mask_to_string(cex.witness.s_mask);
            c["value"] = rational_to_string(cex.witness.value);
            c["confirmed"] = cex.confirmed;
            c["recheck"] = cex.recheck_detail;
            c["instance"] = serialize_instance(cex.instance);
            d["counterexample"] = c;
          } else {
            d["counterexample"] = py::none();
          }
          return d;
        },
        py::arg("graph") = "general", py::arg("n") = 5, py::arg("k") = 2,
        py::arg("instances") = 50, py::arg("seed") = 1,
        py::arg("density") = "1/2", py::arg("family") = "mixed",
        py::arg("strict") = false, py::arg("budget") = k_default_budget,
        py::arg("threads") = 0);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"),
        "Run one CLI command in-process; returns (exit_code, stdout, stderr)");
}
