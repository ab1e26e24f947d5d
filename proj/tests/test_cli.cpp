#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "adk/cli.hpp"
#include "adk/io.hpp"
#include "doctest.h"

using namespace adk;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

const std::string kData = ADK_TEST_DATA;

}  // namespace

TEST_CASE("spread reports exact rationals") {
  const CliResult r = run({"spread", kData + "/two-node.gt", "--seeds", "u",
                           "--exact"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "sigma 3/2\n"));
  CHECK(contains(r.out, "node u 1\n"));
  CHECK(contains(r.out, "node v 1/2\n"));
  CHECK(contains(r.out, "# status ok\n"));
  CHECK(contains(r.out, "# input "));
}

TEST_CASE("spread estimates with fixed seeds are reproducible") {
  const std::vector<std::string> args = {"spread", kData + "/two-node.gt",
                                         "--seeds", "u",     "--mc",
                                         "--trials", "2000",  "--seed", "9"};
  const CliResult a = run(args);
  const CliResult b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "trials 2000\n"));
  CHECK(contains(a.out, "sigma-mean "));
}

TEST_CASE("order checks print witnesses") {
  const CliResult fail = run({"check-adk", kData + "/nonsub.gt", "--node", "v",
                              "--k", "2"});
  CHECK(fail.code == 1);
  CHECK(contains(fail.out, "node v fails A={a,b} S={} value=1/5\n"));
  CHECK(contains(fail.out, "# status violation\n"));

  const CliResult ok = run({"check-adk", kData + "/nonsub.gt", "--node", "v",
                            "--k", "1"});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "node v holds"));

  const CliResult all = run({"check-adk", kData + "/or-gate.gt", "--all", "--k",
                             "inf"});
  CHECK(all.code == 0);
  CHECK(contains(all.out, "node v holds"));
}

TEST_CASE("global checks cover the spread function") {
  const CliResult bad = run({"global-adk", kData + "/nonsub.gt", "--k", "2"});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "result fails function=sigma A={a,b} S={} value=1/5\n"));

  const CliResult good = run({"global-adk", kData + "/two-node.gt", "--k", "inf"});
  CHECK(good.code == 0);
  CHECK(contains(good.out, "result holds\n"));
}

TEST_CASE("conversion emits a parseable instance or a witness") {
  const CliResult conv = run({"convert", kData + "/or-gate.gt", "--to",
                              "triggering"});
  CHECK(conv.code == 0);
  // The whole stdout parses back: comment lines are skipped by the grammar.
  const Instance inst = parse_instance(conv.out);
  const auto& trig = std::get<TriggeringInstance>(inst);
  CHECK(trig.distributions[2].at(0b11) == Rational(1));
  CHECK(contains(conv.out, "{a,b} 1\n"));

  const CliResult back = run({"convert", kData + "/two-node.gt", "--to", "gt"});
  CHECK(back.code == 0);
  CHECK(std::holds_alternative<GTInstance>(parse_instance(back.out)));

  const CliResult refuse = run({"convert", kData + "/nonsub.gt", "--to",
                                "triggering"});
  CHECK(refuse.code == 1);
  CHECK(contains(refuse.out,
                 "not-representable node=v A={a,b} coefficient=-1/5\n"));
  CHECK(contains(refuse.out, "# status violation\n"));
}

TEST_CASE("transforms report the node map and spread identity") {
  const CliResult lift = run({"transform", kData + "/two-node.gt", "--lift"});
  CHECK(lift.code == 0);
  CHECK(contains(lift.out, "# spread-identity ok\n"));
  CHECK(contains(lift.out, "# map "));
  const Instance image = parse_instance(lift.out);
  CHECK(std::holds_alternative<GTInstance>(image));

  const CliResult layer = run({"transform", kData + "/nonsub.gt", "--layerize"});
  CHECK(layer.code == 0);
  CHECK(contains(layer.out, "# spread-identity ok\n"));
}

TEST_CASE("search produces replayable reports") {
  const std::vector<std::string> args = {"search", "--graph", "layered",
                                         "--n", "4", "--k", "2",
                                         "--instances", "3", "--seed", "5"};
  const CliResult a = run(args);
  const CliResult b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "verdict all-pass\n"));
  CHECK(contains(a.out, "summary passes=3"));
  CHECK(contains(a.out, "mode=regression"));
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"check-adk", kData + "/nonsub.gt", "--node", "v"}).code == 2);
  CHECK(run({"spread", kData + "/two-node.gt"}).code == 2);
  const CliResult both = run({"check-adk", kData + "/nonsub.gt", "--node", "v",
                              "--all", "--k", "2"});
  CHECK(both.code == 2);
  const CliResult missing = run({"spread", kData + "/absent.gt", "--seeds", "u"});
  CHECK(missing.code == 2);
  CHECK(contains(missing.out, "# status error\n"));
  CHECK(run({}).code == 2);
}

TEST_CASE("budget refusals are distinct from violations") {
  const CliResult r = run({"spread", kData + "/two-node.gt", "--seeds", "",
                           "--budget", "1", "--exact"});
  CHECK(r.code == 3);
  CHECK(contains(r.out, "# status budget-exceeded\n"));
}

TEST_CASE("help is available") {
  const CliResult top = run({"--help"});
  CHECK(top.code == 0);
  CHECK(contains(top.out, "search"));
  const CliResult sub = run({"spread", "--help"});
  CHECK(sub.code == 0);
  CHECK(contains(sub.out, "--seeds"));
}
