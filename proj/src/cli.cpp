// Copyright 2026 The Ambiset Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ambiset/cli.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "CLI11.hpp"
#include "ambiset/ambiguity_distance.hpp"
#include "ambiset/convergence_lab.hpp"
#include "ambiset/io.hpp"
#include "ambiset/transport.hpp"

namespace ambiset::cli {

namespace {

using io::Json;

constexpr std::array<std::string_view, 9> kCommands{
    "validate", "classical", "dist",   "dual",          "member",
    "hull-eq",  "converge",  "tail",   "counterexample"};

struct Common {
  std::string input;
  std::string format = "json";
  double tolerance = kLenientTolerance;
  std::uint64_t seed = 42;
};

void add_common(CLI::App* sub, Common& c, bool needs_input) {
  auto* in = sub->add_option("-i,--input", c.input, "Problem file (JSON)");
  if (needs_input) in->required();
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "table", "csv"}))
      ->envname("AMBISET_FORMAT");
  sub->add_option("--tol", c.tolerance, "Validation tolerance")
      ->envname("AMBISET_TOL");
  sub->add_option("--seed", c.seed, "Random seed")->envname("AMBISET_SEED");
}

[[noreturn]] void usage(const std::string& message) {
  fail(ErrorCode::kUsage, message);
}

struct Context {
  Common common;
  CLI::App* used = nullptr;
  std::optional<io::ProblemFile> problem;

  bool given(const char* flag) const {
    const CLI::Option* opt = used->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  }

  const io::ProblemFile& load() {
    if (!problem) {
      const Json j = io::read_json_file(common.input);
      problem = io::parse_problem(j, ValidationMode::kStrict, common.tolerance);
      if (problem->tolerance && !given("--tol")) {
        common.tolerance = *problem->tolerance;
      }
      if (problem->seed && !given("--seed")) {
        common.seed = *problem->seed;
      }
    }
    return *problem;
  }

  double exponent(double flag) {
    if (given("--p")) return flag;
    if (problem && problem->p) return *problem->p;
    return flag;
  }
};

// validate ---------------------------------------------------------------

struct ValidateArgs {
  bool lenient = false;
};

int do_validate(Context& ctx, const ValidateArgs& a, Json& report,
                std::ostream& err) {
  const Json j = io::read_json_file(ctx.common.input);
  const Json& space = j.is_object() && j.contains("space") ? j["space"] : j;
  const auto mode = a.lenient ? ValidationMode::kLenient : ValidationMode::kStrict;
  if (space.is_object() && space.contains("dist")) {
    const auto dist = io::raw_distances(space);
    if (auto v = check_space(dist, mode, ctx.common.tolerance)) {
      report = io::to_json(*v);
      err << error_name(v->code) << ": " << v->message << "\n";
      return kExitValidation;
    }
  }
  try {
    const FiniteMetricSpace s = io::parse_space(space, mode, ctx.common.tolerance);
    report = {{"status", "PASS"},
              {"points", s.size()},
              {"diameter", io::number(s.diameter())}};
    return kExitOk;
  } catch (const Error& e) {
    if (exit_code(e.code()) != kExitValidation) throw;
    report = {{"status", "FAIL"},
              {"error", std::string(error_name(e.code()))},
              {"message", e.what()}};
    err << e.what() << "\n";
    return kExitValidation;
  }
}

// classical --------------------------------------------------------------

struct ClassicalArgs {
  std::string mu = "mu";
  std::string nu = "nu";
  double p = 1.0;
  bool plan = false;
  bool dual = false;
};

Json do_classical(Context& ctx, const ClassicalArgs& a) {
  const auto& prob = ctx.load();
  const double p = ctx.exponent(a.p);
  if (a.dual && p != 1.0) usage("--dual needs p = 1");
  const auto& mu = prob.measure(a.mu);
  const auto& nu = prob.measure(a.nu);
  const WassersteinResult w = wasserstein(mu, nu, p);
  Json report{{"p", io::number(p)}, {"value", io::number(w.value)}};
  if (a.plan) report["plan"] = io::numbers(w.plan.plan);
  if (a.dual) {
    const KrDualResult d = kr_dual(mu, nu);
    report["dual"] = {{"value", io::number(d.value)},
                      {"witness", io::numbers(d.witness.phi.values())}};
  }
  return report;
}

// dist / dual / member / hull-eq ------------------------------------------

struct PairArgs {
  std::string p1 = "P1";
  std::string p2 = "P2";
  double p = 1.0;
  bool raw = false;
  bool dual = false;
};

Json do_dist(Context& ctx, const PairArgs& a) {
  const auto& prob = ctx.load();
  const double p = ctx.exponent(a.p);
  if (a.dual && p != 1.0) usage("--dual needs p = 1");
  AmbiguitySet s1 = prob.set(a.p1);
  AmbiguitySet s2 = prob.set(a.p2);
  if (a.raw) {
    s1 = s1.with_convexify(false);
    s2 = s2.with_convexify(false);
  }
  return io::to_json(generalized_wasserstein(s1, s2, p, a.dual));
}

Json do_dual(Context& ctx, const PairArgs& a) {
  const auto& prob = ctx.load();
  const auto& s1 = prob.set(a.p1);
  const auto& s2 = prob.set(a.p2);
  const LipschitzGap fwd = directed_dual(s1, s2);
  const LipschitzGap bwd = directed_dual(s2, s1);
  return {{"value", io::number(std::max({fwd.value, bwd.value, 0.0}))},
          {"forward", io::to_json(fwd)},
          {"backward", io::to_json(bwd)}};
}

struct MemberArgs {
  std::string mu = "mu";
  std::string set = "P";
};

Json do_member(Context& ctx, const MemberArgs& a) {
  const auto& prob = ctx.load();
  return io::to_json(hull_membership(prob.measure(a.mu), prob.set(a.set)));
}

Json do_hull_eq(Context& ctx, const PairArgs& a) {
  const auto& prob = ctx.load();
  const auto& s1 = prob.set(a.p1);
  const auto& s2 = prob.set(a.p2);
  Json fwd = Json::array();
  Json bwd = Json::array();
  for (const auto& g : s1.generators()) fwd.push_back(io::number(hull_residual(g, s2)));
  for (const auto& g : s2.generators()) bwd.push_back(io::number(hull_residual(g, s1)));
  return {{"equal", hull_equality(s1, s2)},
          {"residual_forward", std::move(fwd)},
          {"residual_backward", std::move(bwd)}};
}

// converge / tail / counterexample -----------------------------------------

struct SequenceArgs {
  std::string family;
  std::size_t n = 50;
  std::size_t grid = 200;
  std::size_t generators = 3;
  double p = 1.0;
  double q = 0.0;
  std::vector<double> k_grid;
  std::size_t omega0 = 0;
  std::string set = "P";
};

SetSequence build_family(const Context& ctx, const SequenceArgs& a) {
  const auto family = parse_family(a.family);
  if (!family) usage("unknown family \"" + a.family + "\"");
  FamilyOptions o;
  o.terms = a.n;
  o.grid = a.grid;
  o.seed = ctx.common.seed;
  o.generators = a.generators;
  return make_family(*family, o);
}

std::vector<double> k_grid_for(const SequenceArgs& a, const FiniteMetricSpace& space,
                               BasePoint omega0) {
  return a.k_grid.empty() ? default_k_grid(space, omega0) : a.k_grid;
}

Json do_converge(Context& ctx, const SequenceArgs& a) {
  const SetSequence seq = build_family(ctx, a);
  const BasePoint omega0 = checked_base_point(*seq.space, a.omega0);
  const double p = a.p;
  MetrizationOptions options;
  options.seed = ctx.common.seed;
  const MetrizationReport r = metrization_report(
      seq, p, k_grid_for(a, *seq.space, omega0), omega0, options);
  Json report{{"family", seq.family}, {"n", a.n}, {"seed", ctx.common.seed}};
  report.update(io::to_json(r));
  if (ctx.given("--q")) {
    Json eq = io::to_json(p_equivalence_check(seq, p, a.q, omega0, options));
    eq["q"] = io::number(a.q);
    report["p_equivalence"] = std::move(eq);
  }
  return report;
}

Json do_tail(Context& ctx, const SequenceArgs& a) {
  std::vector<std::vector<double>> tail;
  std::vector<double> grid;
  double p = a.p;
  if (!a.family.empty()) {
    const SetSequence seq = build_family(ctx, a);
    const BasePoint omega0 = checked_base_point(*seq.space, a.omega0);
    grid = k_grid_for(a, *seq.space, omega0);
    tail = tail_matrix(seq, omega0, p, grid);
  } else if (!ctx.common.input.empty()) {
    const auto& prob = ctx.load();
    const BasePoint omega0 = checked_base_point(*prob.space, a.omega0);
    const AmbiguitySet& set = prob.set(a.set);
    grid = k_grid_for(a, *prob.space, omega0);
    SetSequence single{prob.space, {set}, set, a.set};
    p = ctx.exponent(a.p);
    tail = tail_matrix(single, omega0, p, grid);
  } else {
    usage("tail needs --family or --input");
  }
  return {{"p", io::number(p)},
          {"omega0", a.omega0},
          {"K", io::numbers(grid)},
          {"tail", io::numbers(tail)}};
}

struct CounterexampleArgs {
  double distance = 1.0;
  bool convexify = false;
};

Json do_counterexample(const CounterexampleArgs& a) {
  return io::to_json(dual_gap_counterexample(a.distance, a.convexify));
}

}  // namespace

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNumericalBreakdown:
      return kExitNumerical;
    case ErrorCode::kUnknownCommand:
    case ErrorCode::kFileNotFound:
    case ErrorCode::kUsage:
      return kExitUsage;
    default:
      return kExitValidation;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  if (args.empty()) {
    err << "Usage: ambiset <" ;
    for (std::size_t k = 0; k < kCommands.size(); ++k) {
      err << (k ? "|" : "") << kCommands[k];
    }
    err << "> [options]\n";
    return kExitUsage;
  }
  const std::string& head = args.front();
  if (head.empty() || head[0] != '-') {
    if (std::find(kCommands.begin(), kCommands.end(), head) == kCommands.end()) {
      err << error_name(ErrorCode::kUnknownCommand) << ": " << head << "\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Generalized Wasserstein distances between ambiguity sets",
               "ambiset"};
  app.require_subcommand(1);
  Context ctx;
  std::function<int(Json&)> action;

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check a metric space");
  add_common(validate, ctx.common, true);
  validate->add_flag("--lenient", va.lenient, "Repair small asymmetries");
  validate->callback([&] {
    action = [&](Json& r) { return do_validate(ctx, va, r, err); };
  });

  ClassicalArgs ca;
  auto* classical = app.add_subcommand("classical", "W_p between two measures");
  add_common(classical, ctx.common, true);
  classical->add_option("--mu", ca.mu, "Source measure name");
  classical->add_option("--nu", ca.nu, "Target measure name");
  classical->add_option("--p", ca.p, "Cost exponent");
  classical->add_flag("--plan", ca.plan, "Print the optimal plan");
  classical->add_flag("--dual", ca.dual, "Print the Kantorovich potential");
  classical->callback([&] {
    action = [&](Json& r) { r = do_classical(ctx, ca); return kExitOk; };
  });

  PairArgs pa;
  auto add_pair = [&](CLI::App* sub) {
    add_common(sub, ctx.common, true);
    sub->add_option("--P1", pa.p1, "First set name");
    sub->add_option("--P2", pa.p2, "Second set name");
  };
  auto* dist = app.add_subcommand("dist", "Generalized distance between two sets");
  add_pair(dist);
  dist->add_option("--p", pa.p, "Cost exponent");
  dist->add_flag("--raw", pa.raw, "Treat both sets as raw generator lists");
  dist->add_flag("--dual", pa.dual, "Also compute the Lipschitz dual (p = 1)");
  dist->callback([&] {
    action = [&](Json& r) { r = do_dist(ctx, pa); return kExitOk; };
  });

  auto* dual = app.add_subcommand("dual", "Lipschitz dual distance between two sets");
  add_pair(dual);
  dual->callback([&] {
    action = [&](Json& r) { r = do_dual(ctx, pa); return kExitOk; };
  });

  auto* hull_eq = app.add_subcommand("hull-eq", "Compare two convex hulls");
  add_pair(hull_eq);
  hull_eq->callback([&] {
    action = [&](Json& r) { r = do_hull_eq(ctx, pa); return kExitOk; };
  });

  MemberArgs ma;
  auto* member = app.add_subcommand("member", "Hull membership of a measure");
  add_common(member, ctx.common, true);
  member->add_option("--mu", ma.mu, "Measure name");
  member->add_option("--P", ma.set, "Set name");
  member->callback([&] {
    action = [&](Json& r) { r = do_member(ctx, ma); return kExitOk; };
  });

  SequenceArgs sa;
  auto add_sequence = [&](CLI::App* sub) {
    add_common(sub, ctx.common, false);
    sub->add_option("--n", sa.n, "Number of terms")->check(CLI::PositiveNumber);
    sub->add_option("--grid", sa.grid, "Grid size");
    sub->add_option("--generators", sa.generators, "Generators per set");
    sub->add_option("--p", sa.p, "Cost exponent");
    sub->add_option("--K", sa.k_grid, "Tail thresholds")->delimiter(',');
    sub->add_option("--omega0", sa.omega0, "Base point index");
  };
  auto* converge = app.add_subcommand("converge", "Metrization report for a family");
  add_sequence(converge);
  converge->add_option("--family", sa.family, "Sequence family")->required();
  converge->add_option("--q", sa.q, "Second exponent");
  converge->callback([&] {
    action = [&](Json& r) { r = do_converge(ctx, sa); return kExitOk; };
  });

  auto* tail = app.add_subcommand("tail", "Tail functional matrix");
  add_sequence(tail);
  tail->add_option("--family", sa.family, "Sequence family");
  tail->add_option("--P", sa.set, "Set name (with --input)");
  tail->callback([&] {
    action = [&](Json& r) { r = do_tail(ctx, sa); return kExitOk; };
  });

  CounterexampleArgs xa;
  auto* counter = app.add_subcommand("counterexample", "Non-convex counterexample");
  add_common(counter, ctx.common, false);
  counter->add_option("--distance", xa.distance, "Distance between the points");
  counter->add_flag("--convexify", xa.convexify, "Convexify the base set too");
  counter->callback([&] {
    action = [&](Json& r) { r = do_counterexample(xa); return kExitOk; };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << error_name(ErrorCode::kUsage) << ": " << e.what() << "\n";
    return kExitUsage;
  }
  ctx.used = app.get_subcommands().front();

  Json report;
  int status = kExitOk;
  try {
    status = action(report);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.code());
  } catch (const Json::exception& e) {
    err << error_name(ErrorCode::kSchemaViolation) << ": " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << error_name(ErrorCode::kNumericalBreakdown) << ": " << e.what() << "\n";
    return kExitNumerical;
  }
  const auto format = io::parse_format(ctx.common.format);
  out << io::render(report, format.value_or(io::Format::kJson));
  return status;
}

}  // namespace ambiset::cli
