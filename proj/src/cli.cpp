#include "ncic/cli.hpp"

#include <cstdlib>
#include <optional>

#include <CLI11.hpp>

#include "ncic/butterfly.hpp"
#include "ncic/json_io.hpp"
#include "ncic/oracle.hpp"
#include "ncic/transform.hpp"

namespace ncic {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;
constexpr int kInvalid = 4;

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

struct CommonArgs {
  std::string instance_path;
  std::string index_instance_path;
  std::string code_path;
  std::string map_path;
  std::string out_path;
  std::string sigma = "auto";
  std::string eps = "0";
  std::string delta = "0";
  std::uint32_t n = 1;
  unsigned jobs = 1;
  std::uint64_t max_tables = SearchBudget{}.max_tables;
  std::uint64_t max_realizations = kDefaultMaxRealizations;
  bool no_prune = false;
  std::string demo_name;
};

EnumerationOptions enumeration_options(const CommonArgs& args, std::string& diagnostics) {
  EnumerationOptions opts;
  opts.max_realizations = args.max_realizations;
  opts.jobs = args.jobs;
  if (const char* env = std::getenv("NCIC_MAX_REALIZATIONS")) {
    try {
      std::size_t used = 0;
      unsigned long long cap = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      opts.max_realizations = cap;
    } catch (const std::exception&) {
      diagnostics += "warning: ignoring unparsable NCIC_MAX_REALIZATIONS\n";
    }
  }
  return opts;
}

Json validation_to_json(const ValidationReport& report) {
  auto violations_to_json = [](const std::vector<Violation>& items) {
    Json arr = Json::array();
    for (const auto& v : items) {
      arr.push_back({{"rule", v.rule}, {"message", v.message}, {"element", v.element}});
    }
    return arr;
  };
  return Json{{"ok", report.ok},
              {"violations", violations_to_json(report.violations)},
              {"warnings", violations_to_json(report.warnings)}};
}

CommandOutcome cmd_validate(const CommonArgs& args) {
  ValidationReport report;
  if (!args.instance_path.empty()) {
    report = validate_network(network_instance_from_json(read_json_file(args.instance_path)));
  } else {
    report = validate_index(index_instance_from_json(read_json_file(args.index_instance_path)));
  }
  return {report.ok ? kOk : kFailed, dump(validation_to_json(report)), ""};
}

CommandOutcome cmd_reduce(const CommonArgs& args) {
  NetworkInstance inst = network_instance_from_json(read_json_file(args.instance_path));
  Reduction red = reduce_instance(inst);
  Json instance_doc = to_json(red.instance);
  Json map_doc = to_json(red.map);
  if (!args.out_path.empty()) write_text_file(args.out_path, dump(instance_doc));
  if (!args.map_path.empty()) write_text_file(args.map_path, dump(map_doc));
  return {kOk, dump(Json{{"ok", true}, {"instance", instance_doc}, {"map", map_doc}}), ""};
}

CommandOutcome cmd_nc2ic(const CommonArgs& args) {
  NetworkInstance inst = network_instance_from_json(read_json_file(args.instance_path));
  NetworkCode code = network_code_from_json(read_json_file(args.code_path), inst);
  Reduction red = reduce_instance(inst);
  IndexCode hat_code = network_to_index_code(inst, red.map, code);
  Json code_doc = to_json(hat_code);
  if (!args.out_path.empty()) write_text_file(args.out_path, dump(code_doc));
  if (!args.map_path.empty()) write_text_file(args.map_path, dump(to_json(red.map)));
  return {kOk, dump(Json{{"ok", true}, {"code", code_doc}}), ""};
}

CommandOutcome cmd_ic2nc(const CommonArgs& args) {
  CommandOutcome outcome;
  NetworkInstance inst = network_instance_from_json(read_json_file(args.instance_path));
  Reduction red = reduce_instance(inst);
  IndexCode code = index_code_from_json(read_json_file(args.code_path), red.instance);
  EnumerationOptions opts = enumeration_options(args, outcome.diagnostics);

  Json payload{{"ok", true}};
  std::uint64_t sigma = 0;
  if (args.sigma == "auto") {
    GoodSetTable table = good_sets(red.instance, code, red.map, opts);
    SigmaSelection selection = select_sigma(table, red.instance);
    sigma = selection.sigma;
    payload["coverage"] = selection.coverage_fraction.str();
  } else {
    std::size_t used = 0;
    sigma = std::stoull(args.sigma, &used);
    if (used != args.sigma.size()) {
      throw CLI::ValidationError("ncic", "--sigma takes 'auto' or a nonnegative integer");
    }
  }
  NetworkCode network = index_to_network_code(inst, red.instance, red.map, code, sigma);
  Json code_doc = to_json(network);
  payload["sigma"] = sigma;
  payload["code"] = code_doc;
  if (!args.out_path.empty()) write_text_file(args.out_path, dump(code_doc));

  outcome.exit_code = kOk;
  outcome.output = dump(payload);
  return outcome;
}

CommandOutcome cmd_verify(const CommonArgs& args) {
  CommandOutcome outcome;
  EnumerationOptions opts = enumeration_options(args, outcome.diagnostics);
  Rational eps = Rational::parse(args.eps);

  Rational success;
  if (!args.instance_path.empty()) {
    NetworkInstance inst = network_instance_from_json(read_json_file(args.instance_path));
    NetworkCode code = network_code_from_json(read_json_file(args.code_path), inst);
    success = network_success_probability(inst, code, opts);
  } else {
    IndexInstance inst = index_instance_from_json(read_json_file(args.index_instance_path));
    IndexCode code = index_code_from_json(read_json_file(args.code_path), inst);
    success = index_success_probability(inst, code, opts);
  }
  bool feasible = success >= Rational(1) - eps;
  outcome.exit_code = feasible ? kOk : kFailed;
  outcome.output = dump(Json{{"ok", feasible},
                             {"feasible", feasible},
                             {"success", success.str()},
                             {"eps", eps.str()}});
  return outcome;
}

CommandOutcome cmd_cover(const CommonArgs& args) {
  CommandOutcome outcome;
  NetworkInstance inst = network_instance_from_json(read_json_file(args.instance_path));
  Reduction red = reduce_instance(inst);
  IndexCode code = index_code_from_json(read_json_file(args.code_path), red.instance);
  EnumerationOptions opts = enumeration_options(args, outcome.diagnostics);
  Rational delta = Rational::parse(args.delta);

  GoodSetTable table = good_sets(red.instance, code, red.map, opts);
  CoverSet cover = find_cover(table, red.instance, delta);

  Json sigmas = Json::array();
  for (std::uint64_t sigma : cover.sigmas) sigmas.push_back(sigma);
  Rational coverage(static_cast<std::int64_t>(cover.assignment.size()),
                    static_cast<std::int64_t>(table.source_cardinality));
  std::uint32_t overhead =
      cover.sigmas.size() <= 1
          ? 0
          : std::bit_width(static_cast<std::uint64_t>(cover.sigmas.size() - 1));
  outcome.exit_code = kOk;
  outcome.output = dump(Json{{"ok", true},
                             {"cover_size", cover.sigmas.size()},
                             {"overhead_bits", overhead},
                             {"coverage", coverage.str()},
                             {"eligible", cover.eligible_count},
                             {"sigmas", sigmas}});
  return outcome;
}

CommandOutcome cmd_transfer_report(const CommonArgs& args) {
  CommandOutcome outcome;
  NetworkInstance inst = network_instance_from_json(read_json_file(args.instance_path));
  Reduction red = reduce_instance(inst);
  IndexCode code = index_code_from_json(read_json_file(args.code_path), red.instance);
  EnumerationOptions opts = enumeration_options(args, outcome.diagnostics);

  TransferReport report = transfer_report(inst, red.instance, red.map, code, opts);
  outcome.exit_code = kOk;
  outcome.output = dump(Json{{"ok", true},
                             {"sigma", report.sigma},
                             {"coverage", report.coverage.str()},
                             {"network_success", report.network_success.str()},
                             {"cover_size", report.cover_size},
                             {"overhead_bits", report.overhead_bits}});
  return outcome;
}

CommandOutcome cmd_search_nc(const CommonArgs& args) {
  NetworkInstance inst = network_instance_from_json(read_json_file(args.instance_path));
  SearchBudget budget{args.max_tables, args.max_realizations};
  auto code = search_network_code(inst, args.n, Rational::parse(args.eps), budget,
                                  !args.no_prune);
  Json payload{{"ok", code.has_value()}, {"feasible", code.has_value()}};
  payload["witness"] = code ? to_json(*code) : Json();
  if (code && !args.out_path.empty()) write_text_file(args.out_path, dump(to_json(*code)));
  return {code ? kOk : kFailed, dump(payload), ""};
}

CommandOutcome cmd_search_ic(const CommonArgs& args) {
  IndexInstance inst = index_instance_from_json(read_json_file(args.index_instance_path));
  SearchBudget budget{args.max_tables, args.max_realizations};
  auto code = search_index_code(inst, args.n, Rational::parse(args.eps), budget);
  Json payload{{"ok", code.has_value()}, {"feasible", code.has_value()}};
  payload["witness"] = code ? to_json(*code) : Json();
  if (code && !args.out_path.empty()) write_text_file(args.out_path, dump(to_json(*code)));
  return {code ? kOk : kFailed, dump(payload), ""};
}

CommandOutcome cmd_min_broadcast(const CommonArgs& args) {
  IndexInstance inst = index_instance_from_json(read_json_file(args.index_instance_path));
  SearchBudget budget{args.max_tables, args.max_realizations};
  BroadcastSearchResult result = min_broadcast_bits(inst, args.n, budget);
  Json payload{{"ok", true},
               {"min_broadcast_bits", result.width_bits},
               {"witness", to_json(result.code)}};
  if (!args.out_path.empty()) write_text_file(args.out_path, dump(to_json(result.code)));
  return {kOk, dump(payload), ""};
}

/// The worked example, end to end: xor code on the butterfly, reduction,
/// both code conversions, and exact verification of every step.
CommandOutcome cmd_demo(const CommonArgs& args) {
  CommandOutcome outcome;
  if (args.demo_name != "butterfly") {
    return {kUsage, dump(Json{{"ok", false}, {"error", "unknown demo"}}),
            "the only bundled demo is 'butterfly'\n"};
  }
  EnumerationOptions opts = enumeration_options(args, outcome.diagnostics);

  NetworkInstance inst = butterfly_network();
  NetworkCode code = butterfly_xor_code();
  Reduction red = reduce_instance(inst);

  std::vector<std::string> failures;
  auto expect = [&](bool condition, const std::string& label) {
    if (!condition) failures.push_back(label);
  };

  expect(validate_network(inst).ok, "network validates");
  expect(red.instance.sources.size() == 9, "reduction has 9 sources");
  expect(red.instance.terminals.size() == 10, "reduction has 10 terminals");
  expect(red.map.c_hat_b == Rational(7), "broadcast rate is 7");

  Rational network_success = network_success_probability(inst, code, opts);
  expect(network_success == Rational(1), "xor code has success 1");

  IndexCode hat_code = network_to_index_code(inst, red.map, code);
  Rational index_success = index_success_probability(red.instance, hat_code, opts);
  expect(index_success == Rational(1), "derived index code has success 1");

  // The seven chunks of the broadcast word, spelled out: each chunk is the
  // edge variable xor'd with what the xor code carries on that edge.
  {
    std::vector<MessageSpace> spaces(9, MessageSpace{1});
    TruthTable expected = TruthTable::tabulate(
        spaces, MessageSpace{7}, [](std::span<const std::uint64_t> v) {
          std::uint64_t x1 = v[0], x2 = v[1];
          std::uint64_t chunks[7] = {v[2] ^ x1,      v[3] ^ x1,      v[4] ^ x2,
                                     v[5] ^ x2,      v[6] ^ x1 ^ x2, v[7] ^ x1 ^ x2,
                                     v[8] ^ x1 ^ x2};
          std::uint64_t word = 0;
          for (std::uint64_t chunk : chunks) word = (word << 1) | chunk;
          return word;
        });
    expect(hat_code.encoder == expected, "broadcast chunks match the worked example");
  }

  NetworkCode recovered = index_to_network_code(inst, red.instance, red.map, hat_code, 0);
  Rational recovered_success = network_success_probability(inst, recovered, opts);
  expect(recovered_success == Rational(1), "recovered network code has success 1");
  expect(recovered == code, "sigma 0 recovers the xor code table for table");

  Json payload{{"ok", failures.empty()},
               {"network_success", network_success.str()},
               {"index_success", index_success.str()},
               {"recovered_success", recovered_success.str()},
               {"c_hat_b", red.map.c_hat_b.str()},
               {"failed_checks", failures}};
  outcome.exit_code = failures.empty() ? kOk : kFailed;
  outcome.output = dump(payload);
  return outcome;
}

}  // namespace

CommandOutcome run_cli(const std::vector<std::string>& args) {
  CLI::App app{"network coding / index coding equivalence toolkit"};
  app.require_subcommand(1);

  CommonArgs common;

  auto add_common = [&](CLI::App* cmd, bool instance, bool index_instance, bool code) {
    if (instance) cmd->add_option("--instance", common.instance_path, "network instance JSON");
    if (index_instance) {
      cmd->add_option("--index-instance", common.index_instance_path, "index instance JSON");
    }
    if (code) cmd->add_option("--code", common.code_path, "code JSON");
    cmd->add_option("--jobs", common.jobs, "worker count for enumerations")
        ->check(CLI::PositiveNumber);
    cmd->add_option("-o,--out", common.out_path, "write the main artifact here");
    return cmd;
  };

  CLI::App* validate = add_common(app.add_subcommand("validate", "check instance invariants"),
                                  true, true, false);
  CLI::App* reduce = add_common(
      app.add_subcommand("reduce", "build the equivalent index instance"), true, false, false);
  reduce->add_option("--map", common.map_path, "write the sidecar reduction map here");
  CLI::App* nc2ic = add_common(
      app.add_subcommand("nc2ic", "turn a network code into an index code"), true, false, true);
  nc2ic->add_option("--map", common.map_path, "write the sidecar reduction map here");
  CLI::App* ic2nc = add_common(
      app.add_subcommand("ic2nc", "turn an index code into a network code"), true, false, true);
  ic2nc->add_option("--sigma", common.sigma, "broadcast value to pin, or 'auto'");
  CLI::App* verify = add_common(
      app.add_subcommand("verify", "exact feasibility check"), true, true, true);
  verify->add_option("--eps", common.eps, "error tolerance p/q");
  CLI::App* cover = add_common(
      app.add_subcommand("cover", "greedy broadcast-value cover"), true, false, true);
  cover->add_option("--delta", common.delta, "good-set size slack p/q");
  add_common(app.add_subcommand("transfer-report", "full index-to-network transfer pipeline"),
             true, false, true);
  CLI::App* search_nc = add_common(
      app.add_subcommand("search-nc", "exhaustive network code search"), true, false, false);
  CLI::App* search_ic = add_common(
      app.add_subcommand("search-ic", "exhaustive index code search"), false, true, false);
  CLI::App* min_broadcast =
      add_common(app.add_subcommand("min-broadcast", "smallest zero-error broadcast width"),
                 false, true, false);
  for (CLI::App* cmd : {search_nc, search_ic, min_broadcast}) {
    cmd->add_option("--n", common.n, "block length")->check(CLI::PositiveNumber);
    cmd->add_option("--max-tables", common.max_tables, "candidate table cap");
    cmd->add_option("--max-realizations", common.max_realizations, "realization cap");
  }
  for (CLI::App* cmd : {search_nc, search_ic}) {
    cmd->add_option("--eps", common.eps, "error tolerance p/q");
  }
  search_nc->add_flag("--no-prune", common.no_prune, "disable search-space pruning");
  CLI::App* demo = app.add_subcommand("demo", "run a bundled worked example");
  demo->add_option("name", common.demo_name, "demo name")->required();
  demo->add_option("--jobs", common.jobs, "worker count for enumerations")
      ->check(CLI::PositiveNumber);

  std::vector<const char*> argv{"ncic"};
  for (const auto& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    for (const CLI::App* sub : app.get_subcommands()) {
      if (sub->parsed()) return {kOk, sub->help(), ""};
    }
    return {kOk, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return {kUsage, dump(Json{{"ok", false}, {"error", e.what()}}),
            std::string("usage error: ") + e.what() + "\n"};
  }

  auto need = [&](bool ok, const char* message) {
    if (!ok) throw CLI::ValidationError("ncic", message);
  };

  try {
    if (app.got_subcommand(validate)) {
      need(common.instance_path.empty() != common.index_instance_path.empty(),
           "pass exactly one of --instance / --index-instance");
      return cmd_validate(common);
    }
    if (app.got_subcommand(reduce)) {
      need(!common.instance_path.empty(), "--instance is required");
      return cmd_reduce(common);
    }
    if (app.got_subcommand(nc2ic)) {
      need(!common.instance_path.empty() && !common.code_path.empty(),
           "--instance and --code are required");
      return cmd_nc2ic(common);
    }
    if (app.got_subcommand(ic2nc)) {
      need(!common.instance_path.empty() && !common.code_path.empty(),
           "--instance and --code are required");
      return cmd_ic2nc(common);
    }
    if (app.got_subcommand(verify)) {
      need(common.instance_path.empty() != common.index_instance_path.empty(),
           "pass exactly one of --instance / --index-instance");
      need(!common.code_path.empty(), "--code is required");
      return cmd_verify(common);
    }
    if (app.got_subcommand(cover)) {
      need(!common.instance_path.empty() && !common.code_path.empty(),
           "--instance and --code are required");
      return cmd_cover(common);
    }
    if (app.got_subcommand("transfer-report")) {
      need(!common.instance_path.empty() && !common.code_path.empty(),
           "--instance and --code are required");
      return cmd_transfer_report(common);
    }
    if (app.got_subcommand(search_nc)) {
      need(!common.instance_path.empty(), "--instance is required");
      return cmd_search_nc(common);
    }
    if (app.got_subcommand(search_ic)) {
      need(!common.index_instance_path.empty(), "--index-instance is required");
      return cmd_search_ic(common);
    }
    if (app.got_subcommand(min_broadcast)) {
      need(!common.index_instance_path.empty(), "--index-instance is required");
      return cmd_min_broadcast(common);
    }
    if (app.got_subcommand(demo)) {
      return cmd_demo(common);
    }
    return {kUsage, dump(Json{{"ok", false}, {"error", "no subcommand"}}), ""};
  } catch (const CLI::ParseError& e) {
    return {kUsage, dump(Json{{"ok", false}, {"error", e.what()}}),
            std::string("usage error: ") + e.what() + "\n"};
  } catch (const BudgetExceededError& e) {
    return {kBudget, dump(Json{{"ok", false}, {"error", e.what()}}),
            std::string("budget exceeded: ") + e.what() + "\n"};
  } catch (const ParseError& e) {
    return {kInvalid, dump(Json{{"ok", false}, {"error", e.what()}}),
            std::string("invalid input: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kInvalid, dump(Json{{"ok", false}, {"error", e.what()}}),
            std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace ncic
