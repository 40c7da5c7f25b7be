#pragma once

// Command-line front end.  Exit status: 0 success, 1 infeasible input or a
// failed verification, 2 usage error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaindesign/design.hpp"
#include "chaindesign/feasibility.hpp"
#include "chaindesign/search.hpp"
#include "chaindesign/text.hpp"
#include "chaindesign/verify.hpp"

namespace chaindesign::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

struct CommandConfig {
  std::string chain;
  std::int64_t k = 0;
  bool enumerate = false;
  std::int64_t cap = 10'000'000;
  std::size_t orbit_cap = 1'000'000;
  std::uint64_t seed = 1;
  int samples = 32;
  std::string mode = "auto";
  std::string format = "csv";
  std::string output;
  std::string point;
  int s = 3;
  std::int64_t d = 2;
  std::int64_t e_max = 50;
  int drop = 1;
};

namespace detail {

inline int cmd_feasible(const CommandConfig& cfg, std::ostream& out) {
  const auto rep = check_ft(parse_chain(cfg.chain), cfg.k);
  out << describe(rep) << '\n';
  return rep.feasible() ? kOk : kFailed;
}

inline int cmd_search_k(const CommandConfig& cfg, std::ostream& out) {
  const auto reports = search_k(parse_chain(cfg.chain));
  if (reports.empty()) out << "none\n";
  for (const auto& rep : reports) out << "k=" << rep.k << " y=" << join(rep.y->values()) << '\n';
  return kOk;
}

inline int cmd_construct(const CommandConfig& cfg, std::ostream& out) {
  const auto spec = design_spec(parse_chain(cfg.chain), cfg.k);
  if (cfg.output.empty()) {
    export_design(out, spec, cfg.enumerate, BigInt(static_cast<long>(cfg.cap)));
    return kOk;
  }
  std::ofstream file(cfg.output);
  if (!file) throw parse_error("cannot open --output " + cfg.output);
  export_design(file, spec, cfg.enumerate, BigInt(static_cast<long>(cfg.cap)));
  return kOk;
}

inline int cmd_verify(const CommandConfig& cfg, std::ostream& out) {
  VerifyOptions opt;
  if (cfg.mode == "auto") {
    opt.mode = VerifyMode::automatic;
  } else if (cfg.mode == "exhaustive") {
    opt.mode = VerifyMode::exhaustive;
  } else if (cfg.mode == "arithmetic") {
    opt.mode = VerifyMode::arithmetic;
  } else {
    throw parse_error("--mode must be auto, exhaustive or arithmetic");
  }
  opt.enumeration_cap = BigInt(static_cast<long>(cfg.cap));
  opt.orbit_cap = cfg.orbit_cap;
  opt.seed = cfg.seed;
  opt.samples = cfg.samples;
  const auto result = verify_design(parse_chain(cfg.chain), cfg.k, opt);
  const auto& cert = result.certificate;
  out << "2-design " << (cert.passed() ? "pass" : "fail") << " λ=" << to_decimal(result.spec.lambda)
      << " b=" << to_decimal(result.spec.b);
  if (result.flag_orbit) {
    out << " flag-orbit=" << *result.flag_orbit;
  } else {
    out << " mode=" << to_string(cert.mode);
  }
  out << '\n' << cert.to_text();
  return cert.passed() ? kOk : kFailed;
}

inline int cmd_family(const CommandConfig& cfg, std::ostream& out) {
  const auto fam = family_params(cfg.s, cfg.d);
  out << "e=" << join(fam.chain.radices()) << " k=" << fam.k << '\n';
  return kOk;
}

inline int cmd_collapse(const CommandConfig& cfg, std::ostream& out) {
  const auto col = collapse_chain(parse_chain(cfg.chain), cfg.k, cfg.drop);
  out << "e=" << join(col.chain.radices()) << " k=" << col.k << ' ' << describe(col.report) << '\n';
  return col.report.feasible() ? kOk : kFailed;
}

inline int cmd_search_table(const CommandConfig& cfg, std::ostream& out) {
  TableFormat format{};
  if (cfg.format == "csv") {
    format = TableFormat::csv;
  } else if (cfg.format == "text") {
    format = TableFormat::text;
  } else {
    throw parse_error("--format must be csv or text");
  }
  const auto table = emit_table(search(cfg.s, cfg.e_max), cfg.s, format);
  if (cfg.output.empty()) {
    out << table;
    return kOk;
  }
  std::ofstream file(cfg.output);
  if (!file) throw parse_error("cannot open --output " + cfg.output);
  file << table;
  return kOk;
}

inline int cmd_locate(const CommandConfig& cfg, std::ostream& out) {
  const auto chain = parse_chain(cfg.chain);
  const auto r = parse_point(chain, cfg.point);
  const auto p = point_at(chain, r);
  out << format_point(p) << ' ' << format_rank(r) << '\n';
  for (int i = 1; i <= chain.s(); ++i) out << "level " << i << ": " << format_class(class_of(chain, p, i)) << '\n';
  return kOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CommandConfig cfg;
  CLI::App app{"Flag-transitive chain-imprimitive 2-designs", "chaindesign"};
  app.require_subcommand(1);

  auto chain_k = [&](CLI::App* sub) {
    sub->add_option("chain", cfg.chain, "e1,...,es")->required();
    sub->add_option("k", cfg.k, "block size")->required();
  };

  auto* feasible = app.add_subcommand("feasible", "Evaluate FT1/FT2 for one (chain, k)");
  chain_k(feasible);

  auto* search_k_cmd = app.add_subcommand("search-k", "List every feasible k for a chain");
  search_k_cmd->add_option("chain", cfg.chain, "e1,...,es")->required();

  auto* construct = app.add_subcommand("construct", "Export a design");
  chain_k(construct);
  construct->add_flag("--enumerate", cfg.enumerate, "List every block");
  construct->add_option("--cap", cfg.cap, "Largest block count to list")->check(CLI::PositiveNumber);
  construct->add_option("--output", cfg.output, "Write to this file");

  auto* verify = app.add_subcommand("verify", "Verify a design and print a certificate");
  chain_k(verify);
  verify->add_option("--mode", cfg.mode, "auto|exhaustive|arithmetic")
      ->check(CLI::IsMember({"auto", "exhaustive", "arithmetic"}));
  verify->add_option("--cap", cfg.cap, "Enumeration cap")->check(CLI::PositiveNumber);
  verify->add_option("--orbit-cap", cfg.orbit_cap, "Orbit size cap")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "Sampling seed");
  verify->add_option("--samples", cfg.samples, "Samples per sampled check")->check(CLI::PositiveNumber);

  auto* family = app.add_subcommand("family", "Parameters of the explicit family");
  family->add_option("--s", cfg.s, "Chain length")->required();
  family->add_option("--d", cfg.d, "gcd parameter")->required();

  auto* collapse = app.add_subcommand("collapse", "Delete one partition of the chain");
  chain_k(collapse);
  collapse->add_option("--drop", cfg.drop, "Index i of the partition to delete, 1 <= i < s")->required();

  auto* table = app.add_subcommand("search-table", "Exhaustive parameter search");
  table->add_option("--s", cfg.s, "Chain length")->required();
  table->add_option("--max", cfg.e_max, "Largest e_i")->required();
  table->add_option("--format", cfg.format, "csv|text")->check(CLI::IsMember({"csv", "text"}));
  table->add_option("--output", cfg.output, "Write to this file");

  auto* locate = app.add_subcommand("locate", "Show a point's rank and classes");
  locate->add_option("chain", cfg.chain, "e1,...,es")->required();
  locate->add_option("point", cfg.point, "(d1,...,ds) or #r")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*feasible) return detail::cmd_feasible(cfg, out);
    if (*search_k_cmd) return detail::cmd_search_k(cfg, out);
    if (*construct) return detail::cmd_construct(cfg, out);
    if (*verify) return detail::cmd_verify(cfg, out);
    if (*family) return detail::cmd_family(cfg, out);
    if (*collapse) return detail::cmd_collapse(cfg, out);
    if (*table) return detail::cmd_search_table(cfg, out);
    if (*locate) return detail::cmd_locate(cfg, out);
  } catch (const infeasible_error& e) {
    out << "infeasible: " << e.what() << '\n';
    return kFailed;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace chaindesign::cli
