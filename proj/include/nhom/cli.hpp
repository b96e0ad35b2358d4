#ifndef NHOM_CLI_HPP
#define NHOM_CLI_HPP

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nhom/io.hpp"

namespace nhom::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kInputError = 2 };

namespace detail {

using io::json;

struct Loaded {
  std::string bytes;
  NHomAlgebra alg;
};

inline Loaded load(const std::string& path) {
  std::string bytes;
  if (path == "-") {
    bytes.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    bytes = io::read_file(path);
  }
  NHomAlgebra alg = io::parse_algebra_text(bytes, path == "-" ? "<stdin>" : path);
  return {std::move(bytes), std::move(alg)};
}

inline void emit(const std::string& doc, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << doc;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw io::InputError("cannot write '" + out_path + "'");
  f << doc;
}

// Parity flag: "0", "1" or "both".
inline std::vector<int> parities(const std::string& flag) {
  if (flag == "0") return {0};
  if (flag == "1") return {1};
  if (flag == "both") return {0, 1};
  throw io::InputError("--parity: expected 0, 1 or both, got '" + flag + "'");
}

}  // namespace detail

/// Runs one CLI invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact generalized-derivation solver for multiplicative n-Hom Lie superalgebras", "nhom"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kToolVersion));

  std::string file, out_path, kind_name, parity_flag = "both";
  std::size_t kmax = 2;
  std::uint64_t seed = CheckOptions{}.seed;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", file, "algebra JSON file, or - for stdin")->required();
    sub->add_option("--out", out_path, "write the report here instead of stdout");
  };
  auto* validate_cmd = app.add_subcommand("validate", "check the axioms and print a validation report");
  auto* center_cmd = app.add_subcommand("center", "compute the center Z(N) per parity");
  auto* solve_cmd = app.add_subcommand("solve", "solve one kind of derivation space for k = 0..kmax");
  auto* props_cmd = app.add_subcommand("props", "machine-check the structural propositions");
  auto* extend_cmd = app.add_subcommand("extend", "emit the t-extension algebra file");
  auto* decompose_cmd = app.add_subcommand("decompose", "check the extension embedding and Der decomposition");
  for (auto* sub : {validate_cmd, center_cmd, solve_cmd, props_cmd, extend_cmd, decompose_cmd}) add_common(sub);

  solve_cmd->add_option("--kind", kind_name, "Omega, Der, ZDer, C, QC, QDer or GDer")->required();
  for (auto* sub : {solve_cmd, props_cmd, decompose_cmd})
    sub->add_option("--kmax", kmax, "highest alpha power level")->capture_default_str();
  solve_cmd->add_option("--parity", parity_flag, "0, 1 or both")->capture_default_str();
  for (auto* sub : {props_cmd, decompose_cmd})
    sub->add_option("--seed", seed, "seed for randomized sampling")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << io::kToolVersion << "\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  using io::json;
  try {
    if (validate_cmd->parsed()) {
      const auto [bytes, alg] = detail::load(file);
      const auto rep = validate(alg);
      detail::emit(io::report_document("validate", bytes, io::validation_json(rep)), out_path, out);
      return rep.ok() ? kPass : kCheckFailed;
    }
    if (center_cmd->parsed()) {
      const auto [bytes, alg] = detail::load(file);
      detail::emit(io::report_document("center", bytes, io::graded_subspace_json(center(alg))), out_path, out);
      return kPass;
    }
    if (solve_cmd->parsed()) {
      Kind kind;
      try {
        kind = parse_kind(kind_name);
      } catch (const std::invalid_argument& e) {
        throw io::InputError(std::string("--kind: ") + e.what());
      }
      const auto ps = detail::parities(parity_flag);
      const auto [bytes, alg] = detail::load(file);
      SpaceAtlas atlas(alg);
      json spaces = json::array();
      DimTable dims;
      for (std::size_t k = 0; k <= kmax; ++k)
        for (int xi : ps) {
          const auto& s = atlas.get(kind, k, xi);
          dims[{std::string(to_string(kind)), k, xi}] = s.dim();
          spaces.push_back(io::space_json(s));
        }
      json result{{"dims", io::dims_json(dims)}, {"spaces", std::move(spaces)}};
      detail::emit(io::report_document("solve", bytes, std::move(result)), out_path, out);
      return kPass;
    }
    if (props_cmd->parsed()) {
      const auto [bytes, alg] = detail::load(file);
      SpaceAtlas atlas(alg);
      CheckOptions opt;
      opt.kmax = kmax;
      opt.seed = seed;
      bool ok = true;
      json reports = json::array();
      for (const auto& rep : check_all_props(atlas, opt)) {
        ok = ok && rep.passed();
        reports.push_back(io::report_json(rep));
      }
      json result{{"passed", ok}, {"reports", std::move(reports)}, {"dims", io::dims_json(dimension_table(atlas, kmax))}};
      detail::emit(io::report_document("props", bytes, std::move(result)), out_path, out);
      return ok ? kPass : kCheckFailed;
    }
    if (extend_cmd->parsed()) {
      const auto [bytes, alg] = detail::load(file);
      if (!validate(alg).ok()) throw io::InputError(file + ": algebra does not validate; run 'validate' for witnesses");
      detail::emit(io::serialize_algebra(build_check(alg).ext), out_path, out);
      return kPass;
    }
    if (decompose_cmd->parsed()) {
      const auto [bytes, alg] = detail::load(file);
      if (!validate(alg).ok()) throw io::InputError(file + ": algebra does not validate; run 'validate' for witnesses");
      CheckOptions opt;
      opt.kmax = kmax;
      opt.seed = seed;
      const PropReport p42 = check_prop42(alg, opt);
      const PropReport p43 = check_prop43(alg, opt);
      const bool ok = p42.passed() && p43.passed();
      json result{{"passed", ok}, {"reports", json::array({io::report_json(p42), io::report_json(p43)})}};
      detail::emit(io::report_document("decompose", bytes, std::move(result)), out_path, out);
      return ok ? kPass : kCheckFailed;
    }
  } catch (const io::InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace nhom::cli

#endif  // NHOM_CLI_HPP
