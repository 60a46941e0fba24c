// Copyright 2026 The roughcount Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "roughcount/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "roughcount/constants.hpp"
#include "roughcount/debruijn.hpp"
#include "roughcount/report.hpp"
#include "roughcount/table_io.hpp"
#include "roughcount/verifier.hpp"

namespace roughcount {
namespace {

enum class Format { text, json, csv };

struct Globals {
  Format format = Format::text;
  std::string cache_dir;
  unsigned workers = 1;
  bool no_timing = false;
};

// Thrown for parameter errors discovered after parsing.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::optional<std::filesystem::path> cache_path(const Globals& g) {
  if (!g.cache_dir.empty()) return std::filesystem::path(g.cache_dir);
  if (const char* env = std::getenv("ROUGHCOUNT_CACHE_DIR"); env && *env)
    return std::filesystem::path(env);
  return std::nullopt;
}

const SpecialTables& tables_for(const Globals& g) {
  // Reused across dispatch calls in one process, keyed by the cache dir.
  static std::optional<SpecialTables> tables;
  static std::optional<std::filesystem::path> loaded_from;
  const auto dir = cache_path(g);
  if (!tables || loaded_from != dir) {
    tables.emplace(cached_tables(dir));
    loaded_from = dir;
  }
  return *tables;
}

PrimeTable primes_for(const Globals& g, double limit) {
  if (!(limit <= 4294967295.0)) throw UsageError("values above 2^32 - 1 are out of range");
  return cached_primes(cache_path(g), static_cast<std::uint64_t>(std::max(2.0, std::floor(limit))));
}

// Prints name/value pairs in the chosen format: text "name value" lines,
// one JSON object, or a two-line CSV.
void emit_fields(std::ostream& out, Format f, const std::vector<std::pair<std::string, nlohmann::json>>& fields) {
  if (f == Format::json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : fields) j[k] = v;
    out << j.dump() << '\n';
    return;
  }
  auto text_of = [](const nlohmann::json& v) {
    if (v.is_number_float()) return fmt9(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  if (f == Format::csv) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
    out << '\n';
    for (std::size_t i = 0; i < fields.size(); ++i)
      out << (i ? "," : "")
          << (fields[i].second.is_number_float() ? format_full(fields[i].second.get<double>())
                                                 : text_of(fields[i].second));
    out << '\n';
    return;
  }
  if (fields.size() == 1) {
    out << text_of(fields[0].second) << '\n';
    return;
  }
  for (const auto& [k, v] : fields) out << k << ' ' << text_of(v) << '\n';
}

void emit_single(std::ostream& out, Format f, const std::string& name, double v,
                 std::vector<std::pair<std::string, nlohmann::json>> inputs) {
  if (f == Format::text) {
    out << fmt9(v) << '\n';
    return;
  }
  inputs.emplace_back(name, v);
  emit_fields(out, f, inputs);
}

const char* flag_for(double delta) {
  const double a = std::abs(delta);
  if (a > 5e-5) return "mismatch";
  if (a > 5e-7) return "rounding";
  return "";
}

int run_constants(std::ostream& out, Format f, const std::string& mode_s, std::optional<double> y0) {
  std::vector<std::pair<Mode, double>> columns;
  if (mode_s.empty()) {
    if (y0) throw UsageError("--y0 needs --mode");
    for (const auto& c : printed_table()) columns.emplace_back(c.mode, c.y0);
  } else {
    const Mode m = mode_from_string(mode_s);
    columns.emplace_back(m, y0.value_or(m == Mode::rh ? 2657.0 : 229.0));
  }
  const auto& names = ledger_row_names();
  bool mismatch = false;
  nlohmann::ordered_json jcols = nlohmann::ordered_json::array();
  if (f == Format::csv) out << "mode,y0,row,value,printed,delta,flag\n";
  for (const auto& [mode, y] : columns) {
    const ConstantLedger l = compute_ledger(ApproxContext::make(mode, y));
    const auto rows = ledger_rows(l);
    const PrintedColumn* printed = nullptr;
    for (const auto& c : printed_table())
      if (c.mode == mode && c.y0 == y) printed = &c;
    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    if (f == Format::text)
      out << "column " << to_string(mode) << " y0=" << fmt9(y) << '\n'
          << std::left << std::setw(8) << "row" << std::setw(16) << "value" << std::setw(16)
          << "printed" << std::setw(18) << "delta" << "flag\n";
    for (std::size_t i = 0; i < kLedgerRows; ++i) {
      const std::string name(names[i]);
      std::optional<double> ref, delta;
      const char* flag = "";
      if (printed) {
        ref = printed->rows[i];
        delta = rows[i] - *ref;
        flag = flag_for(*delta);
        mismatch = mismatch || std::string(flag) == "mismatch";
      }
      if (f == Format::text) {
        out << std::left << std::setw(8) << name << std::setw(16) << fmt9(rows[i]) << std::setw(16)
            << (ref ? fmt9(*ref) : "-") << std::setw(18) << (delta ? fmt9(*delta) : "-") << flag
            << '\n';
      } else if (f == Format::csv) {
        out << to_string(mode) << ',' << format_full(y) << ',' << name << ','
            << format_full(rows[i]) << ',' << (ref ? format_full(*ref) : "") << ','
            << (delta ? format_full(*delta) : "") << ',' << flag << '\n';
      } else {
        nlohmann::ordered_json r = {{"row", name}, {"value", rows[i]}};
        r["printed"] = ref ? nlohmann::ordered_json(*ref) : nlohmann::ordered_json(nullptr);
        r["delta"] = delta ? nlohmann::ordered_json(*delta) : nlohmann::ordered_json(nullptr);
        r["flag"] = flag;
        jrows.push_back(r);
      }
    }
    if (f == Format::json)
      jcols.push_back({{"mode", to_string(mode)}, {"y0", y}, {"beta", l.beta}, {"rows", jrows}});
  }
  if (f == Format::json) out << nlohmann::ordered_json{{"columns", jcols}}.dump() << '\n';
  return mismatch ? kExitViolations : kExitOk;
}

void print_report_text(std::ostream& out, const VerificationReport& r) {
  out << "theorem " << r.theorem_id << " (" << r.mode << ")";
  if (!r.label.empty()) out << " [" << r.label << "]";
  out << "\npoints " << r.points_checked << "  cross-checks " << r.cross_checks << "  min margin "
      << fmt9(r.min_margin) << '\n';
  for (const auto& c : r.checks)
    out << "  check " << c.name << ": " << c.points << " points, min margin " << fmt9(c.min_margin)
        << '\n';
  auto line = [&](const char* tag, const PointRecord& p) {
    out << tag << " [" << p.check << "] x=" << fmt9(p.x) << " y=" << fmt9(p.y)
        << " lhs=" << fmt9(p.lhs) << " rhs=" << fmt9(p.rhs) << " margin=" << fmt9(p.margin) << '\n';
  };
  if (r.worst) line("worst", *r.worst);
  out << "violations " << r.violations.size() << '\n';
  for (const auto& v : r.violations) line("violation", v);
  out << "inconclusive " << r.inconclusive.size() << '\n';
  for (const auto& v : r.inconclusive) line("inconclusive", v);
  out << "runtime " << fmt9(r.runtime_seconds) << " s\n";
}

struct VerifyArgs {
  std::string theorem;
  std::string mode = "unconditional";
  std::optional<double> x_cap;
};

int run_verify(std::ostream& out, const Globals& g, const VerifyArgs& a) {
  const TheoremId id = theorem_from_string(a.theorem);
  const Mode mode = mode_from_string(a.mode);
  VerifyOptions opt;
  opt.workers = g.workers;
  auto cap_or = [&](double def) {
    const double c = a.x_cap.value_or(def);
    if (!(c >= 2.0 && c <= 4294967295.0)) throw UsageError("--x-cap must lie in [2, 2^32 - 1]");
    return static_cast<std::uint64_t>(c);
  };
  VerificationReport report;
  switch (id) {
    case TheoremId::main:
    case TheoremId::corollary:
    case TheoremId::sandwich: {
      const std::uint64_t cap = cap_or(1e8);
      const PrimeTable pt = primes_for(g, static_cast<double>(cap));
      const GridSpec grid = GridSpec::default_grid(cap);
      const GridEvaluation ev = evaluate_grid(grid, pt, tables_for(g), opt);
      report = id == TheoremId::main        ? check_main_theorem(ev, mode)
               : id == TheoremId::corollary ? check_corollary(ev, mode)
                                            : check_sandwich(ev);
      break;
    }
    case TheoremId::prop21: {
      const std::uint64_t cap = cap_or(1e9);
      const PrimeTable pt = primes_for(g, static_cast<double>(cap));
      report = verify_prop21_pointwise(GridSpec::prop21_grid(pt, cap), pt, tables_for(g), opt);
      break;
    }
    case TheoremId::lower:
      report = verify_lower_04(cap_or(1e6), opt);
      break;
    case TheoremId::assembly: {
      const PrimeTable pt = primes_for(g, 1e8);
      report = verify_final_assembly(pt, tables_for(g));
      break;
    }
  }
  if (g.no_timing) report.runtime_seconds = 0.0;
  if (g.format == Format::json) {
    out << nlohmann::json(report).dump() << '\n';
  } else if (g.format == Format::csv) {
    write_csv_header(out);
    write_csv(out, report);
  } else {
    print_report_text(out, report);
  }
  return report.ok() ? kExitOk : kExitViolations;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and smooth counts of rough numbers, explicit constants, and inequality checks",
               "roughcount"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::string format_s = "text";
  app.add_option("--format", format_s, "Output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--cache-dir", g.cache_dir, "Table cache directory (default: $ROUGHCOUNT_CACHE_DIR)");
  app.add_option("--workers", g.workers, "Worker threads for verify")->check(CLI::Range(1u, 256u));
  app.add_flag("--no-timing", g.no_timing, "Report runtime as 0 for byte-identical output");

  double x = 0, y = 0, u = 0, z = 0;
  std::string method = "auto";
  auto* phi = app.add_subcommand("phi", "Exact Phi(x, y)");
  phi->add_option("x", x)->required();
  phi->add_option("y", y)->required();
  phi->add_option("--method", method)->check(CLI::IsMember({"auto", "sieve", "legendre"}));

  auto* omega = app.add_subcommand("omega", "Buchstab omega(u)");
  omega->add_option("u", u)->required();
  auto* rho = app.add_subcommand("rho", "Dickman rho(u)");
  rho->add_option("u", u)->required();
  auto* li = app.add_subcommand("li", "Logarithmic integral li(z), z > 1");
  li->add_option("z", z)->required();
  auto* mu = app.add_subcommand("mu", "mu_y(u)");
  mu->add_option("y", y)->required();
  mu->add_option("u", u)->required();
  auto* mt = app.add_subcommand("main-term", "de Bruijn main term with its parts");
  mt->add_option("x", x)->required();
  mt->add_option("y", y)->required();

  std::string mode_s;
  std::optional<double> y0;
  auto* consts = app.add_subcommand("constants", "Constant table, all four columns by default");
  consts->add_option("--mode", mode_s)->check(CLI::IsMember({"unconditional", "rh"}));
  consts->add_option("--y0", y0);

  std::string branch = "combined";
  DeltaOptions dopt;
  auto* delta = app.add_subcommand("delta-bounds", "Lower bounds Delta_3, Delta_4, Delta_inf");
  delta->add_option("--branch", branch)->check(CLI::IsMember({"large", "small", "combined"}));
  delta->add_flag("--small-y-power-term", dopt.small_y_power_term,
                  "Keep log y / (u y^1.5) in the small-y base case");
  delta->add_flag("--recursion-delta3", dopt.recursion_delta3, "Use 9 Delta_3 / k^2 in the recursion");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check an inequality on its grid");
  verify->add_option("--theorem", va.theorem)
      ->required()
      ->check(CLI::IsMember({"main", "corollary", "lower", "sandwich", "prop21", "assembly"}));
  verify->add_option("--mode", va.mode)->check(CLI::IsMember({"unconditional", "rh"}));
  verify->add_option("--x-cap", va.x_cap);

  std::optional<double> by;
  auto* bonf = app.add_subcommand("bonferroni", "Bonferroni bounds a(y), b(y); maximum threshold by default");
  bonf->add_option("--y", by);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  g.format = format_s == "json" ? Format::json : format_s == "csv" ? Format::csv : Format::text;
  const Format f = g.format;
  try {
    if (*phi) {
      if (!(x >= 1.0) || !(y > 1.0)) throw UsageError("phi needs x >= 1 and y > 1");
      const PrimeTable pt = primes_for(g, x);
      const PhiMethod m = method == "sieve"      ? PhiMethod::sieve
                          : method == "legendre" ? PhiMethod::legendre
                                                 : PhiMethod::automatic;
      const std::uint64_t v = phi_exact({x, y}, pt, m);
      if (f == Format::text) out << v << '\n';
      else emit_fields(out, f, {{"x", x}, {"y", y}, {"phi", v}});
    } else if (*omega) {
      emit_single(out, f, "omega", buchstab_omega(u, tables_for(g).omega), {{"u", u}});
    } else if (*rho) {
      emit_single(out, f, "rho", dickman_rho(u, tables_for(g).rho), {{"u", u}});
    } else if (*li) {
      if (!(z > 1.0)) throw UsageError("li needs z > 1");
      emit_single(out, f, "li", log_integral(z), {{"z", z}});
    } else if (*mu) {
      if (!(y >= 2.0) || !(u >= 1.0)) throw UsageError("mu needs y >= 2 and u >= 1");
      emit_single(out, f, "mu", mu_y(y, u, tables_for(g).omega), {{"y", y}, {"u", u}});
    } else if (*mt) {
      if (!(y >= 2.0) || !(x >= y)) throw UsageError("main-term needs x >= y >= 2");
      const PrimeTable pt = primes_for(g, y);
      const MainTermBreakdown b = main_term(x, y, pt, tables_for(g).omega);
      emit_fields(out, f, {{"x", b.x}, {"y", b.y}, {"u", b.u}, {"mu", b.mu}, {"q", b.q},
                           {"lambda", b.lambda}, {"main_term", b.main_term}});
    } else if (*consts) {
      return run_constants(out, f, mode_s, y0);
    } else if (*delta) {
      const DeltaBounds d = delta_lower_bounds(delta_branch_from_string(branch), dopt);
      emit_fields(out, f, {{"branch", to_string(d.branch)}, {"delta3", d.delta3}, {"delta4", d.delta4},
                           {"delta_inf", d.delta_inf}, {"u_at_delta3", d.u_at_delta3},
                           {"y_at_delta3", d.y_at_delta3}, {"monotone_in_y", d.monotone_in_y}});
    } else if (*verify) {
      return run_verify(out, g, va);
    } else if (*bonf) {
      const PrimeTable pt = primes_for(g, 602);
      if (by) {
        const BonferroniBounds bb = bonferroni_bounds(*by, pt);
        emit_fields(out, f, {{"y", *by}, {"a", bb.a}, {"b", bb.b}, {"threshold", bb.threshold}});
      } else {
        const BonferroniMaximum bm = bonferroni_max_threshold(pt);
        emit_fields(out, f, {{"y", bm.y}, {"threshold", bm.threshold}});
      }
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace roughcount
