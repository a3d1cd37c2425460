// conelag: evaluate Laguerre functions on symmetric cones, print exact tables,
// and run verification campaigns.
//
//   conelag eval   --kind sym-real --rank 2 --nu 5/2 --m 2,0 --x 3,1
//   conelag table  --kind sym-real --rank 2 --what c-constants --max-deg 3
//   conelag verify [--kind ... --rank ...] [--suite lie] [--format json]
//
// Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "conelag/campaign.hpp"
#include "conelag/diffops.hpp"
#include "conelag/integrate.hpp"
#include "conelag/jordan.hpp"
#include "conelag/laguerre.hpp"
#include "conelag/partition.hpp"
#include "conelag/symfun.hpp"

namespace {

using namespace conelag;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string kind;
  int rank = 0;
  int dim = 0;
  std::string nu;
  int max_deg = 4;
  std::uint64_t seed = 1;
  std::string format;
  std::string out;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

AlgebraDescriptor descriptor(const Common& c) {
  if (c.kind.empty()) throw UsageError("--kind is required");
  try {
    const AlgebraKind k = parse_algebra_kind(c.kind);
    if (k == AlgebraKind::SpinFactor) {
      if (c.dim == 0) throw UsageError("spin-factor requires --dim");
      return make_algebra(k, 2, c.dim);
    }
    if (c.rank == 0) throw UsageError("--rank is required");
    return make_algebra(k, c.rank, c.dim == 0 ? std::nullopt : std::optional<int>(c.dim));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<Rational> parse_nus(const std::string& text, const AlgebraDescriptor& desc) {
  std::vector<Rational> out;
  for (const auto& s : split(text, ',')) {
    Rational nu;
    try {
      nu = parse_rational(s);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (!admissible(desc, nu))
      throw UsageError("nu = " + nu.get_str() + " is not admissible (needs nu > " +
                       admissibility_threshold(desc).get_str() + ")");
    out.push_back(nu);
  }
  return out;
}

Rational single_nu(const Common& c, const AlgebraDescriptor& desc) {
  if (c.nu.empty()) return desc.dim_over_rank() + 1;
  const auto nus = parse_nus(c.nu, desc);
  if (nus.size() != 1) throw UsageError("expected a single --nu");
  return nus.front();
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + c.out);
  f << text;
}

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// eval

int cmd_eval(const Common& c, const std::string& m_text, const std::string& x_text) {
  const auto desc = descriptor(c);
  const JordanAlgebra alg(desc);
  const Rational nu = single_nu(c, desc);
  Partition m;
  std::vector<double> xs;
  try {
    m = parse_partition(m_text, desc.rank);
    for (const auto& s : split(x_text, ',')) {
      std::size_t pos = 0;
      xs.push_back(std::stod(s, &pos));
      if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
    }
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot parse --m/--x: ") + e.what());
  }
  Element<double> x;
  if (xs.size() == alg.dim())
    x = xs;
  else if (xs.size() == static_cast<std::size_t>(desc.rank))
    x = alg.from_eigenvalues<double>(xs);
  else
    throw UsageError("--x needs " + std::to_string(desc.rank) + " eigenvalues or " + std::to_string(alg.dim()) +
                     " coordinates");

  const auto table = spherical_table(desc, std::max(m.weight(), 1));
  const auto sp = alg.spectrum(x);
  const double ell = laguerre_fn_eval(alg, *table, nu, m, x);
  const double psi = table->psi(m).evaluate<double>(sp.eigenvalues);
  std::vector<double> minors;
  for (int k = 1; k <= desc.rank; ++k) minors.push_back(alg.minor<double>(x, k));

  const std::string fmt = c.format.empty() ? "text" : c.format;
  std::ostringstream os;
  if (fmt == "json") {
    Json j = {{"schema", 1},
              {"algebra", descriptor_json(desc)},
              {"nu", nu.get_str()},
              {"m", m.str()},
              {"eigenvalues", sp.eigenvalues},
              {"laguerre_function", ell},
              {"spherical", psi},
              {"minors", minors}};
    os << j.dump(2) << '\n';
  } else if (fmt == "csv") {
    os << "quantity,value\n";
    os << "laguerre_function," << number(ell) << '\n';
    os << "spherical," << number(psi) << '\n';
    for (int k = 1; k <= desc.rank; ++k) os << "minor_" << k << ',' << number(minors[k - 1]) << '\n';
  } else {
    os << "algebra            " << desc.label() << '\n';
    os << "nu                 " << nu.get_str() << '\n';
    os << "m                  " << m.str() << '\n';
    os << "eigenvalues       ";
    for (double l : sp.eigenvalues) os << ' ' << number(l);
    os << '\n';
    os << "laguerre_function  " << number(ell) << '\n';
    os << "spherical          " << number(psi) << '\n';
    for (int k = 1; k <= desc.rank; ++k) os << "minor_" << k << "            " << number(minors[k - 1]) << '\n';
  }
  emit(c, os.str());
  return kPass;
}

// table

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

Table binomial_table(const AlgebraDescriptor& desc, int D) {
  const auto table = spherical_table(desc, D);
  Table t{{"m", "n", "binomial"}, {}};
  for (const auto& m : partitions(desc.rank, D))
    for (const auto& [n, b] : table->binomials().at(m)) t.rows.push_back({m.str(), n.str(), b.get_str()});
  return t;
}

Table pochhammer_table(const AlgebraDescriptor& desc, int D, const Rational& nu) {
  Table t{{"nu", "m", "pochhammer"}, {}};
  for (const auto& m : partitions(desc.rank, D)) t.rows.push_back({nu.get_str(), m.str(), pochhammer(desc, nu, m).get_str()});
  return t;
}

Table c_table(const AlgebraDescriptor& desc, int D) {
  Table t{{"m", "j", "c"}, {}};
  for (const auto& m : partitions(desc.rank, D))
    for (int j = 1; j <= desc.rank; ++j) {
      const auto c = c_constant(desc, m, j);
      t.rows.push_back({m.str(), std::to_string(j), c ? c->get_str() : "degenerate"});
    }
  return t;
}

Table norm_table(const AlgebraDescriptor& desc, int D, const Rational& nu) {
  const auto table = spherical_table(desc, 2 * D);
  const std::vector<Rational> dnus = {nu, nu + 1, nu + 2};
  Table t{{"nu", "m", "n", "q", "log2_scale", "d_m"}, {}};
  const auto ms = partitions(desc.rank, D);
  for (const auto& m : ms)
    for (const auto& n : ms) {
      if (n < m) continue;
      const auto ip = inner_product_exact(*table, desc, nu, m, n);
      std::string dm;
      if (m == n) {
        const auto ex = dm_extract(*table, desc, m, dnus);
        dm = ex.consistent ? ex.value.get_str() : "inconsistent";
      }
      t.rows.push_back({nu.get_str(), m.str(), n.str(), ip.coefficient().get_str(), ip.log2_scale().get_str(), dm});
    }
  return t;
}

std::string csv_field(const std::string& s) {
  return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

std::string render(const Table& t, const std::string& fmt, const AlgebraDescriptor& desc, const std::string& what) {
  std::ostringstream os;
  if (fmt == "json") {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
      Json row = Json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) row[t.columns[i]] = r[i];
      rows.push_back(row);
    }
    os << Json{{"schema", 1}, {"algebra", descriptor_json(desc)}, {"table", what}, {"rows", rows}}.dump(2) << '\n';
  } else if (fmt == "text") {
    std::vector<std::size_t> w(t.columns.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = t.columns[i].size();
      for (const auto& r : t.rows) w[i] = std::max(w[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i)
        os << cells[i] << (i + 1 < cells.size() ? std::string(w[i] - cells[i].size() + 2, ' ') : "\n");
    };
    line(t.columns);
    for (const auto& r : t.rows) line(r);
  } else {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
    for (const auto& r : t.rows)
      for (std::size_t i = 0; i < r.size(); ++i) os << csv_field(r[i]) << (i + 1 < r.size() ? "," : "\n");
  }
  return os.str();
}

int cmd_table(const Common& c, const std::string& what) {
  const auto desc = descriptor(c);
  const Rational nu = single_nu(c, desc);
  Table t;
  if (what == "binomials")
    t = binomial_table(desc, c.max_deg);
  else if (what == "pochhammer")
    t = pochhammer_table(desc, c.max_deg, nu);
  else if (what == "c-constants")
    t = c_table(desc, c.max_deg);
  else if (what == "norms")
    t = norm_table(desc, c.max_deg, nu);
  else
    throw UsageError("unknown table: " + what);
  emit(c, render(t, c.format.empty() ? "csv" : c.format, desc, what));
  return kPass;
}

// verify

int cmd_verify(const Common& c, const std::vector<std::string>& suites, const std::string& relations,
               const std::string& profile, const std::string& perturb, std::size_t mc_budget) {
  CampaignConfig cfg;
  if (!c.kind.empty()) cfg.algebras.push_back(descriptor(c));
  if (!c.nu.empty()) {
    if (cfg.algebras.empty()) throw UsageError("--nu requires --kind");
    cfg.nus = parse_nus(c.nu, cfg.algebras.front());
  }
  if (c.max_deg < 0 || c.max_deg > 8) throw UsageError("--max-deg must be in [0, 8]");
  cfg.max_degree = c.max_deg;
  cfg.seed = c.seed;
  cfg.mc_budget = mc_budget;
  if (!suites.empty()) {
    cfg.suites.clear();
    for (const auto& arg : suites)
      for (const auto& s : split(arg, ',')) {
        if (s == "all") {
          cfg.suites.insert(all_suites().begin(), all_suites().end());
          continue;
        }
        if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
          throw UsageError("unknown suite: " + s);
        cfg.suites.insert(s);
      }
  }
  cfg.relations.clear();
  for (const auto& s : split(relations, ',')) {
    if (s != "1" && s != "2" && s != "3") throw UsageError("relations are 1, 2 and 3");
    cfg.relations.insert(std::stoi(s));
  }
  try {
    cfg.profile = parse_profile(profile);
    if (!perturb.empty()) cfg.perturb_c = parse_rational(perturb);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto res = run_campaign(cfg);
  const std::string fmt = c.format.empty() ? "json" : c.format;
  if (fmt == "json")
    emit(c, campaign_json(cfg, res).dump(2) + "\n");
  else if (fmt == "csv")
    emit(c, campaign_csv(res));
  else
    emit(c, campaign_text(res));
  if (!c.out.empty() || fmt != "text")
    std::cerr << (res.pass() ? "PASS" : "FAIL") << ": " << res.total - res.failed << '/' << res.total << " checks\n";
  return res.pass() ? kPass : kFail;
}

void add_common(CLI::App* app, Common& c, bool needs_algebra) {
  auto* kind = app->add_option("--kind", c.kind, "sym-real | herm-complex | spin-factor")
                   ->check(CLI::IsMember({"sym-real", "herm-complex", "spin-factor", "spin"}));
  if (needs_algebra) kind->required();
  app->add_option("--rank", c.rank, "rank r")->check(CLI::Range(1, 8));
  app->add_option("--dim", c.dim, "dimension n (required for spin-factor)")->check(CLI::Range(1, 64));
  app->add_option("--nu", c.nu, "nu as p/q or decimal (verify: comma-separated list)");
  app->add_option("--max-deg", c.max_deg, "largest |m|")->check(CLI::Range(0, 12));
  app->add_option("--seed", c.seed, "seed for random points and Monte Carlo");
  app->add_option("--format", c.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app->add_option("--out", c.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laguerre functions on symmetric cones: evaluation, exact tables and verification"};
  app.require_subcommand(1);
  Common common;

  auto* eval = app.add_subcommand("eval", "evaluate l_m^nu(x), psi_m(x) and the principal minors");
  add_common(eval, common, true);
  std::string m_text, x_text;
  eval->add_option("--m", m_text, "partition, e.g. 2,1")->required();
  eval->add_option("--x", x_text, "eigenvalues (r values) or coordinates (n values)")->required();

  auto* table = app.add_subcommand("table", "emit exact tables");
  add_common(table, common, true);
  std::string what;
  table->add_option("--what", what, "binomials | pochhammer | c-constants | norms")
      ->required()
      ->check(CLI::IsMember({"binomials", "pochhammer", "c-constants", "norms"}));

  auto* verify = app.add_subcommand("verify", "run verification suites (default grid without --kind)");
  add_common(verify, common, false);
  std::vector<std::string> suites;
  std::string relations = "1,2,3", profile = "both", perturb;
  std::size_t mc_budget = 1000000;
  verify->add_option("--suite", suites, "recursions | orthogonality | lie | oracles | all (repeatable)");
  verify->add_option("--relations", relations, "subset of 1,2,3");
  verify->add_option("--profile", profile, "exact | numeric | both")->check(CLI::IsMember({"exact", "numeric", "both"}));
  verify->add_option("--perturb-c", perturb, "add this amount to every c_m(j) (fault injection)");
  verify->add_option("--mc-budget", mc_budget, "Monte-Carlo samples for group averages")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*eval) return cmd_eval(common, m_text, x_text);
    if (*table) return cmd_table(common, what);
    return cmd_verify(common, suites, relations, profile, perturb, mc_budget);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
}
