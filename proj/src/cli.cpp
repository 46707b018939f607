#include "bmslab/cli.hpp"

#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bmslab/aops.hpp"
#include "bmslab/cache.hpp"
#include "bmslab/faulhaber.hpp"
#include "bmslab/fockspace.hpp"
#include "bmslab/permoracle.hpp"
#include "bmslab/quasipoly.hpp"
#include "bmslab/rat.hpp"
#include "bmslab/spectral.hpp"
#include "bmslab/toporec.hpp"

namespace bmslab::cli {
namespace {

using exactmath::MPoly;
using exactmath::Rat;
using exactmath::UPoly;
using nlohmann::json;

std::vector<long> parse_mu(const std::string& text) {
  std::vector<long> mu;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string part = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad part list: " + text);
    }
    if (used != part.size() || v < 1) {
      throw std::invalid_argument("bad part list: " + text);
    }
    mu.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (mu.empty()) throw std::invalid_argument("empty part list");
  return mu;
}

// Dispatches one count computation; route preconditions are usage errors.
Rat compute_route(const std::string& route, int m, int g,
                  const std::vector<long>& mu, int jobs) {
  if (route == "brute") {
    return permoracle::bms_connected_bruteforce(m, g, mu, jobs);
  }
  if (route == "fock") {
    return fockspace::bms_fock(m, g, mu);
  }
  if (route == "genus0") {
    if (g != 0) throw std::invalid_argument("route genus0 requires --g 0");
    return permoracle::genus0_formula(m, mu);
  }
  if (route == "unstable") {
    if (g != 0) throw std::invalid_argument("route unstable requires --g 0");
    if (mu.size() == 1) return permoracle::unstable_onepoint(m, mu[0]);
    if (mu.size() == 2) {
      return permoracle::unstable_twopoint(m, mu[0], mu[1]);
    }
    throw std::invalid_argument("route unstable needs one or two parts");
  }
  throw std::invalid_argument("unknown route: " + route);
}

std::vector<std::string> applicable_routes(int g, std::size_t n) {
  std::vector<std::string> routes{"brute", "fock"};
  if (g == 0) routes.push_back("genus0");
  if (g == 0 && n <= 2) routes.push_back("unstable");
  return routes;
}

// Computes through the cache when one is configured. With verify set, a
// cache hit is recomputed and compared before being trusted.
std::string cached_value(cache::Cache* store, const std::string& route, int m,
                         int g, const std::vector<long>& mu, int jobs,
                         bool verify) {
  cache::CacheKey key{route, m, g, mu};
  if (store) {
    std::optional<std::string> hit = store->lookup(key);
    if (hit) {
      if (verify) {
        Rat again = compute_route(route, m, g, mu, jobs);
        if (again.str() != *hit) {
          throw std::runtime_error("cache mismatch for route " + route +
                                   ": cached " + *hit + ", recomputed " +
                                   again.str());
        }
      }
      return *hit;
    }
  }
  Rat v = compute_route(route, m, g, mu, jobs);
  std::string s = v.str();
  if (store) store->store(key, s);
  return s;
}

void for_sorted_tuples(int n, long mu_max,
                       const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> cur(static_cast<size_t>(n), 0);
  std::function<void(int, long)> rec = [&](int pos, long hi) {
    if (pos == n) {
      f(cur);
      return;
    }
    for (long v = hi; v >= 1; --v) {
      cur[static_cast<size_t>(pos)] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, mu_max);
}

json mu_json(const std::vector<long>& mu) { return json(mu); }

struct CommonOpts {
  int m = 2;
  int g = 0;
  int n = 1;
  long mu_max = 4;
  int order = 10;
  int jobs = 0;
  int xi_index = -1;
  bool json_out = false;
  bool cross = false;
  bool verify_cache = false;
  std::string mu_str;
  std::string route;
  std::string cache_path;

  std::unique_ptr<cache::Cache> open_cache() const {
    std::string path = cache_path.empty() ? cache::env_cache_path() : cache_path;
    if (path.empty()) return nullptr;
    return std::make_unique<cache::Cache>(std::move(path));
  }
};

int cmd_compute(const CommonOpts& o, std::ostream& out, std::ostream& err) {
  std::vector<long> mu = parse_mu(o.mu_str);
  auto store = o.open_cache();
  if (o.cross) {
    std::vector<std::string> routes = applicable_routes(o.g, mu.size());
    std::map<std::string, std::string> values;
    for (const std::string& r : routes) {
      values[r] =
          cached_value(store.get(), r, o.m, o.g, mu, o.jobs, o.verify_cache);
    }
    const std::string& ref = values.begin()->second;
    bool agree = true;
    for (const auto& [r, v] : values) agree = agree && v == ref;
    if (!agree) {
      err << "route disagreement:";
      for (const auto& [r, v] : values) err << " " << r << "=" << v;
      err << "\n";
      return 1;
    }
    if (o.json_out) {
      json j;
      j["m"] = o.m;
      j["g"] = o.g;
      j["mu"] = mu_json(mu);
      j["routes"] = routes;
      j["value"] = ref;
      out << j.dump() << "\n";
    } else {
      out << ref << "\n";
    }
    return 0;
  }
  std::string v =
      cached_value(store.get(), o.route, o.m, o.g, mu, o.jobs, o.verify_cache);
  if (o.json_out) {
    json j;
    j["m"] = o.m;
    j["g"] = o.g;
    j["mu"] = mu_json(mu);
    j["route"] = o.route;
    j["value"] = v;
    out << j.dump() << "\n";
  } else {
    out << v << "\n";
  }
  return 0;
}

int cmd_table(const CommonOpts& o, std::ostream& out) {
  json rows = json::array();
  std::vector<std::vector<long>> tuples;
  for_sorted_tuples(o.n, o.mu_max,
                    [&](const std::vector<long>& mu) { tuples.push_back(mu); });
  if (o.json_out) {
    for (const auto& mu : tuples) {
      json r;
      r["mu"] = mu_json(mu);
      r["value"] = fockspace::bms_fock(o.m, o.g, mu).str();
      rows.push_back(std::move(r));
    }
    json j;
    j["m"] = o.m;
    j["g"] = o.g;
    j["n"] = o.n;
    j["mu_max"] = o.mu_max;
    j["rows"] = rows;
    out << j.dump() << "\n";
  } else {
    for (int i = 1; i <= o.n; ++i) out << "mu" << i << ",";
    out << "value\n";
    for (const auto& mu : tuples) {
      for (long p : mu) out << p << ",";
      out << fockspace::bms_fock(o.m, o.g, mu).str() << "\n";
    }
  }
  return 0;
}

int cmd_fit(const CommonOpts& o, std::ostream& out) {
  quasipoly::QuasiPolyForm qp = quasipoly::fit_poly(o.m, o.g, o.n);
  out << qp.to_json() << "\n";
  return 0;
}

int cmd_xi(const CommonOpts& o, std::ostream& out) {
  if (o.xi_index >= o.m) {
    throw std::invalid_argument("--i must be below --m");
  }
  std::vector<int> indices;
  if (o.xi_index >= 0) {
    indices.push_back(o.xi_index);
  } else {
    for (int i = 0; i < o.m; ++i) indices.push_back(i);
  }
  if (o.json_out) {
    json series = json::array();
    for (int i : indices) {
      exactmath::XSeries s = spectral::xi_series(o.m, i, o.order);
      json coeffs = json::array();
      for (int k = 0; k <= o.order; ++k) coeffs.push_back(s.coeff(k).str());
      json row;
      row["i"] = i;
      row["coeffs"] = coeffs;
      series.push_back(std::move(row));
    }
    json j;
    j["m"] = o.m;
    j["order"] = o.order;
    j["series"] = series;
    out << j.dump() << "\n";
  } else {
    out << "i,k,value\n";
    for (int i : indices) {
      exactmath::XSeries s = spectral::xi_series(o.m, i, o.order);
      for (int k = 0; k <= o.order; ++k) {
        out << i << "," << k << "," << s.coeff(k).str() << "\n";
      }
    }
  }
  return 0;
}

int cmd_wcheck(const CommonOpts& o, std::ostream& out) {
  quasipoly::QuasiPolyForm qp = quasipoly::fit_poly(o.m, o.g, o.n);
  spectral::WTensor w = spectral::w_assemble(qp);
  bool pass = true;
  json rows = json::array();
  for_sorted_tuples(o.n, o.mu_max, [&](const std::vector<long>& mu) {
    Rat assembled = w.coefficient(mu);
    Rat fock = fockspace::bms_fock(o.m, o.g, mu);
    bool eq = assembled == fock;
    pass = pass && eq;
    json r;
    r["mu"] = mu_json(mu);
    r["assembled"] = assembled.str();
    r["fock"] = fock.str();
    r["equal"] = eq;
    rows.push_back(std::move(r));
  });
  json j;
  j["m"] = o.m;
  j["g"] = o.g;
  j["n"] = o.n;
  j["mu_max"] = o.mu_max;
  j["pass"] = pass;
  j["rows"] = rows;
  out << j.dump() << "\n";
  return pass ? 0 : 1;
}

int cmd_trcheck(const CommonOpts& o, std::ostream& out) {
  if (o.m != 2) {
    throw std::invalid_argument("tr-check supports --m 2 only");
  }
  toporec::CompareReport rep = toporec::expand_and_compare(o.g, o.n, o.mu_max);
  json rows = json::array();
  for (const auto& r : rep.rows) {
    json row;
    row["g"] = o.g;
    row["n"] = o.n;
    row["mu"] = mu_json(r.mu);
    row["tr_value"] = r.tr_value.str();
    row["fock_value"] = r.fock_value.str();
    row["equal"] = r.equal;
    rows.push_back(std::move(row));
  }
  json j;
  j["pass"] = rep.pass;
  j["rows"] = rows;
  out << j.dump() << "\n";
  return rep.pass ? 0 : 1;
}

bool check_window_routes() {
  for (int m : {2, 3}) {
    for (long k = 1; k <= 3; ++k) {
      for (int p = 0; p <= 1; ++p) {
        for (long q = 1; q <= 2; ++q) {
          aops::acheck_E_coeff(m, k, q, p, Rat(1, 2));
        }
        aops::acheck_Id_coeff(m, k, p);
      }
    }
    aops::r_value(1, m, 3, Rat(5, 2), std::vector<long>(m, 1));
  }
  return true;
}

bool check_euler_sum() {
  for (int m = 2; m <= 4; ++m) {
    UPoly expect = UPoly::monomial(2, Rat(m * (m - 1), 2));
    if (!(aops::euler_weighted_difference(1, m) == expect)) return false;
    for (int p : {0, 2, 3}) {
      if (!aops::euler_weighted_difference(p, m).is_zero()) return false;
    }
  }
  return true;
}

bool check_identity_endpoints() {
  for (int m : {2, 3, 4}) {
    for (int p = 0; p <= 2; ++p) {
      Rat expect = p == 0 ? Rat(1) : Rat(0);
      if (aops::rho(p, m).eval(Rat(0)) != expect) return false;
      if (aops::rho(p, m).eval(Rat(1, 1 - m)) != expect) return false;
    }
  }
  return true;
}

bool check_identity_divisibility() {
  for (int m : {2, 3}) {
    for (int p = 0; p <= 2; ++p) {
      aops::s_id_numerator(m, p);
    }
  }
  return true;
}

bool check_residue_relation() {
  for (int m : {2, 3}) {
    for (long r = 1; r <= 2; ++r) {
      for (long q = r; q <= 3; ++q) {
        for (int p = 0; p <= 1; ++p) {
          if (!aops::residue_relation_check(m, r, q, p, Rat(3, 2))) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool check_one_point_series() {
  for (int m : {2, 3, 4}) {
    if (!spectral::omega01_check(m, 8).pass) return false;
  }
  return true;
}

bool check_two_point_series() {
  for (int m : {2, 3, 4}) {
    if (!spectral::omega02_check(m, 8).pass) return false;
  }
  return true;
}

bool check_xi_dual_path() {
  for (int m = 2; m <= 4; ++m) {
    for (int i = 0; i < m; ++i) {
      spectral::xi_series(m, i, 10);
    }
  }
  spectral::xi_from_poly(2, 1, MPoly::variable("k"));
  return true;
}

bool check_chain_reflection() {
  for (int d = 0; d <= 6; ++d) {
    MPoly t = exactmath::T_poly(d);
    MPoly mirrored = t.substitute("k", -MPoly::variable("k"));
    if (!(exactmath::T_tilde_poly(d) == mirrored)) return false;
    if (d >= 1) {
      if (!t.substitute("k", Rat(0)).is_zero()) return false;
      if (t.total_degree() != 2 * d) return false;
    }
  }
  return true;
}

int cmd_identities(std::ostream& out) {
  const std::vector<std::pair<std::string, std::function<bool()>>> groups{
      {"window-operator-route-agreement", check_window_routes},
      {"charge-weighted-difference-sum", check_euler_sum},
      {"identity-part-endpoint-values", check_identity_endpoints},
      {"identity-part-divisibility", check_identity_divisibility},
      {"mirror-residue-relation", check_residue_relation},
      {"one-point-series-inversion", check_one_point_series},
      {"two-point-series-log", check_two_point_series},
      {"xi-dual-path-and-interpolation", check_xi_dual_path},
      {"chain-sum-reflection", check_chain_reflection},
  };
  bool all = true;
  json checks = json::array();
  for (const auto& [name, fn] : groups) {
    bool pass = false;
    try {
      pass = fn();
    } catch (const std::exception&) {
      pass = false;
    }
    all = all && pass;
    json c;
    c["name"] = name;
    c["pass"] = pass;
    checks.push_back(std::move(c));
  }
  json j;
  j["checks"] = checks;
  j["pass"] = all;
  out << j.dump() << "\n";
  return all ? 0 : 1;
}

int cmd_cache_verify(const CommonOpts& o, std::ostream& out) {
  auto store = o.open_cache();
  if (!store) {
    throw std::invalid_argument(
        "no cache configured; set --cache-path or BMSLAB_CACHE");
  }
  json mismatches = json::array();
  std::size_t checked = 0;
  for (const cache::CacheEntry& e : store->entries()) {
    ++checked;
    std::string recomputed;
    try {
      recomputed =
          compute_route(e.key.route, e.key.m, e.key.g, e.key.mu, o.jobs).str();
    } catch (const std::exception& ex) {
      recomputed = std::string("error: ") + ex.what();
    }
    if (recomputed != e.value) {
      json mj;
      mj["route"] = e.key.route;
      mj["m"] = e.key.m;
      mj["g"] = e.key.g;
      mj["mu"] = mu_json(e.key.mu);
      mj["cached"] = e.value;
      mj["recomputed"] = recomputed;
      mismatches.push_back(std::move(mj));
    }
  }
  json j;
  j["checked"] = checked;
  j["mismatches"] = mismatches;
  j["pass"] = mismatches.empty();
  out << j.dump() << "\n";
  return mismatches.empty() ? 0 : 1;
}

int cmd_cache_gc(const CommonOpts& o, std::ostream& out) {
  auto store = o.open_cache();
  if (!store) {
    throw std::invalid_argument(
        "no cache configured; set --cache-path or BMSLAB_CACHE");
  }
  std::size_t dropped = store->gc();
  json j;
  j["dropped"] = dropped;
  j["kept"] = store->size();
  out << j.dump() << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"exact workbench for branched-cover counts"};
  app.require_subcommand(1);
  CommonOpts o;

  auto add_cache_flags = [&](CLI::App* cmd) {
    cmd->add_option("--cache-path", o.cache_path,
                    "JSON-lines cache file (overrides BMSLAB_CACHE)");
    cmd->add_flag("--verify-cache", o.verify_cache,
                  "recompute cache hits and fail on disagreement");
  };

  CLI::App* compute = app.add_subcommand("compute", "one count by one route");
  compute->add_option("--m", o.m, "number of factors")->required();
  compute->add_option("--g", o.g, "genus");
  compute->add_option("--mu", o.mu_str, "comma-separated parts")->required();
  compute->add_option("--route", o.route, "brute|fock|genus0|unstable");
  compute->add_flag("--cross-check", o.cross,
                    "run every applicable route and require agreement");
  compute->add_flag("--json", o.json_out, "emit JSON");
  compute->add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
  add_cache_flags(compute);

  CLI::App* table = app.add_subcommand("table", "counts over a part grid");
  table->add_option("--m", o.m, "number of factors")->required();
  table->add_option("--g", o.g, "genus");
  table->add_option("--n", o.n, "number of parts")->required();
  table->add_option("--mu-max", o.mu_max, "largest part");
  table->add_flag("--json", o.json_out, "emit JSON");

  CLI::App* fit = app.add_subcommand("fit", "fitted count form as JSON");
  fit->add_option("--m", o.m, "number of factors")->required();
  fit->add_option("--g", o.g, "genus");
  fit->add_option("--n", o.n, "number of parts")->required();

  CLI::App* xi = app.add_subcommand("xi", "xi series coefficients");
  xi->add_option("--m", o.m, "number of factors")->required();
  xi->add_option("--i", o.xi_index, "xi index (default: all)");
  xi->add_option("--order", o.order, "series order");
  xi->add_flag("--json", o.json_out, "emit JSON");

  CLI::App* wcheck =
      app.add_subcommand("w-check", "fit, realize on the curve, compare");
  wcheck->add_option("--m", o.m, "number of factors")->required();
  wcheck->add_option("--g", o.g, "genus");
  wcheck->add_option("--n", o.n, "number of parts")->required();
  wcheck->add_option("--mu-max", o.mu_max, "largest part");

  CLI::App* trcheck =
      app.add_subcommand("tr-check", "recursion output vs the fock route");
  trcheck->add_option("--m", o.m, "number of factors (must be 2)");
  trcheck->add_option("--g", o.g, "genus");
  trcheck->add_option("--n", o.n, "number of parts")->required();
  trcheck->add_option("--mu-max", o.mu_max, "largest part");

  CLI::App* identities =
      app.add_subcommand("identities", "run the verification groups");

  CLI::App* cache_cmd = app.add_subcommand("cache", "result cache upkeep");
  cache_cmd->require_subcommand(1);
  CLI::App* cache_verify =
      cache_cmd->add_subcommand("verify", "recompute every cached value");
  cache_verify->add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
  add_cache_flags(cache_verify);
  CLI::App* cache_gc =
      cache_cmd->add_subcommand("gc", "drop superseded cache lines");
  add_cache_flags(cache_gc);

  std::vector<const char*> argv;
  argv.push_back("bmslab");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*compute) {
      if (!o.cross && o.route.empty()) {
        throw std::invalid_argument("compute needs --route or --cross-check");
      }
      return cmd_compute(o, out, err);
    }
    if (*table) return cmd_table(o, out);
    if (*fit) return cmd_fit(o, out);
    if (*xi) return cmd_xi(o, out);
    if (*wcheck) return cmd_wcheck(o, out);
    if (*trcheck) return cmd_trcheck(o, out);
    if (*identities) return cmd_identities(out);
    if (*cache_cmd) {
      if (*cache_verify) return cmd_cache_verify(o, out);
      if (*cache_gc) return cmd_cache_gc(o, out);
    }
    throw std::invalid_argument("no subcommand selected");
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bmslab::cli
