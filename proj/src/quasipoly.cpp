#include "bmslab/quasipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bmslab/fockspace.hpp"
#include "bmslab/linalg.hpp"

namespace bmslab::quasipoly {

namespace {

constexpr long kSumBudget = 32;

std::string var_name(int i) { return "mu" + std::to_string(i + 1); }

void require_stable(int g, int n) {
  if (g < 0 || n < 1) throw std::invalid_argument("quasipoly: need g >= 0 and n >= 1");
  if (g == 0 && n < 3) {
    throw std::invalid_argument(
        "quasipoly: (g, n) with g = 0 and n < 3 has no polynomial form");
  }
}

void require_m(int m) {
  if (m < 2) throw std::invalid_argument("quasipoly: need m >= 2");
}

long tuple_sum(const std::vector<long>& mu) {
  long s = 0;
  for (long v : mu) s += v;
  return s;
}

void require_budget(const std::vector<long>& mu) {
  for (long v : mu) {
    if (v < 1) throw std::invalid_argument("quasipoly: parts must be >= 1");
  }
  if (tuple_sum(mu) > kSumBudget) {
    std::ostringstream os;
    os << "quasipoly: tuple sum " << tuple_sum(mu) << " exceeds the evaluation budget "
       << kSumBudget;
    throw std::runtime_error(os.str());
  }
}

// Sorted weakly decreasing tuples of the given length with entries in
// [lo, hi]; one representative per orbit of the symmetric group.
void decreasing_tuples(int length, long lo, long hi, std::vector<long>& cur,
                       std::vector<std::vector<long>>& out) {
  if (static_cast<int>(cur.size()) == length) {
    out.push_back(cur);
    return;
  }
  long top = cur.empty() ? hi : std::min(hi, cur.back());
  for (long v = top; v >= lo; --v) {
    cur.push_back(v);
    decreasing_tuples(length, lo, hi, cur, out);
    cur.pop_back();
  }
}

// Monomial symmetric polynomial for the exponent partition lambda
// (weakly decreasing, possibly with zeros) in n variables.
MPoly monomial_symmetric(const std::vector<long>& lambda, int n) {
  std::vector<long> perm = lambda;
  std::sort(perm.begin(), perm.end());
  MPoly result;
  do {
    MPoly term = MPoly::constant(Rat(1));
    for (int i = 0; i < n; ++i) {
      for (long e = 0; e < perm[i]; ++e) term = term * MPoly::variable(var_name(i));
    }
    result = result + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

struct FitContext {
  int m;
  int g;
  int n;
  std::map<std::vector<long>, Rat> cache;

  Rat sample(std::vector<long> mu) {
    std::sort(mu.begin(), mu.end(), std::greater<long>());
    auto it = cache.find(mu);
    if (it != cache.end()) return it->second;
    Rat v = normalized_value(m, g, mu);
    cache.emplace(mu, v);
    return v;
  }
};

std::vector<std::vector<long>> held_out_tuples(int n, long base, long degree) {
  std::vector<std::vector<long>> out;
  for (long t = 1; t <= 3; ++t) {
    std::vector<long> mu(static_cast<size_t>(n), base);
    mu[0] = base + degree + t;
    out.push_back(mu);
  }
  return out;
}

}  // namespace

Rat prefactor(int m, long mu_i) {
  require_m(m);
  if (mu_i < 1) throw std::invalid_argument("prefactor: part must be >= 1");
  return exactmath::factorial(static_cast<long>(m) * mu_i - m) /
         (exactmath::factorial(mu_i) *
          exactmath::factorial(static_cast<long>(m) * mu_i - mu_i - 1));
}

std::vector<long> denominator_exponents(int m, int g, int n) {
  require_m(m);
  require_stable(g, n);
  std::vector<long> js;
  long hi = 4L * g - 4 + 2L * n - 1;
  for (long j = m; j <= hi; ++j) {
    if (j % m != 0) js.push_back(j);
  }
  return js;
}

Rat denominator_product(int m, int g, int n, const std::vector<long>& mu) {
  if (static_cast<int>(mu.size()) != n) {
    throw std::invalid_argument("denominator_product: tuple length mismatch");
  }
  Rat prod(1);
  for (long j : denominator_exponents(m, g, n)) {
    for (long v : mu) prod *= Rat(v) - Rat(j, m);
  }
  return prod;
}

Rat normalized_value(int m, int g, const std::vector<long>& mu) {
  require_m(m);
  int n = static_cast<int>(mu.size());
  require_stable(g, n);
  require_budget(mu);
  Rat b = fockspace::bms_fock(m, g, mu);
  Rat pre(1);
  for (long v : mu) pre *= prefactor(m, v);
  return b * denominator_product(m, g, n, mu) / pre;
}

Rat QuasiPolyForm::evaluate(const std::vector<long>& mu) const {
  if (static_cast<int>(mu.size()) != n) {
    throw std::invalid_argument("QuasiPolyForm: tuple length mismatch");
  }
  std::map<std::string, Rat> point;
  for (int i = 0; i < n; ++i) point[var_name(i)] = Rat(mu[static_cast<size_t>(i)]);
  return poly.eval(point);
}

Rat QuasiPolyForm::count_value(const std::vector<long>& mu) const {
  Rat pre(1);
  for (long v : mu) pre *= prefactor(m, v);
  Rat den(1);
  for (long j : denominator_exponents) {
    for (long v : mu) den *= Rat(v) - Rat(j, m);
  }
  return pre * evaluate(mu) / den;
}

std::string QuasiPolyForm::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  j["g"] = g;
  j["n"] = n;
  j["poly"] = nlohmann::json::parse(poly.to_json());
  j["denominator_exponents"] = denominator_exponents;
  j["grid"] = grid;
  j["held_out"] = held_out;
  j["per_variable_degree"] = per_variable_degree;
  return j.dump();
}

QuasiPolyForm QuasiPolyForm::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  QuasiPolyForm form;
  form.m = j.at("m").get<int>();
  form.g = j.at("g").get<int>();
  form.n = j.at("n").get<int>();
  form.poly = MPoly::from_json(j.at("poly").dump());
  form.denominator_exponents = j.at("denominator_exponents").get<std::vector<long>>();
  form.grid = j.at("grid").get<std::vector<std::vector<long>>>();
  form.held_out = j.at("held_out").get<std::vector<std::vector<long>>>();
  form.per_variable_degree = j.at("per_variable_degree").get<long>();
  return form;
}

QuasiPolyForm fit_poly(int m, int g, int n, int degree_cap, long grid_base) {
  require_m(m);
  require_stable(g, n);
  if (grid_base < 1) throw std::invalid_argument("fit_poly: grid base must be >= 1");
  long cap = degree_cap >= 0 ? degree_cap : 6L * (2L * g - 2 + n);
  if (cap < 0) cap = 0;

  FitContext ctx{m, g, n, {}};
  std::string last_failure;

  for (long d = 1; d <= std::max<long>(cap, 1); ++d) {
    // Feasibility of the widest sample under the evaluation budget.
    long worst = std::max(static_cast<long>(n) * (grid_base + d),
                          (grid_base + d + 3) + (n - 1) * grid_base);
    if (worst > kSumBudget) {
      std::ostringstream os;
      os << "fit_poly: degree " << d << " needs tuples of sum " << worst
         << ", beyond the evaluation budget " << kSumBudget;
      if (!last_failure.empty()) os << "; " << last_failure;
      throw std::runtime_error(os.str());
    }

    std::vector<std::vector<long>> lambdas;
    {
      std::vector<long> cur;
      decreasing_tuples(n, 0, d, cur, lambdas);
    }
    std::vector<std::vector<long>> grid;
    {
      std::vector<long> cur;
      decreasing_tuples(n, grid_base, grid_base + d, cur, grid);
    }
    if (lambdas.size() != grid.size()) {
      throw std::logic_error("fit_poly: basis and grid sizes disagree");
    }

    std::vector<MPoly> basis;
    basis.reserve(lambdas.size());
    for (const auto& lam : lambdas) basis.push_back(monomial_symmetric(lam, n));

    size_t dim = grid.size();
    std::vector<std::vector<Rat>> a(dim, std::vector<Rat>(dim));
    std::vector<Rat> rhs(dim);
    for (size_t r = 0; r < dim; ++r) {
      std::map<std::string, Rat> point;
      for (int i = 0; i < n; ++i) point[var_name(i)] = Rat(grid[r][static_cast<size_t>(i)]);
      for (size_t c = 0; c < dim; ++c) a[r][c] = basis[c].eval(point);
      rhs[r] = ctx.sample(grid[r]);
    }
    std::vector<Rat> coef = exactmath::solve_linear(a, rhs);

    MPoly poly;
    for (size_t c = 0; c < dim; ++c) {
      if (coef[c] == Rat(0)) continue;
      poly = poly + MPoly::constant(coef[c]) * basis[c];
    }

    auto held = held_out_tuples(n, grid_base, d);
    bool ok = true;
    for (const auto& mu : held) {
      std::map<std::string, Rat> point;
      for (int i = 0; i < n; ++i) point[var_name(i)] = Rat(mu[static_cast<size_t>(i)]);
      Rat predicted = poly.eval(point);
      Rat actual = ctx.sample(mu);
      if (!(predicted == actual)) {
        std::ostringstream os;
        os << "refutation evidence at degree " << d << ", tuple (";
        for (size_t i = 0; i < mu.size(); ++i) os << (i ? "," : "") << mu[i];
        os << "): fitted " << predicted.str() << " vs exact " << actual.str();
        last_failure = os.str();
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    QuasiPolyForm form;
    form.m = m;
    form.g = g;
    form.n = n;
    form.poly = poly;
    form.denominator_exponents = quasipoly::denominator_exponents(m, g, n);
    form.grid = grid;
    form.held_out = held;
    long deg = 0;
    for (int i = 0; i < n; ++i) deg = std::max<long>(deg, poly.degree(var_name(i)));
    form.per_variable_degree = deg;
    return form;
  }

  std::ostringstream os;
  os << "fit_poly: no polynomial of per-variable degree up to " << std::max<long>(cap, 1)
     << " reproduces the counts";
  if (!last_failure.empty()) os << "; " << last_failure;
  throw std::runtime_error(os.str());
}

}  // namespace bmslab::quasipoly
