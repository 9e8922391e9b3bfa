#include "growthlab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "growthlab/appendix_gap.hpp"
#include "growthlab/bounds.hpp"
#include "growthlab/coxeter.hpp"
#include "growthlab/group.hpp"
#include "growthlab/group_spec_json.hpp"
#include "growthlab/heat.hpp"
#include "growthlab/nilpotent.hpp"
#include "growthlab/report.hpp"
#include "growthlab/tower.hpp"
#include "growthlab/words.hpp"
#include "json.hpp"

namespace growthlab::cli {

namespace {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  unsigned long C = 100;
  unsigned precision = TowerReal::kDefaultPrecision;
  std::size_t budget = 10'000'000;
  std::string format = "text";
  unsigned long seed = 1;
  std::string group = "builtin:zd:1";
  std::string group_file;
};

// Collected result of one subcommand: a document for json, a table for text
// and csv, and the exit code.
struct Output {
  json doc = json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
  int code = 0;
};

std::string element_string(const GroupElement& e) {
  std::ostringstream s;
  std::visit(
      [&s](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntMatrix>) {
          s << '[';
          for (std::size_t i = 0; i < v.n; ++i) {
            s << (i ? ",[" : "[");
            for (std::size_t j = 0; j < v.n; ++j) s << (j ? "," : "") << v.at(i, j).get_str();
            s << ']';
          }
          s << ']';
        } else if constexpr (std::is_same_v<T, Coords>) {
          s << '(';
          for (std::size_t i = 0; i < v.values.size(); ++i) s << (i ? "," : "") << v.values[i].get_str();
          s << ')';
        } else if constexpr (std::is_same_v<T, Residue>) {
          s << v.value << " mod " << v.order;
        } else {
          s << '(';
          for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << element_string(v[i]);
          s << ')';
        }
      },
      e.data());
  return s.str();
}

bool same_generators(const GroupSpec& a, const GroupSpec& b) {
  return a.kind == b.kind && a.dimension == b.dimension && a.generators == b.generators;
}

struct Degrees {
  unsigned long degree = 0;  // growth degree d
  unsigned long hirsch = 0;
};

// Growth degree and Hirsch length for the groups whose structure is known
// from the spec alone.
std::optional<Degrees> infer_degrees(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::FreeAbelian: return Degrees{spec.rank, spec.rank};
    case GroupSpec::Kind::FiniteCyclic: return Degrees{0, 0};
    case GroupSpec::Kind::DirectProduct: {
      Degrees sum;
      for (const GroupSpec& f : spec.factors) {
        const auto d = infer_degrees(f);
        if (!d) return std::nullopt;
        sum.degree += d->degree;
        sum.hirsch += d->hirsch;
      }
      return sum;
    }
    case GroupSpec::Kind::IntegerMatrixGroup: {
      const std::size_t n = spec.dimension;
      if (n >= 2 && same_generators(spec, GroupSpec::unitriangular(n))) {
        unsigned long d = 0;
        for (std::size_t i = 1; i < n; ++i) d += i * (n - i);
        return Degrees{d, n * (n - 1) / 2};
      }
      if (same_generators(spec, GroupSpec::infinite_dihedral())) return Degrees{1, 1};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

GroupSpec resolve_spec(const RunConfig& cfg) {
  try {
    if (!cfg.group_file.empty()) return load_group_spec_file(cfg.group_file);
    return builtin_spec(cfg.group);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

std::string group_label(const RunConfig& cfg) {
  return cfg.group_file.empty() ? cfg.group : "file:" + cfg.group_file;
}

// Worst status wins: any false result gives 1, otherwise undecided gives 2.
int combine(int a, int b) {
  if (a == 1 || b == 1) return 1;
  return std::max(a, b);
}

json bound_reports_json(const std::vector<BoundReport>& reports) {
  json arr = json::array();
  for (const BoundReport& r : reports) arr.push_back(to_json(r));
  return arr;
}

std::vector<BoundStatus> statuses(const std::vector<BoundReport>& reports) {
  std::vector<BoundStatus> out;
  for (const BoundReport& r : reports) out.push_back(r.status);
  return out;
}

std::string params_string(const Parameters& p) {
  std::string out;
  for (const auto& [k, v] : p) out += (out.empty() ? "" : " ") + k + "=" + v;
  return out;
}

void bound_rows(Output& o, const std::vector<BoundReport>& reports) {
  o.header = {"name", "parameters", "bound", "measured", "status"};
  for (const BoundReport& r : reports) {
    o.rows.push_back({r.name, params_string(r.parameters), r.bound, r.measured.value_or(""),
                      std::string(to_string(r.status))});
  }
}

json strings(const std::vector<mpz_class>& v) {
  json arr = json::array();
  for (const mpz_class& x : v) arr.push_back(x.get_str());
  return arr;
}

// Upper endpoint of an enclosure as a decimal, or in tower notation once
// it no longer fits a float.
std::string upper_decimal(const TowerReal& t) {
  const TowerPoint& p = t.upper();
  if (p.height > 0) return p.to_string(12, Round::Up);
  if (!p.reciprocal) return p.mantissa.to_decimal(12, Round::Up);
  Float v(p.precision());
  mpfr_ui_div(v.get(), 1, p.mantissa.get(), MPFR_RNDU);
  return v.to_decimal(12, Round::Up);
}

// ---------------------------------------------------------------- ball

struct Profiled {
  BallProfile profile;
  bool truncated = false;
};

Profiled profile_within_budget(const GroupModel& g, std::size_t radius, std::size_t budget) {
  try {
    return {ball_profile(g, radius, budget), false};
  } catch (const BudgetExceeded& e) {
    return {e.partial(), true};
  }
}

void note_truncation(Output& o, const Profiled& p) {
  o.doc["budget_exceeded"] = p.truncated;
  if (p.truncated) {
    o.notes.push_back("budget exceeded after radius " + std::to_string(p.profile.radius));
    o.code = combine(o.code, 2);
  }
}

Output cmd_ball(const RunConfig& cfg, std::size_t radius) {
  const GroupModel g = build_group(resolve_spec(cfg));
  const Profiled p = profile_within_budget(g, radius, cfg.budget);
  Output o;
  o.doc["group"] = group_label(cfg);
  o.doc["radius"] = p.profile.radius;
  o.doc["valency"] = g.valency();
  o.doc["exhausted"] = p.profile.exhausted;
  o.doc["cumulative"] = strings(p.profile.cumulative);
  o.doc["spheres"] = strings(p.profile.spheres);
  o.header = {"n", "s_n"};
  for (std::size_t n = 0; n < p.profile.cumulative.size(); ++n) {
    o.rows.push_back({std::to_string(n), p.profile.cumulative[n].get_str()});
  }
  note_truncation(o, p);
  return o;
}

// ---------------------------------------------------------------- verify-growth

struct GrowthOptions {
  std::size_t radius = 8;
  std::optional<unsigned long> degree;
  std::optional<unsigned long> hirsch;
  std::string ranks;
  bool noncyclic = true;
};

Output cmd_verify_growth(const RunConfig& cfg, const GrowthOptions& opt) {
  const GroupSpec spec = resolve_spec(cfg);
  Output o;
  std::optional<Degrees> deg = infer_degrees(spec);
  if (!opt.ranks.empty()) {
    RankVector rv;
    try {
      rv = parse_rank_vector(opt.ranks);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    const ValidationReport v = validate_torsion_free(rv, opt.noncyclic);
    const SandwichCheck s = hirsch_sandwich(rv);
    o.doc["ranks"] = {{"valid", v.valid},
                      {"issues", v.issues},
                      {"degree", s.degree},
                      {"hirsch", s.hirsch},
                      {"sandwich_holds", s.holds}};
    if (!v.valid) {
      for (const std::string& issue : v.issues) o.notes.push_back("rank vector: " + issue);
      o.code = combine(o.code, 1);
    }
    deg = Degrees{s.degree, s.hirsch};
  }
  if (opt.degree) deg = Degrees{*opt.degree, deg ? deg->hirsch : 0};
  if (opt.hirsch) {
    if (!deg) throw InputError("--hirsch needs --degree for this group");
    deg->hirsch = *opt.hirsch;
  }
  if (!deg) throw InputError("growth degree unknown for this group; pass --degree or --ranks");

  const GroupModel g = build_group(spec);
  const Profiled p = profile_within_budget(g, opt.radius, cfg.budget);
  std::vector<BoundReport> reports;
  for (std::size_t n = 1; n < p.profile.cumulative.size(); ++n) {
    const mpz_class& s = p.profile.cumulative[n];
    reports.push_back(check_lower_bound("nilp_lower_bound", {{"d", std::to_string(deg->degree)}, {"n", std::to_string(n)}},
                                        nilp_lower_bound(deg->degree, n), s));
    if (deg->hirsch >= 1) {
      reports.push_back(check_lower_bound(
          "vnilp_lower_bound",
          {{"d", std::to_string(deg->degree)}, {"h", std::to_string(deg->hirsch)}, {"n", std::to_string(n)}},
          vnilp_lower_bound(deg->degree, deg->hirsch, n), s));
    }
  }
  o.doc["group"] = group_label(cfg);
  o.doc["degree"] = deg->degree;
  o.doc["hirsch"] = deg->hirsch;
  o.doc["cumulative"] = strings(p.profile.cumulative);
  o.doc["checks"] = bound_reports_json(reports);
  if (const auto hit = linear_growth_criterion(p.profile)) {
    o.doc["linear_growth"] = {{"n", hit->n}, {"index_bound", hit->index_bound.get_str()}};
    o.notes.push_back("linear growth criterion at n = " + std::to_string(hit->n) + ", index bound " +
                      hit->index_bound.get_str());
  } else {
    o.doc["linear_growth"] = nullptr;
  }
  const FinitenessFlags f = finiteness_flags(p.profile);
  o.doc["finite_at"] = f.finite_at;
  o.doc["small_growth_window"] = f.wvdd_window;
  if (deg->degree >= 1 && p.profile.cumulative.size() >= 2) {
    const mpq_class c = measured_growth_constant(p.profile, deg->degree);
    o.doc["measured_growth_constant"] = rational_string(c);
    o.notes.push_back("min s_n / n^d = " + rational_string(c));
  }
  bound_rows(o, reports);
  o.code = combine(o.code, exit_code_for(statuses(reports)));
  note_truncation(o, p);
  return o;
}

// ---------------------------------------------------------------- coxeter

struct CoxeterOptions {
  std::string family;
  unsigned long rank = 0;
  bool limit = false;
  bool window = false;
  std::size_t terms = 10;
};

std::string factorial_form(const CoxeterDatum& d) {
  return "(" + rational_string(exponent_product(d)) + ")/" + std::to_string(d.rank()) + "!";
}

Output cmd_coxeter(const RunConfig& cfg, const CoxeterOptions& opt) {
  Output o;
  if (opt.rank == 0) throw InputError("--rank must be positive");
  if (opt.window) {
    const MgWindow w = mg_window(opt.rank, cfg.C, cfg.precision);
    const TowerReal lower = w.lower.value();
    o.doc["mg_window"] = {{"d", w.d},
                          {"C", cfg.C},
                          {"lower", lower.to_string()},
                          {"lower_branch", std::string(to_string(w.lower.branch))},
                          {"upper", rational_string(w.upper)},
                          {"upper_source", w.upper_source}};
    o.header = {"d", "lower", "branch", "upper", "source"};
    o.rows.push_back({std::to_string(w.d), lower.to_string(), std::string(to_string(w.lower.branch)),
                      rational_string(w.upper), w.upper_source});
    if (w.lower.branch == EpsilonBranch::Undecided) o.code = 2;
    return o;
  }
  CoxeterDatum datum;
  try {
    datum = coxeter_builtin(opt.family, opt.rank);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  o.doc["family"] = datum.name;
  o.doc["rank"] = datum.rank();
  o.doc["exponents"] = datum.exponents;
  if (opt.limit) {
    const mpq_class c = asymptotic_constant(datum);
    o.doc["asymptotic_constant"] = rational_string(c);
    o.doc["exponent_product"] = rational_string(exponent_product(datum));
    o.doc["factorial_form"] = factorial_form(datum);
    o.header = {"family", "rank", "asymptotic_constant", "factorial_form"};
    o.rows.push_back({datum.name, std::to_string(datum.rank()), rational_string(c), factorial_form(datum)});
    return o;
  }
  const std::vector<mpz_class> series = bott_cumulative_series(datum, opt.terms);
  o.doc["cumulative"] = strings(series);
  o.header = {"n", "s_n"};
  for (std::size_t n = 0; n < series.size(); ++n) o.rows.push_back({std::to_string(n), series[n].get_str()});
  return o;
}

// ---------------------------------------------------------------- constants

struct ConstantsOptions {
  unsigned long d_min = 1;
  unsigned long d_max = 0;  // 0: same as d_min
  std::string appendix;     // "", "min", "first", "second"
  std::optional<unsigned long> loop_erased_delta;
};

GammaBranch parse_branch(const std::string& s) {
  if (s == "min") return GammaBranch::Min;
  if (s == "first") return GammaBranch::FirstBranch;
  if (s == "second") return GammaBranch::SecondBranch;
  throw InputError("branch must be one of min, first, second");
}

Output cmd_constants(const RunConfig& cfg, const ConstantsOptions& opt) {
  Output o;
  const unsigned long d_max = opt.d_max ? opt.d_max : opt.d_min;
  if (opt.d_min == 0 || d_max < opt.d_min) throw InputError("need 1 <= d <= d-max");
  if (cfg.C < 2) throw InputError("--C must be at least 2");
  json eps = json::array();
  o.header = {"d", "C", "first", "second", "branch", "precision"};
  for (unsigned long d = opt.d_min; d <= d_max; ++d) {
    const EpsilonReport r = epsilon_d(d, cfg.C, cfg.precision);
    eps.push_back({{"d", d},
                   {"C", cfg.C},
                   {"first", r.first.to_string()},
                   {"second", r.second.to_string()},
                   {"branch", std::string(to_string(r.branch))},
                   {"precision", r.precision}});
    o.rows.push_back({std::to_string(d), std::to_string(cfg.C), r.first.to_string(), r.second.to_string(),
                      std::string(to_string(r.branch)), std::to_string(r.precision)});
    if (r.branch == EpsilonBranch::Undecided) o.code = combine(o.code, 2);
  }
  o.doc["epsilon_d"] = eps;
  if (opt.loop_erased_delta) {
    const EpsilonReport e5 = epsilon_d(5, cfg.C, cfg.precision);
    const TowerReal v = loop_erased_constant(*opt.loop_erased_delta, e5.value());
    o.doc["loop_erased_constant"] = {{"Delta", *opt.loop_erased_delta}, {"value", v.to_string()}};
    o.notes.push_back("5131 Delta^(5/2) / epsilon_5 = " + v.to_string());
  }
  if (!opt.appendix.empty()) {
    GapParams params;
    params.C = cfg.C;
    params.precision = cfg.precision;
    const auto chain = heat_constant_chain(params, parse_branch(opt.appendix));
    json arr = json::array();
    for (const NamedConstant& c : chain) {
      arr.push_back({{"name", c.name}, {"value", c.to_string()}});
      o.notes.push_back(c.name + " = " + c.to_string());
    }
    o.doc["appendix_constants"] = {{"branch", opt.appendix}, {"constants", arr}};
  }
  return o;
}

// ---------------------------------------------------------------- heat

struct HeatOptions {
  std::size_t steps = 10;
  std::optional<unsigned long> degree;
};

Output cmd_heat(const RunConfig& cfg, const HeatOptions& opt) {
  const GroupSpec spec = resolve_spec(cfg);
  unsigned long d = 0;
  if (opt.degree) {
    d = *opt.degree;
  } else if (const auto inferred = infer_degrees(spec)) {
    d = inferred->degree;
  }
  if (d == 0) throw InputError("heat needs a positive growth degree; pass --degree");
  if (opt.steps == 0) throw InputError("--steps must be positive");
  const GroupModel g = build_group(spec);
  BallProfile profile;
  try {
    profile = ball_profile(g, opt.steps, cfg.budget);
  } catch (const BudgetExceeded& e) {
    throw InputError("budget too small for " + std::to_string(opt.steps) + " steps (completed radius " +
                     std::to_string(e.completed_radius()) + ")");
  }
  const std::vector<mpq_class> series = return_series(g, opt.steps, cfg.budget);
  const mpq_class c = measured_growth_constant(profile, d);
  const std::size_t delta = g.valency();
  const std::vector<BoundReport> reports = check_return_bounds(series, profile, d, delta, c);

  Output o;
  o.doc["group"] = group_label(cfg);
  o.doc["degree"] = d;
  o.doc["valency"] = delta;
  o.doc["growth_constant"] = rational_string(c);
  json rows = json::array();
  o.header = {"t", "p_num", "p_den", "bound"};
  for (std::size_t t = 0; t < series.size(); ++t) {
    std::string bound;
    if (t >= 1) bound = upper_decimal(return_prob_bound(d, delta, t, c, cfg.precision));
    rows.push_back({{"t", t},
                    {"p", rational_string(series[t])},
                    {"bound", bound.empty() ? json(nullptr) : json(bound)}});
    o.rows.push_back({std::to_string(t), series[t].get_num().get_str(), series[t].get_den().get_str(), bound});
  }
  o.doc["return_probabilities"] = rows;
  o.doc["checks"] = bound_reports_json(reports);
  o.code = exit_code_for(statuses(reports));
  for (const BoundReport& r : reports) {
    if (r.status != BoundStatus::Satisfied) {
      o.notes.push_back(r.name + " " + params_string(r.parameters) + ": " + std::string(to_string(r.status)));
    }
  }
  o.notes.push_back(std::to_string(reports.size()) + " checks, growth constant c = " + rational_string(c));
  return o;
}

// ---------------------------------------------------------------- gap

Output cmd_gap(const RunConfig& cfg, const std::string& n) {
  GapParams params;
  params.C = cfg.C;
  params.precision = cfg.precision;
  try {
    params.n = mpz_class(n);
    params.validate();
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  const std::vector<StepReport> steps = certify_chain(params);
  Output o;
  json arr = json::array();
  o.header = {"id", "status", "lhs", "relation", "rhs", "bits", "verdict"};
  for (const StepReport& s : steps) {
    arr.push_back(to_json(s));
    o.rows.push_back({s.id, std::string(to_string(s.status)), s.lhs, s.relation, s.rhs,
                      std::to_string(s.precision), s.counts_toward_verdict ? "counts" : "probe"});
  }
  o.doc["parameters"] = {{"C", params.C},
                         {"r", params.r},
                         {"k", params.k},
                         {"n", params.n.get_str()},
                         {"C0", params.C0},
                         {"precision", params.precision}};
  o.doc["steps"] = arr;
  o.code = exit_code_for(steps);
  return o;
}

// ---------------------------------------------------------------- boundary

struct BoundaryOptions {
  std::size_t radius = 4;
  std::optional<unsigned long> degree;
};

Output cmd_boundary(const RunConfig& cfg, const BoundaryOptions& opt) {
  const GroupSpec spec = resolve_spec(cfg);
  unsigned long d = 0;
  if (opt.degree) {
    d = *opt.degree;
  } else if (const auto inferred = infer_degrees(spec)) {
    d = inferred->degree;
  }
  if (d == 0) throw InputError("boundary needs a positive growth degree; pass --degree");
  const GroupModel g = build_group(spec);
  Ball ball;
  BallProfile profile;
  try {
    ball = enumerate_ball(g, opt.radius, cfg.budget);
    profile = ball_profile(g, opt.radius + 1, cfg.budget);
  } catch (const BudgetExceeded& e) {
    throw InputError("budget too small for radius " + std::to_string(opt.radius));
  }
  if (opt.radius == 0) throw InputError("--radius must be positive");
  const std::size_t boundary = vertex_boundary_size(g, ball.elements);
  const mpz_class a = ball.elements.size();
  const mpq_class c = measured_growth_constant(profile, d);
  const IsoBounds iso = iso_bounds(d, a, c, cfg.precision);

  std::vector<BoundReport> reports;
  const Parameters params = {{"d", std::to_string(d)}, {"|A|", a.get_str()}, {"c", rational_string(c)}};
  reports.push_back(check_lower_bound("boundary_vs_csc", params, iso.csc, boundary));
  {
    BoundReport r;
    r.name = "boundary_vs_power_form";
    r.parameters = params;
    r.bound = iso.power_form.to_string();
    r.measured = std::to_string(boundary);
    const Ordering ord = compare(iso.power_form, TowerReal::from_integer(boundary, cfg.precision));
    r.status = status_le(ord);
    reports.push_back(r);
  }
  Output o;
  o.doc["group"] = group_label(cfg);
  o.doc["radius"] = opt.radius;
  o.doc["set_size"] = a.get_str();
  o.doc["vertex_boundary"] = boundary;
  o.doc["growth_constant"] = rational_string(c);
  o.doc["checks"] = bound_reports_json(reports);
  bound_rows(o, reports);
  o.code = exit_code_for(statuses(reports));
  return o;
}

// ---------------------------------------------------------------- words

struct WordsOptions {
  unsigned weight = 0;
  std::string word;
  bool multilinear = false;
  std::size_t nil_class = 2;
  std::size_t trials = 100;
};

Output cmd_words(const RunConfig& cfg, const WordsOptions& opt, bool group_given) {
  Output o;
  if (opt.weight == 0 && opt.word.empty() && !opt.multilinear) {
    throw InputError("words needs --weight, --word or --multilinear");
  }
  std::vector<BoundStatus> checks;
  if (opt.weight > 0) {
    if (opt.weight > 24) throw InputError("--weight above 24 builds words of more than 2^24 letters");
    const Word w = simple_commutator_word(opt.weight);
    const mpz_class lam = lambda(opt.weight);
    const mpz_class rec = simple_commutator_length(opt.weight);
    const bool agree = lam == rec && rec == mpz_class(w.size());
    checks.push_back(agree ? BoundStatus::Satisfied : BoundStatus::Violated);
    o.doc["commutator"] = {{"weight", opt.weight},
                           {"word", to_string(w)},
                           {"length", w.size()},
                           {"lambda", lam.get_str()},
                           {"recursion_length", rec.get_str()},
                           {"reduced_length", free_reduce(w).size()}};
    o.header = {"weight", "length", "lambda", "reduced_length"};
    o.rows.push_back({std::to_string(opt.weight), std::to_string(w.size()), lam.get_str(),
                      std::to_string(free_reduce(w).size())});
    o.notes.push_back(to_string(w));
  }
  if (!opt.word.empty()) {
    Word w;
    try {
      w = parse_word(opt.word);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    json j = {{"word", to_string(w)}, {"reduced", to_string(free_reduce(w))}};
    o.notes.push_back("reduced: " + to_string(free_reduce(w)));
    if (group_given) {
      const GroupModel g = build_group(resolve_spec(cfg));
      try {
        const GroupElement e = evaluate_word(g, w, g.supplied());
        j["value"] = element_string(e);
        j["is_identity"] = g.is_identity(e);
        o.notes.push_back("value: " + element_string(e));
      } catch (const IndexOutOfRange& e) {
        throw InputError(e.what());
      }
    }
    o.doc["word"] = j;
  }
  if (opt.multilinear) {
    const GroupModel g = build_group(resolve_spec(cfg));
    if (opt.nil_class < 1) throw InputError("--class must be positive");
    std::vector<GroupElement> x;
    for (std::size_t i = 0; i < opt.nil_class; ++i) x.push_back(g.supplied()[i % g.supplied().size()]);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long> dist(-5, 5);
    std::size_t passed = 0;
    json failures = json::array();
    for (std::size_t t = 0; t < opt.trials; ++t) {
      std::vector<long> ex(opt.nil_class);
      for (long& e : ex) e = dist(rng);
      if (multilinearity_check(g, opt.nil_class, x, ex)) {
        ++passed;
      } else {
        failures.push_back(ex);
      }
    }
    checks.push_back(passed == opt.trials ? BoundStatus::Satisfied : BoundStatus::Violated);
    o.doc["multilinearity"] = {{"class", opt.nil_class},
                               {"trials", opt.trials},
                               {"seed", cfg.seed},
                               {"passed", passed},
                               {"failures", failures}};
    o.notes.push_back("multilinearity: " + std::to_string(passed) + "/" + std::to_string(opt.trials) +
                      " trials hold");
  }
  o.code = exit_code_for(checks);
  return o;
}

// ---------------------------------------------------------------- output

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void emit(const Output& o, const std::string& command, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json doc = o.doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    doc["exit_code"] = o.code;
    if (!o.notes.empty()) doc["notes"] = o.notes;
    out << doc.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    if (!o.header.empty()) {
      for (std::size_t i = 0; i < o.header.size(); ++i) out << (i ? "," : "") << csv_field(o.header[i]);
      out << "\n";
    }
    for (const auto& row : o.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << "\n";
    }
    return;
  }
  std::vector<std::size_t> width(o.header.size(), 0);
  for (std::size_t i = 0; i < o.header.size(); ++i) width[i] = o.header[i].size();
  for (const auto& row : o.rows) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += cells[i];
      if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    out << s << "\n";
  };
  if (!o.header.empty()) line(o.header);
  for (const auto& row : o.rows) line(row);
  for (const std::string& n : o.notes) out << n << "\n";
}

unsigned parse_precision(const std::string& text) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || pos == 0 || v < 2 || v > TowerReal::kMaxPrecision) {
    throw InputError("precision must be an integer in [2, 4096], got '" + text + "'");
  }
  return static_cast<unsigned>(v);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ensure_wide_exponent_range();
  CLI::App app{"Growth bounds, Coxeter growth series, heat kernels and certified constants"};
  app.require_subcommand(1);
  RunConfig cfg;
  unsigned precision_flag = TowerReal::kDefaultPrecision;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "builtin:zd:<d>, builtin:heisenberg, builtin:ut:<n>, builtin:cyclic:<k>, builtin:dinf");
    sub->add_option("--group-file", cfg.group_file, "JSON group spec");
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--precision", precision_flag, "working precision in bits")->check(CLI::Range(2u, TowerReal::kMaxPrecision));
    sub->add_option("--budget", cfg.budget, "maximum stored group elements")->check(CLI::PositiveNumber);
    sub->add_option("--C", cfg.C, "constant C in epsilon_d");
    sub->add_option("--seed", cfg.seed);
  };

  std::size_t ball_radius = 8;
  auto* ball = app.add_subcommand("ball", "ball sizes s_n; csv columns n,s_n");
  add_common(ball);
  ball->add_option("--radius", ball_radius);

  GrowthOptions growth;
  auto* verify = app.add_subcommand("verify-growth", "check measured growth against the lower bounds");
  add_common(verify);
  verify->add_option("--radius", growth.radius);
  verify->add_option("--degree", growth.degree);
  verify->add_option("--hirsch", growth.hirsch);
  verify->add_option("--ranks", growth.ranks, "torsion-free ranks r(1),...,r(c)");
  bool cyclic = false;
  verify->add_flag("--cyclic", cyclic, "treat the group as infinite cyclic in the rank validation");

  CoxeterOptions cox;
  auto* coxeter = app.add_subcommand("coxeter", "affine Coxeter growth series; csv columns n,s_n");
  add_common(coxeter);
  coxeter->add_option("--family", cox.family, "Btilde, Gtilde or Etilde");
  coxeter->add_option("--rank", cox.rank)->required();
  coxeter->add_flag("--limit", cox.limit, "print lim s_n / n^d");
  coxeter->add_flag("--window", cox.window, "print the window for mg(rank)");
  coxeter->add_option("--terms", cox.terms);

  ConstantsOptions consts;
  auto* constants = app.add_subcommand("constants", "epsilon_d and the appendix constants");
  add_common(constants);
  constants->add_option("--d", consts.d_min);
  constants->add_option("--d-max", consts.d_max);
  constants->add_option("--appendix", consts.appendix, "min, first or second");
  constants->add_option("--loop-erased", consts.loop_erased_delta, "valency Delta");

  HeatOptions heat_opt;
  auto* heat = app.add_subcommand("heat", "return probabilities; csv columns t,p_num,p_den,bound");
  add_common(heat);
  heat->add_option("--steps", heat_opt.steps);
  heat->add_option("--degree", heat_opt.degree);

  std::string gap_n = "20922789888000";
  auto* gap = app.add_subcommand("gap", "certify the percolation-gap chain");
  add_common(gap);
  gap->add_option("--n", gap_n, "dimension threshold n (default 16!)");

  BoundaryOptions bnd;
  auto* boundary = app.add_subcommand("boundary", "vertex boundary of a ball against the isoperimetric bounds");
  add_common(boundary);
  boundary->add_option("--radius", bnd.radius);
  boundary->add_option("--degree", bnd.degree);

  WordsOptions words_opt;
  auto* words = app.add_subcommand("words", "commutator words and their evaluation");
  add_common(words);
  words->add_option("--weight", words_opt.weight);
  words->add_option("--word", words_opt.word);
  words->add_flag("--multilinear", words_opt.multilinear);
  words->add_option("--class", words_opt.nil_class);
  words->add_option("--trials", words_opt.trials);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    cfg.precision = precision_flag;
    if (const char* env = std::getenv("GROWTHLAB_PRECISION")) cfg.precision = parse_precision(env);
    const bool group_given = verify->count("--group") + verify->count("--group-file") > 0 ||
                             words->count("--group") + words->count("--group-file") > 0;
    for (CLI::App* sub : app.get_subcommands()) {
      if (sub->count("--group") && sub->count("--group-file")) throw InputError("--group and --group-file conflict");
    }
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    Output o;
    if (name == "ball") {
      o = cmd_ball(cfg, ball_radius);
    } else if (name == "verify-growth") {
      growth.noncyclic = !cyclic;
      o = cmd_verify_growth(cfg, growth);
    } else if (name == "coxeter") {
      if (!cox.window && cox.family.empty()) throw InputError("--family is required");
      o = cmd_coxeter(cfg, cox);
    } else if (name == "constants") {
      o = cmd_constants(cfg, consts);
    } else if (name == "heat") {
      o = cmd_heat(cfg, heat_opt);
    } else if (name == "gap") {
      o = cmd_gap(cfg, gap_n);
    } else if (name == "boundary") {
      o = cmd_boundary(cfg, bnd);
    } else {
      o = cmd_words(cfg, words_opt, group_given);
    }
    emit(o, name, cfg.format, out);
    return o.code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const GroupSpecError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace growthlab::cli
