#include "entropic/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "entropic/apparatus.hpp"
#include "entropic/bounds.hpp"
#include "entropic/entropy.hpp"
#include "entropic/errors.hpp"
#include "entropic/minimizer.hpp"
#include "entropic/states.hpp"
#include "entropic/verify.hpp"

namespace entropic::cli {

namespace {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using Value = std::variant<double, bool, long long, std::string>;
using Record = std::vector<std::pair<std::string, Value>>;

struct Table {
  std::vector<Record> rows;
  bool single = false;  // JSON emits an object instead of an array
};

// ---------------------------------------------------------------- parsing

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, sep)) parts.push_back(current);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& token, const std::string& what) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || token.empty()) {
    throw ConfigError("invalid number '" + token + "' in " + what);
  }
  return v;
}

std::size_t parse_count(const std::string& token, const std::string& what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw ConfigError("invalid count '" + token + "' in " + what);
  }
  return v;
}

// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i".
Complex parse_complex(std::string token) {
  token.erase(std::remove(token.begin(), token.end(), ' '), token.end());
  if (token.empty()) throw ConfigError("empty coefficient in fock state");
  const char tail = token.back();
  if (tail != 'i' && tail != 'j') return {parse_double(token, "fock coefficient"), 0.0};
  const std::string body = token.substr(0, token.size() - 1);
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  auto imaginary = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s, "fock coefficient");
  };
  if (split_at == std::string::npos) return {0.0, imaginary(body)};
  return {parse_double(body.substr(0, split_at), "fock coefficient"), imaginary(body.substr(split_at))};
}

// Parsed --state; "squeezed:min" resolves once the noise is known.
struct StateSpec {
  enum class Kind { Squeezed, SqueezedMin, Fock } kind = Kind::Squeezed;
  double sigma2 = 0.5;
  std::vector<Complex> coeffs;

  SystemState build(const std::optional<NoiseTerms>& noise) const {
    switch (kind) {
      case Kind::Squeezed:
        return make_squeezed(sigma2);
      case Kind::SqueezedMin:
        if (!noise) throw ConfigError("squeezed:min needs --noise or --setup");
        return make_squeezed(minimal_variance(*noise));
      case Kind::Fock:
        return make_fock(coeffs);
    }
    throw ConfigError("unreachable state kind");
  }
};

StateSpec parse_state(const std::string& text) {
  StateSpec spec;
  if (text == "vacuum") return spec;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("state spec must be kind:params, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string params = text.substr(colon + 1);
  if (kind == "squeezed") {
    if (params == "min") {
      spec.kind = StateSpec::Kind::SqueezedMin;
    } else {
      spec.sigma2 = parse_double(params, "squeezed state");
      if (!(spec.sigma2 > 0.0) || !std::isfinite(spec.sigma2)) {
        throw ConfigError("squeezed variance must be positive");
      }
    }
    return spec;
  }
  if (kind == "fock") {
    spec.kind = StateSpec::Kind::Fock;
    for (const std::string& tok : split(params, ',')) spec.coeffs.push_back(parse_complex(tok));
    if (spec.coeffs.empty()) throw ConfigError("fock state needs at least one coefficient");
    if (spec.coeffs.size() > kMaxFockLevel + 1) throw ConfigError("fock state exceeds the number-state cap");
    if (std::all_of(spec.coeffs.begin(), spec.coeffs.end(), [](Complex c) { return std::abs(c) == 0.0; })) {
      throw ConfigError("fock coefficients are all zero");
    }
    return spec;
  }
  throw ConfigError("unknown state kind '" + kind + "'");
}

std::vector<double> parse_list(const std::string& text, std::size_t n, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != n) throw ConfigError(what + " expects " + std::to_string(n) + " comma-separated values");
  std::vector<double> v;
  for (const auto& p : parts) v.push_back(parse_double(p, what));
  return v;
}

NoiseTerms parse_noise(const std::string& text) {
  const auto v = parse_list(text, 2, "--noise");
  if (!(v[0] > 0.0) || !(v[1] > 0.0) || !std::isfinite(v[0]) || !std::isfinite(v[1])) {
    throw ConfigError("noise terms must be positive");
  }
  return NoiseTerms(v[0], v[1]);
}

NoiseTerms parse_setup(const std::string& text) {
  const auto v = parse_list(text, 5, "--setup");
  const MeasurementSetup setup{v[0], v[1], v[2], v[3], v[4]};
  try {
    return noise_terms(setup);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

BoundParams parse_lambda(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 1 && parts.size() != 2) throw ConfigError("--lambda expects v or vx,vp");
  const double lx = parse_double(parts[0], "--lambda");
  const double lp = parts.size() == 2 ? parse_double(parts[1], "--lambda") : lx;
  try {
    return BoundParams(lx, lp);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

Grid parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("--grid expects min:max:count");
  try {
    return Grid(parse_double(parts[0], "--grid"), parse_double(parts[1], "--grid"), parse_count(parts[2], "--grid"));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

struct SweepSpec {
  std::string param;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;

  double at(std::size_t i) const { return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1); }
};

SweepSpec parse_sweep(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw ConfigError("--sweep expects param:min:max:count");
  SweepSpec s{parts[0], parse_double(parts[1], "--sweep"), parse_double(parts[2], "--sweep"),
              parse_count(parts[3], "--sweep")};
  if (s.param != "product" && s.param != "sigma2" && s.param != "lambda") {
    throw ConfigError("sweep parameter must be product, sigma2 or lambda");
  }
  if (s.count < 2) throw ConfigError("sweep count must be at least 2");
  if (s.param == "lambda" && !(s.lo >= 0.0 && s.hi <= 1.0 && s.lo <= s.hi)) {
    throw ConfigError("lambda sweep must stay within [0, 1]");
  }
  if (s.param != "lambda" && !(s.lo > 0.0 && s.hi > 0.0)) throw ConfigError("sweep range must be positive");
  return s;
}

// ---------------------------------------------------------------- output

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_cell(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

nlohmann::ordered_json json_value(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::stod(format_number(*d));
  }
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  if (const auto* i = std::get_if<long long>(&v)) return *i;
  return std::get<std::string>(v);
}

void emit(const Table& table, const std::string& format, std::ostream& out) {
  if (format == "json") {
    auto object = [](const Record& r) {
      nlohmann::ordered_json o = nlohmann::ordered_json::object();
      for (const auto& [k, v] : r) o[k] = json_value(v);
      return o;
    };
    nlohmann::ordered_json doc;
    if (table.single && table.rows.size() == 1) {
      doc = object(table.rows.front());
    } else {
      doc = nlohmann::ordered_json::array();
      for (const auto& r : table.rows) doc.push_back(object(r));
    }
    out << doc.dump(2) << '\n';
    return;
  }
  if (table.rows.empty()) return;
  const Record& head = table.rows.front();
  for (std::size_t i = 0; i < head.size(); ++i) out << (i ? "," : "") << head[i].first;
  out << '\n';
  for (const auto& r : table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_cell(r[i].second);
    out << '\n';
  }
}

// ---------------------------------------------------------------- records

struct Options {
  std::optional<std::string> state;
  std::optional<std::string> setup;
  std::optional<std::string> noise;
  std::optional<std::string> sweep;
  std::optional<std::string> lambda;
  std::optional<std::string> grid;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> suites;
  std::string format = "csv";
  std::size_t n_max = OptimizerConfig{}.n_max;
  std::size_t max_iters = OptimizerConfig{}.max_iters;
  std::size_t restarts = OptimizerConfig{}.restarts;
};

std::optional<NoiseTerms> resolve_noise(const Options& o) {
  if (o.noise) return parse_noise(*o.noise);
  if (o.setup) return parse_setup(*o.setup);
  return std::nullopt;
}

NoiseTerms require_noise(const Options& o) {
  auto n = resolve_noise(o);
  if (!n) throw ConfigError("this command needs --noise or --setup");
  return *n;
}

void add_noise_columns(Record& r, const NoiseTerms& n) {
  r.emplace_back("delta_x", n.delta_x());
  r.emplace_back("delta_p", n.delta_p());
  r.emplace_back("product", noise_product(n));
  r.emplace_back("below_floor", n.below_floor());
}

Record entropy_record(const SystemState& state, const NoiseTerms& n, const std::optional<Grid>& grid) {
  const EntropyResult e = grid ? marginal_entropies(state, n, *grid, *grid) : marginal_entropies(state, n);
  Record r;
  r.emplace_back("s_x", e.s_x);
  r.emplace_back("s_p", e.s_p);
  r.emplace_back("collective", e.collective);
  r.emplace_back("delta_x", n.delta_x());
  r.emplace_back("delta_p", n.delta_p());
  r.emplace_back("product", noise_product(n));
  return r;
}

void add_bound_tail(Record& r, const NoiseTerms& n, double single_lambda, double single, const OptimalBound& best) {
  r.emplace_back("balanced_simplified", balanced_simplified_bound(n));
  r.emplace_back("single_lambda", single_lambda);
  r.emplace_back("single_param", single);
  r.emplace_back("optimal", best.bound);
  r.emplace_back("optimal_lambda", best.lambda);
  r.emplace_back("optimal_equals_omega", std::abs(best.bound - wehrl_constant()) <= 1e-9);
}

Record bounds_record(const std::optional<SystemState>& state, const NoiseTerms& n, const BoundParams& params,
                     const std::optional<Grid>& grid) {
  Record r;
  if (!state) {
    add_noise_columns(r, n);
    r.emplace_back("omega", wehrl_constant());
    r.emplace_back("noise_bound", lieb_lower_bound(0.0, 0.0, n, BoundParams(0.0, 0.0)));
    add_bound_tail(r, n, params.lambda_x, single_param_bound(n, params.lambda_x), optimal_bound(n));
    return r;
  }
  const BoundReport b = grid ? report(*state, n, params, *grid, *grid) : report(*state, n, params);
  r.emplace_back("lambda_x", b.params.lambda_x);
  r.emplace_back("lambda_p", b.params.lambda_p);
  add_noise_columns(r, n);
  r.emplace_back("s_x_system", b.s_x_system);
  r.emplace_back("s_p_system", b.s_p_system);
  r.emplace_back("s_x", b.s_x);
  r.emplace_back("s_p", b.s_p);
  r.emplace_back("collective", b.collective);
  r.emplace_back("omega", b.omega);
  r.emplace_back("lambda_family", b.lambda_family);
  r.emplace_back("system_bound", b.system_bound);
  r.emplace_back("noise_bound", b.noise_bound);
  r.emplace_back("balanced_bound", b.balanced_bound);
  add_bound_tail(r, n, b.single_lambda, b.single_param, {b.optimal, b.optimal_lambda});
  return r;
}

// ---------------------------------------------------------------- commands

const BoundParams kDefaultParams(0.5, 0.5);

std::optional<Grid> resolve_grid(const Options& o) {
  if (!o.grid) return std::nullopt;
  return parse_grid(*o.grid);
}

Table cmd_entropy(const Options& o) {
  if (!o.state) throw ConfigError("entropy needs --state");
  const StateSpec spec = parse_state(*o.state);
  const NoiseTerms n = require_noise(o);
  return {{entropy_record(spec.build(n), n, resolve_grid(o))}, true};
}

Table cmd_bounds(const Options& o) {
  const NoiseTerms n = require_noise(o);
  const BoundParams params = o.lambda ? parse_lambda(*o.lambda) : kDefaultParams;
  std::optional<SystemState> state;
  if (o.state) state = parse_state(*o.state).build(n);
  return {{bounds_record(state, n, params, resolve_grid(o))}, true};
}

Table cmd_sweep(const Options& o) {
  if (!o.sweep) throw ConfigError("sweep needs --sweep param:min:max:count");
  const SweepSpec sweep = parse_sweep(*o.sweep);
  const std::optional<NoiseTerms> given = resolve_noise(o);
  const std::optional<Grid> grid = resolve_grid(o);
  const BoundParams params = o.lambda ? parse_lambda(*o.lambda) : kDefaultParams;
  std::optional<StateSpec> spec;
  if (o.state) spec = parse_state(*o.state);

  if (sweep.param == "sigma2" && spec) throw ConfigError("sigma2 sweep sets the state; drop --state");
  if (sweep.param != "product" && !given) throw ConfigError("this sweep needs --noise or --setup");
  // Product sweeps keep δ_X/δ_P fixed at the given ratio (1 if none).
  const double ratio = given ? given->delta_x() / given->delta_p() : 1.0;

  Table table;
  for (std::size_t i = 0; i < sweep.count; ++i) {
    const double v = sweep.at(i);
    NoiseTerms n = given ? *given : NoiseTerms(1.0, 1.0);
    BoundParams p = params;
    std::optional<SystemState> state;
    if (sweep.param == "product") {
      n = NoiseTerms(std::sqrt(v * ratio), std::sqrt(v / ratio));
    } else if (sweep.param == "lambda") {
      p = BoundParams(v, v);
    }
    if (sweep.param == "sigma2") {
      state = make_squeezed(v);
    } else if (spec) {
      state = spec->build(n);
    }
    Record r{{"sweep_" + sweep.param, v}};
    for (auto& cell : bounds_record(state, n, p, grid)) r.push_back(std::move(cell));
    table.rows.push_back(std::move(r));
  }
  return table;
}

Record minimize_record(const OptimizationResult& res, const NoiseTerms& n, const OptimizerConfig& cfg) {
  const double sigma2 = minimal_variance(n);
  const double optimal = optimal_bound(n).bound;
  double raw = std::nan("");
  double aligned = std::nan("");
  try {
    raw = fidelity_with_squeezed(res.coeffs, sigma2);
    aligned = aligned_fidelity_with_squeezed(res.coeffs, sigma2);
  } catch (const CapabilityError&) {
  }
  const PhaseSpaceCenter c = phase_space_center(res.coeffs);
  Record r;
  r.emplace_back("delta_x", n.delta_x());
  r.emplace_back("delta_p", n.delta_p());
  r.emplace_back("n_max", static_cast<long long>(cfg.n_max));
  r.emplace_back("seed", static_cast<long long>(cfg.seed));
  r.emplace_back("restarts", static_cast<long long>(cfg.restarts));
  r.emplace_back("converged", res.converged);
  r.emplace_back("best_restart", static_cast<long long>(res.best_restart));
  r.emplace_back("iterations", static_cast<long long>(res.iterations));
  r.emplace_back("entropy", res.entropy);
  r.emplace_back("optimal", optimal);
  r.emplace_back("gap", res.entropy - optimal);
  r.emplace_back("sigma2_min", sigma2);
  r.emplace_back("fidelity", raw);
  r.emplace_back("aligned_fidelity", aligned);
  r.emplace_back("center_x", c.x);
  r.emplace_back("center_p", c.p);
  for (std::size_t k = 0; k < res.coeffs.size(); ++k) {
    r.emplace_back("c" + std::to_string(k) + "_re", res.coeffs[k].real());
    r.emplace_back("c" + std::to_string(k) + "_im", res.coeffs[k].imag());
  }
  return r;
}

Table cmd_minimize(const Options& o, bool& converged) {
  const NoiseTerms n = require_noise(o);
  OptimizerConfig cfg;
  cfg.n_max = o.n_max;
  cfg.max_iters = o.max_iters;
  cfg.restarts = o.restarts;
  cfg.seed = o.seed.value_or(0);
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  } catch (const CapabilityError& e) {
    throw ConfigError(e.what());
  }
  try {
    const OptimizationResult res = find_minimal_entropy_state(n, cfg);
    converged = true;
    return {{minimize_record(res, n, cfg)}, true};
  } catch (const NonConvergenceError& e) {
    converged = false;
    return {{minimize_record(e.best(), n, cfg)}, true};
  }
}

Table cmd_verify(const Options& o, bool& all_passed) {
  VerifyOptions vo;
  if (o.seed) vo.seed = *o.seed;
  if (o.noise) vo.injected_noise = parse_noise(*o.noise);
  std::vector<std::string> names = o.suites.empty() ? suite_names() : o.suites;
  for (const auto& name : names) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
      throw ConfigError("unknown suite '" + name + "'");
    }
  }
  Table table;
  all_passed = true;
  for (const auto& name : names) {
    const SuiteResult s = run_suite(name, vo);
    all_passed = all_passed && s.passed();
    std::string notes;
    for (const auto& note : s.notes) notes += (notes.empty() ? "" : "; ") + note;
    table.rows.push_back({{"suite", s.name},
                          {"checks", static_cast<long long>(s.checks)},
                          {"failures", static_cast<long long>(s.failures)},
                          {"margin", s.margin},
                          {"passed", s.passed()},
                          {"notes", notes}});
  }
  return table;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "Write the records to this file instead of stdout");
  sub->add_option("--seed", o.seed, "Random seed");
}

void add_noise(CLI::App* sub, Options& o) {
  auto* setup = sub->add_option("--setup", o.setup, "Pointer setup k1,k2,T,s1,s2");
  auto* noise = sub->add_option("--noise", o.noise, "Noise terms dX,dP");
  setup->excludes(noise);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Collective entropy and entropic uncertainty bounds for pointer measurements", "entropic"};
  app.require_subcommand(1);

  auto* entropy = app.add_subcommand("entropy", "Marginal and collective entropies of a state");
  auto* bounds = app.add_subcommand("bounds", "Every lower bound next to the measured entropy");
  auto* sweep = app.add_subcommand("sweep", "Bounds table over one swept parameter");
  auto* minimize = app.add_subcommand("minimize", "Search Fock superpositions for the minimal-entropy state");
  auto* verify = app.add_subcommand("verify", "Run the built-in property suites");

  for (auto* sub : {entropy, bounds, sweep, minimize, verify}) add_common(sub, o);
  for (auto* sub : {entropy, bounds, sweep, minimize}) add_noise(sub, o);
  for (auto* sub : {entropy, bounds, sweep}) {
    sub->add_option("--state", o.state, "vacuum, squeezed:<s2>, squeezed:min or fock:c0,c1,...");
    sub->add_option("--grid", o.grid, "Base grid min:max:count for both quadratures");
  }
  for (auto* sub : {bounds, sweep}) sub->add_option("--lambda", o.lambda, "Weights v or vx,vp (default 0.5)");
  sweep->add_option("--sweep", o.sweep, "param:min:max:count with param in {product, sigma2, lambda}");
  minimize->add_option("--nmax", o.n_max, "Highest number state");
  minimize->add_option("--max-iters", o.max_iters, "Iteration budget per restart");
  minimize->add_option("--restarts", o.restarts, "Random initializations");
  verify->add_option("--suite", o.suites, "Suite to run (repeatable)");
  verify->add_option("--noise", o.noise, "Extra dX,dP fed to the bounds suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    Table table;
    int status = kOk;
    if (entropy->parsed()) {
      table = cmd_entropy(o);
    } else if (bounds->parsed()) {
      table = cmd_bounds(o);
    } else if (sweep->parsed()) {
      table = cmd_sweep(o);
    } else if (minimize->parsed()) {
      bool converged = false;
      table = cmd_minimize(o, converged);
      if (!converged) {
        err << "error: no restart converged; best attempt reported\n";
        status = kNotConverged;
      }
    } else {
      bool passed = false;
      table = cmd_verify(o, passed);
      if (!passed) {
        err << "error: property suite failed\n";
        status = kVerifyFailed;
      }
    }
    if (o.out) {
      std::ofstream file(*o.out, std::ios::binary);
      if (!file) throw ConfigError("cannot open output file '" + *o.out + "'");
      emit(table, o.format, file);
    } else {
      emit(table, o.format, out);
    }
    return status;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace entropic::cli
