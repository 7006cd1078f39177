#include "fup/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fup/baker.hpp"
#include "fup/diophantine.hpp"
#include "fup/error.hpp"
#include "fup/testfn.hpp"

namespace fup {
namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join_letters(const std::vector<std::int64_t>& letters) {
  std::string s;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(letters[i]);
  }
  return s;
}

template <class T>
std::vector<T> read_list(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

PowerIterationOptions power_options(const SweepSpec& spec) {
  PowerIterationOptions p;
  p.tol = spec.tol;
  p.max_iterations = spec.max_iterations;
  p.seed = spec.seed;
  return p;
}

// Alphabet sources for commands that accept explicit letters or a generator.
std::vector<json> alphabet_sources(const SweepSpec& spec, bool allow_delta) {
  std::vector<json> out;
  for (const auto& letters : spec.alphabets) out.push_back(json{{"alphabet", letters}});
  if (allow_delta)
    for (double d : spec.deltas) out.push_back(json{{"delta", d}});
  for (std::int64_t q : spec.mdeltas) out.push_back(json{{"Mdelta", q}});
  return out;
}

Alphabet alphabet_for(std::int64_t m, const json& p) {
  if (p.contains("alphabet")) return Alphabet(m, p.at("alphabet").get<std::vector<std::int64_t>>());
  if (p.contains("delta")) return build_alphabet_interval(m, p.at("delta").get<double>());
  return build_alphabet_initial(m, p.at("Mdelta").get<std::int64_t>());
}

CutoffProfile cutoff_for(const std::string& kind, std::int64_t block) {
  if (kind == "bump") return make_smooth_cutoff(block);
  if (kind == "sharp") return make_sharp_cutoff(block);
  throw ParameterError("sweep cutoff must be bump or sharp, got " + kind);
}

bool all_true(const json& inv) {
  for (const auto& [name, ok] : inv.items())
    if (!ok.get<bool>()) return false;
  return true;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json evaluate(const SweepSpec& spec, const json& p, json& invariants) {
  const PowerIterationOptions power = power_options(spec);
  switch (spec.command) {
    case SweepCommand::kBeta: {
      const std::int64_t m = p.at("M").get<std::int64_t>();
      const CantorSet c = cantor_elements(alphabet_for(m, p), p.at("k").get<int>());
      const NormCertificate cert = masked_norm(c.elements, c.elements, c.modulus, power);
      const FupExponentReport rep = beta_k(cert, c);
      invariants["sandwich"] = rep.lower_theory - 1e-9 <= rep.beta && rep.beta <= rep.upper_theory + 1e-9;
      invariants["converged"] = cert.converged;
      return json{{"letters", c.alphabet.letters()}, {"report", rep}, {"norm", cert}};
    }
    case SweepCommand::kTheorem1: {
      Theorem1Options opts;
      opts.grid_points = spec.grid_points;
      opts.power = power;
      const Theorem1Certificate cert = theorem1_certificate(p.at("M").get<std::int64_t>(), p.at("delta").get<double>(),
                                                            p.at("k").get<int>(), opts);
      invariants["chain"] = cert.chain_holds;
      invariants["sigma_above_lower"] = cert.sigma_above_lower;
      invariants["tail_bound"] = cert.tail.holds;
      if (cert.norm_lower_ok && cert.width_ok && cert.exp_step_ok) invariants["beta_within_bound"] = cert.beta_within_bound;
      return json(cert);
    }
    case SweepCommand::kTheorem2: {
      Theorem2Options opts;
      opts.power = power;
      const Theorem2Report rep =
          theorem2_report(p.at("M").get<std::int64_t>(), p.at("Mdelta").get<std::int64_t>(), p.at("k").get<int>(),
                          p.at("alpha").get<ExactRational>(), spec.eps, opts);
      invariants["strict_regime"] = rep.approx.strict_regime;
      invariants["sigma_at_most_one"] = rep.norm.sigma_max <= 1.0 + 1e-12;
      return json(rep);
    }
    case SweepCommand::kDirichlet: {
      const RationalApprox r = best_rational(p.at("alpha").get<ExactRational>(), p.at("M").get<std::int64_t>(),
                                             p.at("Mdelta").get<std::int64_t>());
      invariants["strict_regime"] = r.strict_regime;
      return json(r);
    }
    case SweepCommand::kBaker: {
      const std::int64_t n = p.at("N").get<std::int64_t>();
      const std::int64_t m = p.at("M").get<std::int64_t>();
      if (m < 2 || n % m != 0) throw ParameterError("baker needs M >= 2 dividing N");
      const Alphabet alphabet = alphabet_for(m, p);
      const BakerMap map = build_baker(n, alphabet, cutoff_for(spec.cutoff, n / m));
      GelfandOptions opts;
      opts.n_max = spec.n_max;
      opts.power = power;
      opts.power.max_iterations = std::min<std::int64_t>(spec.max_iterations, 20000);
      opts.eps = spec.eps;
      const GelfandReport rep = gelfand_bound(map, opts);
      invariants["submultiplicative"] = rep.submultiplicative;
      invariants["rho_at_most_one"] = rep.rho_upper <= 1.0 + 1e-10;
      json out{{"letters", alphabet.letters()}, {"cutoff", spec.cutoff}};
      out["gelfand"] = rep;
      return out;
    }
  }
  throw std::logic_error("unknown sweep command");
}

}  // namespace

std::string to_string(SweepCommand c) {
  switch (c) {
    case SweepCommand::kBeta:
      return "beta";
    case SweepCommand::kTheorem1:
      return "theorem1";
    case SweepCommand::kTheorem2:
      return "theorem2";
    case SweepCommand::kDirichlet:
      return "dirichlet";
    case SweepCommand::kBaker:
      return "baker";
  }
  return "unknown";
}

SweepCommand parse_sweep_command(const std::string& name) {
  for (auto c : {SweepCommand::kBeta, SweepCommand::kTheorem1, SweepCommand::kTheorem2, SweepCommand::kDirichlet,
                 SweepCommand::kBaker})
    if (to_string(c) == name) return c;
  throw ParameterError("unknown sweep command: " + name);
}

SweepSpec sweep_spec_from_json(const json& j) {
  static const std::set<std::string> known{"command", "M",    "alphabet", "delta",  "Mdelta", "k",       "alpha",
                                           "N",       "tol",  "max_iterations",     "seed",   "grid",    "nmax",
                                           "cutoff",  "eps",  "out",      "threads"};
  if (!j.is_object()) throw ParameterError("sweep config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ParameterError("unknown sweep config key: " + key);

  SweepSpec s;
  if (j.contains("command")) s.command = parse_sweep_command(j.at("command").get<std::string>());
  if (j.contains("M")) s.m_values = read_list<std::int64_t>(j.at("M"));
  if (j.contains("alphabet")) {
    const json& a = j.at("alphabet");
    if (!a.is_array()) throw ParameterError("alphabet must be a list of letters or a list of lists");
    if (!a.empty() && a.front().is_array())
      s.alphabets = a.get<std::vector<std::vector<std::int64_t>>>();
    else
      s.alphabets = {a.get<std::vector<std::int64_t>>()};
  }
  if (j.contains("delta")) s.deltas = read_list<double>(j.at("delta"));
  if (j.contains("Mdelta")) s.mdeltas = read_list<std::int64_t>(j.at("Mdelta"));
  if (j.contains("k")) s.k_values = read_list<int>(j.at("k"));
  if (j.contains("alpha")) {
    const json& a = j.at("alpha");
    if (a.is_array())
      for (const auto& x : a) s.alphas.push_back(x.get<ExactRational>());
    else
      s.alphas.push_back(a.get<ExactRational>());
  }
  if (j.contains("N")) s.n_values = read_list<std::int64_t>(j.at("N"));
  if (j.contains("tol")) s.tol = j.at("tol").get<double>();
  if (j.contains("max_iterations")) s.max_iterations = j.at("max_iterations").get<std::int64_t>();
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("grid")) s.grid_points = j.at("grid").get<std::int64_t>();
  if (j.contains("nmax")) s.n_max = j.at("nmax").get<std::int64_t>();
  if (j.contains("cutoff")) s.cutoff = j.at("cutoff").get<std::string>();
  if (j.contains("eps")) s.eps = j.at("eps").get<double>();
  if (j.contains("out")) s.out_dir = j.at("out").get<std::string>();
  if (j.contains("threads")) s.threads = j.at("threads").get<int>();
  return s;
}

json sweep_spec_to_json(const SweepSpec& s) {
  json alphas = json::array();
  for (const auto& a : s.alphas) alphas.push_back(a.to_string());
  return json{{"command", to_string(s.command)},
              {"M", s.m_values},
              {"alphabet", s.alphabets},
              {"delta", s.deltas},
              {"Mdelta", s.mdeltas},
              {"k", s.k_values},
              {"alpha", alphas},
              {"N", s.n_values},
              {"tol", s.tol},
              {"max_iterations", s.max_iterations},
              {"seed", s.seed},
              {"grid", s.grid_points},
              {"nmax", s.n_max},
              {"cutoff", s.cutoff},
              {"eps", s.eps}};
}

std::string spec_hash(const SweepSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : sweep_spec_to_json(spec).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::size_t RunRecord::count(const std::string& status) const {
  std::size_t n = 0;
  for (const auto& p : points) n += p.status == status;
  return n;
}

std::size_t RunRecord::invariant_failures() const {
  std::size_t n = 0;
  for (const auto& p : points)
    if (p.status == "failed" || (p.status == "ok" && !all_true(p.invariants))) ++n;
  return n;
}

std::vector<json> expand_grid(const SweepSpec& spec) {
  std::vector<json> grid;
  switch (spec.command) {
    case SweepCommand::kBeta:
      for (auto m : spec.m_values)
        for (const auto& src : alphabet_sources(spec, true))
          for (int k : spec.k_values) {
            json p{{"M", m}};
            p.update(src);
            p["k"] = k;
            grid.push_back(p);
          }
      break;
    case SweepCommand::kTheorem1:
      for (auto m : spec.m_values)
        for (double d : spec.deltas)
          for (int k : spec.k_values) grid.push_back(json{{"M", m}, {"delta", d}, {"k", k}});
      break;
    case SweepCommand::kTheorem2:
      for (auto m : spec.m_values)
        for (auto q : spec.mdeltas)
          for (int k : spec.k_values)
            for (const auto& a : spec.alphas)
              grid.push_back(json{{"M", m}, {"Mdelta", q}, {"k", k}, {"alpha", a.to_string()}});
      break;
    case SweepCommand::kDirichlet:
      for (auto m : spec.m_values)
        for (auto q : spec.mdeltas)
          for (const auto& a : spec.alphas) grid.push_back(json{{"M", m}, {"Mdelta", q}, {"alpha", a.to_string()}});
      break;
    case SweepCommand::kBaker:
      for (auto n : spec.n_values)
        for (auto m : spec.m_values)
          for (const auto& src : alphabet_sources(spec, false)) {
            json p{{"N", n}, {"M", m}};
            p.update(src);
            grid.push_back(p);
          }
      break;
  }
  return grid;
}

SweepPoint evaluate_point(const SweepSpec& spec, std::size_t index, const json& params) {
  SweepPoint pt;
  pt.index = index;
  pt.params = params;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    json inv = json::object();
    pt.result = evaluate(spec, params, inv);
    pt.invariants = std::move(inv);
    pt.status = "ok";
  } catch (const ParameterError& e) {
    pt.status = "skipped";
    pt.reason = e.what();
  } catch (const CapacityError& e) {
    pt.status = "skipped";
    pt.reason = e.what();
  } catch (const std::exception& e) {
    pt.status = "failed";
    pt.reason = e.what();
  }
  pt.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return pt;
}

RunRecord run_sweep(const SweepSpec& spec) {
  RunRecord rec;
  rec.spec_hash = spec_hash(spec);
  rec.version = FUP_VERSION;
  rec.command = spec.command;
  const auto t0 = std::chrono::steady_clock::now();

  const std::vector<json> grid = expand_grid(spec);
  rec.points.resize(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) rec.points[i] = evaluate_point(spec, i, grid[i]);
  };
  const auto workers = static_cast<std::size_t>(std::max(1, spec.threads));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(workers, grid.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::vector<std::string> csv_columns(SweepCommand command) {
  switch (command) {
    case SweepCommand::kBeta:
      return {"M", "alphabet", "k", "N", "delta", "sigma", "beta_k", "lower_theory", "upper_theory", "status"};
    case SweepCommand::kTheorem1:
      return {"M", "delta", "k", "N", "sigma", "beta_k", "z_lower", "chain_holds", "tail_holds", "beta_bound",
              "beta_within_bound", "status"};
    case SweepCommand::kTheorem2:
      return {"M", "Mdelta", "k", "alpha", "q", "gamma", "sigma", "beta_kN", "target_exponent", "empirical_slack",
              "status"};
    case SweepCommand::kDirichlet:
      return {"M", "Mdelta", "alpha", "b", "q", "gamma", "strict_regime", "status"};
    case SweepCommand::kBaker:
      return {"N", "M", "alphabet", "cutoff", "alpha", "q", "gamma", "rho_upper", "theorem3_bound", "submultiplicative",
              "status"};
  }
  return {};
}

std::string csv_row(SweepCommand command, const SweepPoint& pt) {
  const json& p = pt.params;
  const json& r = pt.result;
  const bool ok = pt.status == "ok";
  auto num = [](const json& v) -> std::string {
    if (v.is_null()) return "";
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_string()) return v.get<std::string>();
    return fmt(v.get<double>());
  };
  auto get = [&](const json& obj, std::initializer_list<const char*> path) -> std::string {
    if (!ok) return "";
    const json* cur = &obj;
    for (const char* key : path) {
      if (!cur->contains(key)) return "";
      cur = &cur->at(key);
    }
    return num(*cur);
  };
  auto param = [&](const char* key) { return p.contains(key) ? num(p.at(key)) : std::string(); };
  auto alphabet_cell = [&]() {
    if (ok && r.contains("letters")) return join_letters(r.at("letters").get<std::vector<std::int64_t>>());
    if (p.contains("alphabet")) return join_letters(p.at("alphabet").get<std::vector<std::int64_t>>());
    if (p.contains("delta")) return "delta=" + num(p.at("delta"));
    if (p.contains("Mdelta")) return "Mdelta=" + num(p.at("Mdelta"));
    return std::string();
  };

  std::vector<std::string> cells;
  switch (command) {
    case SweepCommand::kBeta:
      cells = {param("M"),
               alphabet_cell(),
               param("k"),
               get(r, {"report", "N"}),
               get(r, {"report", "delta"}),
               get(r, {"report", "sigma_max"}),
               get(r, {"report", "beta_k"}),
               get(r, {"report", "lower_theory"}),
               get(r, {"report", "upper_theory"})};
      break;
    case SweepCommand::kTheorem1:
      cells = {param("M"),
               param("delta"),
               param("k"),
               get(r, {"report", "N"}),
               get(r, {"report", "sigma_max"}),
               get(r, {"report", "beta_k"}),
               get(r, {"z", "z_certified_lower"}),
               get(r, {"chain_holds"}),
               get(r, {"tail", "holds"}),
               get(r, {"beta_bound"}),
               get(r, {"beta_within_bound"})};
      break;
    case SweepCommand::kTheorem2:
      cells = {param("M"),
               param("Mdelta"),
               param("k"),
               param("alpha"),
               get(r, {"approx", "q"}),
               get(r, {"approx", "gamma"}),
               get(r, {"norm", "sigma_max"}),
               get(r, {"report", "beta_k"}),
               get(r, {"target_exponent"}),
               get(r, {"empirical_slack"})};
      break;
    case SweepCommand::kDirichlet:
      cells = {param("M"), param("Mdelta"), param("alpha"), get(r, {"b"}), get(r, {"q"}), get(r, {"gamma"}),
               get(r, {"strict_regime"})};
      break;
    case SweepCommand::kBaker: {
      std::string alpha;
      if (ok) {
        const auto a = r.at("gelfand").at("alpha").get<ExactRational>();
        alpha = a.to_string();
      }
      cells = {param("N"),
               param("M"),
               alphabet_cell(),
               ok ? r.at("cutoff").get<std::string>() : std::string(),
               alpha,
               get(r, {"gelfand", "q"}),
               get(r, {"gelfand", "gamma"}),
               get(r, {"gelfand", "rho_upper"}),
               get(r, {"gelfand", "theorem3_bound"}),
               get(r, {"gelfand", "submultiplicative"})};
      break;
    }
  }
  cells.push_back(pt.status);
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += csv_escape(cells[i]);
  }
  return line;
}

json point_to_json(const SweepPoint& pt) {
  json j{{"index", pt.index}, {"params", pt.params}, {"status", pt.status}};
  if (!pt.reason.empty()) j["reason"] = pt.reason;
  if (pt.status == "ok") {
    j["invariants"] = pt.invariants;
    j["result"] = pt.result;
  }
  return j;
}

void write_run(const SweepSpec& spec, const RunRecord& rec) {
  std::filesystem::create_directories(spec.out_dir);
  auto open = [&](const char* name) {
    std::ofstream f(spec.out_dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (spec.out_dir / name).string());
    return f;
  };

  {
    std::ofstream f = open("results.jsonl");
    for (const auto& pt : rec.points) {
      json line = point_to_json(pt);
      line["command"] = to_string(rec.command);
      f << line.dump() << '\n';
    }
    if (!f) throw std::runtime_error("write failed for results.jsonl");
  }
  {
    std::ofstream f = open("summary.csv");
    const auto cols = csv_columns(rec.command);
    for (std::size_t i = 0; i < cols.size(); ++i) f << (i ? "," : "") << cols[i];
    f << '\n';
    for (const auto& pt : rec.points) f << csv_row(rec.command, pt) << '\n';
    if (!f) throw std::runtime_error("write failed for summary.csv");
  }
  {
    std::ofstream f = open("run.json");
    json run{{"spec_hash", rec.spec_hash},
             {"version", rec.version},
             {"command", to_string(rec.command)},
             {"spec", sweep_spec_to_json(spec)},
             {"points", rec.points.size()},
             {"ok", rec.count("ok")},
             {"skipped", rec.count("skipped")},
             {"failed", rec.count("failed")},
             {"invariant_failures", rec.invariant_failures()}};
    f << run.dump(2) << '\n';
    if (!f) throw std::runtime_error("write failed for run.json");
  }
}

RunRecord load_results(const std::filesystem::path& jsonl) {
  std::ifstream f(jsonl);
  if (!f) throw std::runtime_error("cannot read " + jsonl.string());
  RunRecord rec;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    if (first) {
      rec.command = parse_sweep_command(j.at("command").get<std::string>());
      first = false;
    }
    SweepPoint pt;
    pt.index = j.at("index").get<std::size_t>();
    pt.params = j.at("params");
    pt.status = j.at("status").get<std::string>();
    if (j.contains("reason")) pt.reason = j.at("reason").get<std::string>();
    if (j.contains("result")) pt.result = j.at("result");
    if (j.contains("invariants")) pt.invariants = j.at("invariants");
    rec.points.push_back(std::move(pt));
  }
  return rec;
}

}  // namespace fup
