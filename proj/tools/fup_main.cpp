#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fup/baker.hpp"
#include "fup/diophantine.hpp"
#include "fup/error.hpp"
#include "fup/serialize.hpp"
#include "fup/svg.hpp"
#include "fup/sweep.hpp"
#include "fup/testfn.hpp"

namespace {

using fup::json;

struct Globals {
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int threads = 1;
  std::string out;
};

std::vector<std::string> split_tokens(const std::string& text) {
  std::string s = text;
  for (char& c : s)
    if (c == ',' || c == ';' || c == '[' || c == ']') c = ' ';
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& tok : split_tokens(text)) {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw fup::ParameterError("not an integer: " + tok);
    out.push_back(v);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<double> read_samples(const std::string& path) {
  std::vector<double> out;
  for (const auto& tok : split_tokens(read_file(path))) out.push_back(std::stod(tok));
  return out;
}

fup::PowerIterationOptions power(const Globals& g) {
  fup::PowerIterationOptions p;
  p.tol = g.tol;
  p.seed = g.seed;
  return p;
}

void emit(const Globals& g, const json& j) {
  const std::string text = j.dump(2);
  std::cout << text << '\n';
  if (!g.out.empty()) {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + g.out);
    f << text << '\n';
  }
}

fup::Alphabet alphabet_arg(std::int64_t m, const std::string& letters, double delta, std::int64_t mdelta) {
  if (!letters.empty()) return fup::Alphabet(m, parse_ints(letters));
  if (delta > 0.0) return fup::build_alphabet_interval(m, delta);
  if (mdelta > 0) return fup::build_alphabet_initial(m, mdelta);
  throw fup::ParameterError("give --alphabet, --delta or --Mdelta");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical fractal uncertainty bounds for discrete Cantor sets"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(FUP_VERSION));

  Globals g;
  app.add_option("--seed", g.seed, "Seed for power-iteration start vectors");
  app.add_option("--tol", g.tol, "Power-iteration tolerance")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Sweep worker threads")->envname("FUP_THREADS")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output file (sweep: directory; plot: SVG path)");

  int exit_code = 0;

  // cantor
  auto* cantor = app.add_subcommand("cantor", "Build C_k or its dilation C_k(N)");
  std::int64_t c_m = 0, c_mdelta = 0;
  int c_k = 1;
  double c_delta = 0.0;
  std::string c_alphabet, c_alpha;
  cantor->add_option("--M", c_m)->required();
  cantor->add_option("--alphabet", c_alphabet, "Letters, e.g. 0,2");
  cantor->add_option("--delta", c_delta, "Interval alphabet of dimension about delta");
  cantor->add_option("--Mdelta", c_mdelta, "Alphabet {0, ..., Mdelta-1}");
  cantor->add_option("--k", c_k)->required();
  cantor->add_option("--alpha", c_alpha, "Dilation p/r with 1 <= alpha < M");
  cantor->callback([&] {
    const auto set = fup::cantor_elements(alphabet_arg(c_m, c_alphabet, c_delta, c_mdelta), c_k);
    if (c_alpha.empty())
      emit(g, json(set));
    else
      emit(g, json(fup::dilate(set, fup::ExactRational::parse(c_alpha))));
  });

  // norm
  auto* norm = app.add_subcommand("norm", "||1_X F_N 1_Y|| for index files X and Y");
  std::int64_t n_n = 0;
  std::string x_file, y_file;
  bool n_dense = false;
  norm->add_option("--N", n_n)->required();
  norm->add_option("--X-file", x_file, "Row indices")->required()->check(CLI::ExistingFile);
  norm->add_option("--Y-file", y_file, "Column indices")->required()->check(CLI::ExistingFile);
  norm->add_flag("--dense", n_dense, "Use the dense Jacobi SVD (N <= 512)");
  norm->callback([&] {
    const auto rows = parse_ints(read_file(x_file));
    const auto cols = parse_ints(read_file(y_file));
    const auto cert = n_dense ? fup::masked_norm_dense(rows, cols, n_n) : fup::masked_norm(rows, cols, n_n, power(g));
    emit(g, json{{"N", n_n}, {"rows", rows.size()}, {"cols", cols.size()}, {"certificate", cert}});
  });

  // beta
  auto* beta = app.add_subcommand("beta", "Finite-k exponent beta_k for C_k");
  std::int64_t b_m = 0, b_mdelta = 0;
  int b_k = 1;
  double b_delta = 0.0;
  std::string b_alphabet;
  beta->add_option("--M", b_m)->required();
  beta->add_option("--alphabet", b_alphabet);
  beta->add_option("--delta", b_delta);
  beta->add_option("--Mdelta", b_mdelta);
  beta->add_option("--k", b_k)->required();
  beta->callback([&] {
    const auto set = fup::cantor_elements(alphabet_arg(b_m, b_alphabet, b_delta, b_mdelta), b_k);
    const auto cert = fup::masked_norm(set.elements, set.elements, set.modulus, power(g));
    emit(g, json{{"report", fup::beta_k(cert, set)}, {"certificate", cert}});
  });

  // theorem1
  auto* t1 = app.add_subcommand("theorem1", "Lower-bound certificate for the interval alphabet");
  std::int64_t t1_m = 0, t1_grid = 100000;
  double t1_delta = 0.0;
  int t1_k = 1;
  std::string t1_svg;
  t1->add_option("--M", t1_m)->required();
  t1->add_option("--delta", t1_delta)->required();
  t1->add_option("--k", t1_k)->required();
  t1->add_option("--grid", t1_grid, "Grid points for Z and the tail bound");
  t1->add_option("--svg", t1_svg, "Also write the seed / symbol profile plot here");
  t1->callback([&] {
    fup::Theorem1Options opts;
    opts.grid_points = t1_grid;
    opts.power = power(g);
    const auto cert = fup::theorem1_certificate(t1_m, t1_delta, t1_k, opts);
    emit(g, json(cert));
    if (!t1_svg.empty()) {
      std::ofstream f(t1_svg, std::ios::binary);
      f << fup::render_svg(fup::profile_panels(t1_m, t1_delta));
      if (!f) throw std::runtime_error("cannot write " + t1_svg);
    }
    if (!cert.chain_holds || !cert.sigma_above_lower || !cert.tail.holds) exit_code = 1;
  });

  // theorem2
  auto* t2 = app.add_subcommand("theorem2", "Dilated Cantor set report");
  std::int64_t t2_m = 0, t2_mdelta = 0;
  int t2_k = 1;
  std::string t2_alpha = "1";
  double t2_eps = 0.0;
  t2->add_option("--M", t2_m)->required();
  t2->add_option("--Mdelta", t2_mdelta)->required();
  t2->add_option("--k", t2_k)->required();
  t2->add_option("--alpha", t2_alpha, "p/r with 1 <= alpha < M");
  t2->add_option("--eps", t2_eps);
  t2->callback([&] {
    fup::Theorem2Options opts;
    opts.power = power(g);
    emit(g, json(fup::theorem2_report(t2_m, t2_mdelta, t2_k, fup::ExactRational::parse(t2_alpha), t2_eps, opts)));
  });

  // dirichlet
  auto* dir = app.add_subcommand("dirichlet", "Best admissible rational approximation of alpha/M");
  std::int64_t d_m = 0, d_mdelta = 0;
  std::string d_alpha;
  dir->add_option("--alpha", d_alpha)->required();
  dir->add_option("--M", d_m)->required();
  dir->add_option("--Mdelta", d_mdelta)->required();
  dir->callback([&] {
    const auto alpha = fup::ExactRational::parse(d_alpha);
    json j = fup::best_rational(alpha, d_m, d_mdelta);
    j["convergents"] = fup::convergents(alpha / fup::ExactRational(d_m));
    emit(g, j);
  });

  // baker
  auto* bk = app.add_subcommand("baker", "Gelfand upper bound on the spectral radius of B_N");
  std::int64_t bk_n = 0, bk_m = 0, bk_mdelta = 0, bk_nmax = 64;
  std::string bk_alphabet, bk_cutoff = "bump";
  double bk_eps = 0.0;
  bk->add_option("--N", bk_n)->required();
  bk->add_option("--M", bk_m)->required();
  bk->add_option("--alphabet", bk_alphabet);
  bk->add_option("--Mdelta", bk_mdelta);
  bk->add_option("--cutoff", bk_cutoff, "bump, sharp, or a file of N/M samples");
  bk->add_option("--nmax", bk_nmax);
  bk->add_option("--eps", bk_eps);
  bk->callback([&] {
    if (bk_m < 2 || bk_n % bk_m != 0) throw fup::ParameterError("baker needs M >= 2 dividing N");
    const std::int64_t block = bk_n / bk_m;
    fup::CutoffProfile cutoff;
    if (bk_cutoff == "bump")
      cutoff = fup::make_smooth_cutoff(block);
    else if (bk_cutoff == "sharp")
      cutoff = fup::make_sharp_cutoff(block);
    else
      cutoff = fup::make_sampled_cutoff(read_samples(bk_cutoff));
    const auto map = fup::build_baker(bk_n, alphabet_arg(bk_m, bk_alphabet, 0.0, bk_mdelta), cutoff);
    fup::GelfandOptions opts;
    opts.n_max = bk_nmax;
    opts.power.tol = g.tol;
    opts.power.seed = g.seed;
    opts.eps = bk_eps;
    const auto rep = fup::gelfand_bound(map, opts);
    emit(g, json{{"cutoff", fup::to_string(cutoff.kind)},
                 {"outside_smooth_class", cutoff.outside_smooth_class()},
                 {"gelfand", rep}});
  });

  // sweep
  auto* sw = app.add_subcommand("sweep", "Run a parameter grid and write results.jsonl, summary.csv, run.json");
  std::string s_config, s_command, s_cutoff;
  std::vector<std::int64_t> s_m, s_mdelta, s_n;
  std::vector<double> s_delta;
  std::vector<int> s_k;
  std::vector<std::string> s_alpha, s_alphabet;
  std::int64_t s_grid = 0, s_nmax = 0;
  double s_eps = 0.0;
  sw->add_option("--config", s_config, "JSON config; flags override its keys")->check(CLI::ExistingFile);
  sw->add_option("--command", s_command, "beta | theorem1 | theorem2 | dirichlet | baker");
  auto* o_m = sw->add_option("--M", s_m);
  auto* o_alphabet = sw->add_option("--alphabet", s_alphabet, "Letter lists such as 0,2 (repeatable)");
  auto* o_delta = sw->add_option("--delta", s_delta);
  auto* o_mdelta = sw->add_option("--Mdelta", s_mdelta);
  auto* o_k = sw->add_option("--k", s_k);
  auto* o_alpha = sw->add_option("--alpha", s_alpha);
  auto* o_n = sw->add_option("--N", s_n);
  auto* o_grid = sw->add_option("--grid", s_grid);
  auto* o_nmax = sw->add_option("--nmax", s_nmax);
  auto* o_cutoff = sw->add_option("--cutoff", s_cutoff);
  auto* o_eps = sw->add_option("--eps", s_eps);
  sw->callback([&] {
    fup::SweepSpec spec;
    if (!s_config.empty()) spec = fup::sweep_spec_from_json(json::parse(read_file(s_config)));
    if (!s_command.empty()) spec.command = fup::parse_sweep_command(s_command);
    if (o_m->count()) spec.m_values = s_m;
    if (o_alphabet->count()) {
      spec.alphabets.clear();
      for (const auto& a : s_alphabet) spec.alphabets.push_back(parse_ints(a));
    }
    if (o_delta->count()) spec.deltas = s_delta;
    if (o_mdelta->count()) spec.mdeltas = s_mdelta;
    if (o_k->count()) spec.k_values = s_k;
    if (o_alpha->count()) {
      spec.alphas.clear();
      for (const auto& a : s_alpha) spec.alphas.push_back(fup::ExactRational::parse(a));
    }
    if (o_n->count()) spec.n_values = s_n;
    if (o_grid->count()) spec.grid_points = s_grid;
    if (o_nmax->count()) spec.n_max = s_nmax;
    if (o_cutoff->count()) spec.cutoff = s_cutoff;
    if (o_eps->count()) spec.eps = s_eps;
    if (app.get_option("--seed")->count()) spec.seed = g.seed;
    if (app.get_option("--tol")->count()) spec.tol = g.tol;
    if (app.get_option("--threads")->count()) spec.threads = g.threads;
    if (!g.out.empty()) spec.out_dir = g.out;

    const fup::RunRecord rec = fup::run_sweep(spec);
    fup::write_run(spec, rec);
    std::cerr << "sweep " << fup::to_string(spec.command) << ": " << rec.points.size() << " points, "
              << rec.count("ok") << " ok, " << rec.count("skipped") << " skipped, " << rec.count("failed")
              << " failed, " << rec.invariant_failures() << " invariant failures, " << rec.seconds << " s\n";
    for (const auto& pt : rec.points)
      if (pt.status != "ok") std::cerr << "  point " << pt.index << " " << pt.status << ": " << pt.reason << '\n';
    if (rec.invariant_failures() > 0) exit_code = 1;
  });

  // plot
  auto* pl = app.add_subcommand("plot", "Render an SVG from a sweep's results.jsonl");
  std::string p_input, p_kind;
  std::int64_t p_m = 0;
  double p_delta = 0.0;
  pl->add_option("--input", p_input, "results.jsonl or a sweep output directory");
  pl->add_option("--kind", p_kind, "beta-vs-k | gap-vs-N | profile")->required();
  pl->add_option("--M", p_m, "profile without a record");
  pl->add_option("--delta", p_delta, "profile without a record");
  pl->callback([&] {
    const auto kind = fup::parse_plot_kind(p_kind);
    const std::string path = g.out.empty() ? p_kind + ".svg" : g.out;
    if (p_input.empty()) {
      if (kind != fup::PlotKind::kProfile || p_m == 0) throw fup::ParameterError("plot needs --input");
      std::ofstream f(path, std::ios::binary);
      f << fup::render_svg(fup::profile_panels(p_m, p_delta));
      if (!f) throw std::runtime_error("cannot write " + path);
      return;
    }
    std::filesystem::path in = p_input;
    if (std::filesystem::is_directory(in)) in /= "results.jsonl";
    fup::emit_plot(fup::load_results(in), kind, path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const fup::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const fup::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return exit_code;
}
