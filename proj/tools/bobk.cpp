// bobk: command-line front end for the Birkhoff map of the Benjamin-Ono equation.
//
// Exit codes: 0 success, 1 a validation check failed, 2 bad input,
// 3 numerical failure (no convergence, accuracy guard).

#include <cmath>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bobk/birkhoff.hpp"
#include "bobk/errors.hpp"
#include "bobk/evolution.hpp"
#include "bobk/finite_gap.hpp"
#include "bobk/inverse.hpp"
#include "bobk/io.hpp"
#include "bobk/spectrum.hpp"
#include "bobk/validation.hpp"

using namespace bobk;

namespace {

struct Common {
  std::string in = "-";
  std::string out = "-";
  std::string format = "json";
  int nmax = 32;
  double tol = 1e-10;
  int M = 0;
};

void add_common(CLI::App* sub, Common& c, bool csv_default = false) {
  if (csv_default) c.format = "csv";
  sub->add_option("--in", c.in, "Input file (default stdin)");
  sub->add_option("--out", c.out, "Output file (default stdout)");
  sub->add_option("--format", c.format, "Output encoding")->check(CLI::IsMember({"json", "csv"}));
}

// "0.5", "-0.3+0.2i", "0.1-0.4i", "0.25i"
cplx parse_complex(const std::string& s) {
  static const std::regex re(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i)?\s*$)");
  static const std::regex pure(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*i\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, pure)) return {0.0, std::stod(m[1])};
  if (std::regex_match(s, m, re) && m[1].matched) {
    const double re_part = std::stod(m[1]);
    double im = 0.0;
    if (m[2].matched) {
      im = m[3].matched ? std::stod(m[3]) : 1.0;
      if (m[2] == "-") im = -im;
    }
    return {re_part, im};
  }
  throw InputError("cannot parse complex number '" + s + "'");
}

std::string spectrum_json(const LaxSpectrum& s, int n_max) {
  std::ostringstream os;
  os.precision(17);
  os << "{\n  \"M\": " << s.M << ",\n  \"n_trusted\": " << s.n_trusted << ",\n  \"lambda\": [";
  for (int n = 0; n <= n_max; ++n) os << (n ? ", " : "") << s.lambdas[n];
  os << "],\n  \"gamma\": [";
  for (int n = 1; n <= n_max; ++n) os << (n > 1 ? ", " : "") << s.gaps[n];
  os << "]\n}\n";
  return os.str();
}

Potential read_potential(const std::string& path) { return io::potential_from_json(io::read_input(path)); }

Potential centered(Potential u) {
  u.mean = 0.0;
  return u;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff coordinates for the Benjamin-Ono equation on the torus"};
  app.require_subcommand(1);

  // transform
  Common tr;
  auto* transform = app.add_subcommand("transform", "Potential JSON -> Birkhoff coordinates JSON");
  add_common(transform, tr);
  transform->add_option("--nmax", tr.nmax, "Highest coordinate index");
  transform->add_option("--tol", tr.tol, "Eigenvalue convergence tolerance");
  double trim = 1e-10;
  transform->add_option("--trim", trim, "Drop trailing |zeta_n| below this");

  // inverse
  Common inv;
  auto* inverse = app.add_subcommand("inverse", "Birkhoff coordinates JSON -> potential JSON");
  add_common(inverse, inv);
  int inv_K = 0;
  std::string method = "determinant";
  ResolventOptions ro;
  inverse->add_option("--K", inv_K, "Harmonics in the output (0: automatic)");
  inverse->add_option("--method", method, "determinant or resolvent")
      ->check(CLI::IsMember({"determinant", "resolvent"}));
  inverse->add_option("--radius", ro.radius, "Sampling radius for the resolvent method");
  inverse->add_option("--samples", ro.samples, "Sample count for the resolvent method");

  // spectrum
  Common sp;
  auto* spectrum = app.add_subcommand("spectrum", "Lax spectrum, band report or generating-function sweep");
  add_common(spectrum, sp, true);
  spectrum->add_option("--nmax", sp.nmax, "Highest eigenvalue index");
  spectrum->add_option("--tol", sp.tol, "Eigenvalue convergence tolerance");
  spectrum->add_option("--M", sp.M, "Initial truncation (0: automatic)");
  bool bands = false;
  std::vector<double> sweep;
  spectrum->add_flag("--bands", bands, "Band report instead of the eigenvalue table");
  spectrum->add_option("--sweep", sweep, "lo hi count: H_lambda at equispaced real lambda")->expected(3);

  // gen
  Common gn;
  auto* gen = app.add_subcommand("gen", "Finite-gap potential from poles (or a FiniteGapSpec JSON via --in)");
  gen->add_option("--out", gn.out, "Output file (default stdout)");
  std::string gen_in;
  std::vector<std::string> poles;
  int gen_K = 0;
  gen->add_option("--in", gen_in, "FiniteGapSpec JSON file");
  gen->add_option("--poles", poles, "Poles q_j with 0 < |q_j| < 1, e.g. 0.5 or 0.3+0.2i");
  gen->add_option("--K", gen_K, "Harmonics (0: automatic)");

  // evolve
  Common ev;
  auto* evolve = app.add_subcommand("evolve", "Benjamin-Ono flow of a potential");
  add_common(evolve, ev, true);
  double T = 1.0;
  DirectConfig dc;
  dc.snapshots = 10;
  dc.spectrum_nmax = -1;
  std::string ev_method = "direct";
  evolve->add_option("--T", T, "Final time");
  evolve->add_option("--dt", dc.dt, "Time step (0: automatic)");
  evolve->add_option("--grid", dc.grid, "Physical grid size, a power of two (0: automatic)");
  evolve->add_option("--snapshots", dc.snapshots, "Checkpoints after t = 0");
  evolve->add_option("--nmax", dc.spectrum_nmax, "Track lambda_0..lambda_nmax at checkpoints (-1: off)");
  evolve->add_option("--method", ev_method, "direct or quadrature")->check(CLI::IsMember({"direct", "quadrature"}));

  // validate
  Common va;
  auto* validate = app.add_subcommand("validate", "Run validation suites");
  add_common(validate, va);
  std::string suite = "all";
  SuiteConfig sc;
  int corpus = sc.corpus;
  validate->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(suite_names()));
  validate->add_option("--seed", sc.seed, "Random seed for generated fixtures");
  validate->add_option("--corpus", corpus, "Random potentials per corpus suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*transform) {
      const Potential u = centered(read_potential(tr.in));
      const BirkhoffCoords z = forward_map(u.trimmed(), tr.nmax, tr.tol).trimmed(trim);
      if (tr.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "n,zeta_re,zeta_im,gamma\n";
        for (int n = 1; n <= z.N(); ++n)
          os << n << ',' << z.at(n).real() << ',' << z.at(n).imag() << ',' << z.gamma(n) << '\n';
        io::write_output(tr.out, os.str());
      } else {
        io::write_output(tr.out, io::coords_to_json(z));
      }
    } else if (*inverse) {
      const BirkhoffCoords z = io::coords_from_json(io::read_input(inv.in));
      Potential u;
      if (method == "resolvent") {
        ro.K = inv_K;
        u = reconstruct_resolvent(z, ro);
      } else {
        u = reconstruct_finite_gap(z, inv_K);
      }
      if (inv.format == "csv") {
        std::ostringstream os;
        io::write_grid_csv(os, synthesize(u, std::max(64, next_pow2(2 * u.K() + 2))));
        io::write_output(inv.out, os.str());
      } else {
        io::write_output(inv.out, io::potential_to_json(u));
      }
    } else if (*spectrum) {
      const Potential u = read_potential(sp.in);
      SpectrumOptions so;
      so.M0 = sp.M;
      const LaxSpectrum s = compute_spectrum(u, sp.nmax, sp.tol, so);
      std::ostringstream os;
      if (!sweep.empty()) {
        const int count = static_cast<int>(sweep[2]);
        if (count < 1) throw InputError("--sweep needs a positive count");
        std::vector<double> lambdas;
        std::vector<GeneratingValue> values;
        for (int i = 0; i < count; ++i) {
          const double l = count == 1 ? sweep[0] : sweep[0] + (sweep[1] - sweep[0]) * i / (count - 1);
          lambdas.push_back(l);
          values.push_back(generating_function(u, s, l));
        }
        io::write_generating_csv(os, lambdas, values);
      } else if (bands) {
        io::write_bands_csv(os, band_report(s));
      } else if (sp.format == "json") {
        os << spectrum_json(s, sp.nmax);
      } else {
        io::write_spectrum_csv(os, s, sp.nmax);
      }
      io::write_output(sp.out, os.str());
    } else if (*gen) {
      FiniteGapSpec spec;
      if (!gen_in.empty()) spec = io::finite_gap_from_json(io::read_input(gen_in));
      for (const auto& p : poles) spec.poles.push_back(parse_complex(p));
      io::write_output(gn.out, io::potential_to_json(from_poles(spec, gen_K)));
    } else if (*evolve) {
      const Potential u0 = read_potential(ev.in);
      EvolutionTrace trace;
      if (ev_method == "direct") {
        trace = evolve_direct(u0, T, dc);
      } else {
        const BirkhoffCoords z0 = forward_map(centered(u0).trimmed(), 32).trimmed(1e-12);
        const int snaps = std::max(dc.snapshots, 1);
        for (int i = 0; i <= snaps; ++i) {
          const double t = T * i / snaps;
          Potential u = reconstruct_finite_gap(evolve_quadrature(z0, t));
          u.mean = u0.mean;
          Diagnostics d{u.norm2(), u.mean, hamiltonian_direct(u), {}};
          if (dc.spectrum_nmax >= 0) {
            const LaxSpectrum s = compute_spectrum(u, dc.spectrum_nmax, 1e-11);
            d.lambdas.assign(s.lambdas.begin(), s.lambdas.begin() + dc.spectrum_nmax + 1);
          }
          trace.times.push_back(t);
          trace.states.push_back(u);
          trace.diagnostics.push_back(d);
        }
        trace.config = dc;
      }
      if (ev.format == "csv") {
        std::ostringstream os;
        io::write_evolution_csv(os, trace);
        io::write_output(ev.out, os.str());
      } else {
        std::string text = "[\n";
        for (size_t i = 0; i < trace.states.size(); ++i) {
          std::ostringstream os;
          os.precision(17);
          os << "{\"t\": " << trace.times[i] << ", \"state\": " << io::potential_to_json(trace.states[i]) << "}";
          text += os.str() + (i + 1 < trace.states.size() ? ",\n" : "\n");
        }
        io::write_output(ev.out, text + "]\n");
      }
    } else if (*validate) {
      sc.corpus = corpus;
      if (validate->count("--in")) sc.extra.push_back(centered(read_potential(va.in)));
      const ValidationReport rep = run_suite(suite, sc);
      std::ostringstream os;
      if (va.format == "csv")
        io::write_report_csv(os, rep);
      else
        os << io::report_to_json(rep);
      io::write_output(va.out, os.str());
      if (!rep.passed()) {
        for (const auto& c : rep.sorted())
          if (!c.pass) std::cerr << "FAIL " << c.label << ": residual " << c.residual << " > " << c.tol << '\n';
        return 1;
      }
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
