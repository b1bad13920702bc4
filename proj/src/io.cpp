#include "bobk/io.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "bobk/errors.hpp"

namespace bobk::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const size_t stop = std::min<size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    int line = 1, column = 1;
    for (size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON", line, column);
  }
}

json complex_array(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back({c.real(), c.imag()});
  return a;
}

std::vector<cplx> complex_from(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array())
    throw InputError(std::string("field '") + field + "' must be an array of [re, im] pairs");
  std::vector<cplx> out;
  for (const auto& e : j[field]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw InputError(std::string("entries of '") + field + "' must be [re, im] pairs");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

void check_count(const json& j, const char* field, size_t n) {
  if (!j.contains(field)) return;
  if (!j[field].is_number_integer() || j[field].get<long long>() != static_cast<long long>(n))
    throw InputError(std::string("field '") + field + "' disagrees with the array length");
}

void require_object(const json& j) {
  if (!j.is_object()) throw InputError("expected a JSON object");
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

std::string potential_to_json(const Potential& u) {
  json j;
  j["K"] = u.K();
  j["mean"] = u.mean;
  j["coeffs"] = complex_array(u.coeffs);
  return j.dump(2) + "\n";
}

Potential potential_from_json(const std::string& text) {
  const json j = parse(text);
  require_object(j);
  Potential u;
  if (j.contains("mean")) {
    if (!j["mean"].is_number()) throw InputError("field 'mean' must be a number");
    u.mean = j["mean"].get<double>();
  }
  u.coeffs = complex_from(j, "coeffs");
  check_count(j, "K", u.coeffs.size());
  return u;
}

std::string coords_to_json(const BirkhoffCoords& z) {
  json j;
  j["N"] = z.N();
  j["zeta"] = complex_array(z.zeta);
  return j.dump(2) + "\n";
}

BirkhoffCoords coords_from_json(const std::string& text) {
  const json j = parse(text);
  require_object(j);
  BirkhoffCoords z(complex_from(j, "zeta"));
  check_count(j, "N", z.zeta.size());
  return z;
}

std::string finite_gap_to_json(const FiniteGapSpec& spec) {
  json j;
  j["poles"] = complex_array(spec.poles);
  return j.dump(2) + "\n";
}

FiniteGapSpec finite_gap_from_json(const std::string& text) {
  const json j = parse(text);
  require_object(j);
  FiniteGapSpec spec{complex_from(j, "poles")};
  spec.validate();
  return spec;
}

std::string report_to_json(const ValidationReport& rep) {
  json j;
  j["suite"] = rep.suite;
  j["seed"] = rep.seed;
  j["M"] = rep.M;
  j["G"] = rep.G;
  j["passed"] = rep.passed();
  json checks = json::array();
  for (const auto& c : rep.sorted())
    checks.push_back({{"label", c.label}, {"anchor", c.anchor}, {"residual", c.residual}, {"tol", c.tol},
                      {"pass", c.pass}});
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

void write_grid_csv(std::ostream& os, const GridFunction& g) {
  os << "x,value_re,value_im\n";
  for (int j = 0; j < g.G(); ++j)
    os << fmt(g.x(j)) << ',' << fmt(g.values[j].real()) << ',' << fmt(g.values[j].imag()) << '\n';
}

void write_spectrum_csv(std::ostream& os, const LaxSpectrum& spec, int n_max) {
  if (n_max < 0) n_max = spec.n_trusted;
  os << "n,lambda,gamma,abs_1_fn,residual\n";
  for (int n = 0; n <= n_max && n <= spec.M; ++n)
    os << n << ',' << fmt(spec.lambdas[n]) << ',' << fmt(n == 0 ? 0.0 : spec.gaps[n]) << ','
       << fmt(std::abs(spec.one_fn(n))) << ',' << fmt(spec.residuals[n]) << '\n';
}

void write_bands_csv(std::ostream& os, const std::vector<Band>& bands) {
  os << "n,band_lo,band_hi,gap_after\n";
  for (const auto& b : bands) os << b.n << ',' << fmt(b.lo) << ',' << fmt(b.hi) << ',' << fmt(b.gap_after) << '\n';
}

void write_generating_csv(std::ostream& os, const std::vector<double>& lambdas,
                          const std::vector<GeneratingValue>& values) {
  os << "lambda,resolvent_re,product_re,abs_diff\n";
  for (size_t i = 0; i < values.size(); ++i)
    os << fmt(lambdas[i]) << ',' << fmt(values[i].resolvent) << ',' << fmt(values[i].product) << ','
       << fmt(values[i].abs_diff) << '\n';
}

void write_evolution_csv(std::ostream& os, const EvolutionTrace& trace) {
  const size_t nl = trace.diagnostics.empty() ? 0 : trace.diagnostics.front().lambdas.size();
  os << "t,norm2,mean,H";
  for (size_t n = 0; n < nl; ++n) os << ",lambda_" << n;
  os << '\n';
  for (size_t i = 0; i < trace.times.size(); ++i) {
    const Diagnostics& d = trace.diagnostics[i];
    os << fmt(trace.times[i]) << ',' << fmt(d.norm2) << ',' << fmt(d.mean) << ',' << fmt(d.hamiltonian);
    for (double l : d.lambdas) os << ',' << fmt(l);
    os << '\n';
  }
}

void write_report_csv(std::ostream& os, const ValidationReport& rep) {
  os << "label,anchor,residual,tol,pass\n";
  const auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  for (const auto& c : rep.sorted())
    os << quote(c.label) << ',' << quote(c.anchor) << ',' << fmt(c.residual) << ',' << fmt(c.tol) << ','
       << (c.pass ? "true" : "false") << '\n';
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-")
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace bobk::io
