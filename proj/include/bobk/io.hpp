#pragma once

// JSON and CSV encodings shared by the CLI and the tests.

#include <iosfwd>
#include <string>
#include <vector>

#include "bobk/birkhoff.hpp"
#include "bobk/evolution.hpp"
#include "bobk/finite_gap.hpp"
#include "bobk/fourier.hpp"
#include "bobk/spectrum.hpp"
#include "bobk/validation.hpp"

namespace bobk::io {

// {"K": int, "mean": float, "coeffs": [[re, im], ...]}
std::string potential_to_json(const Potential& u);
Potential potential_from_json(const std::string& text);

// {"N": int, "zeta": [[re, im], ...]}
std::string coords_to_json(const BirkhoffCoords& z);
BirkhoffCoords coords_from_json(const std::string& text);

// {"poles": [[re, im], ...]}
std::string finite_gap_to_json(const FiniteGapSpec& spec);
FiniteGapSpec finite_gap_from_json(const std::string& text);

std::string report_to_json(const ValidationReport& rep);

// x,value_re,value_im
void write_grid_csv(std::ostream& os, const GridFunction& g);
// n,lambda,gamma,abs_1_fn,residual for n <= n_max (n_max < 0: trusted range)
void write_spectrum_csv(std::ostream& os, const LaxSpectrum& spec, int n_max = -1);
// n,band_lo,band_hi,gap_after
void write_bands_csv(std::ostream& os, const std::vector<Band>& bands);
// lambda,resolvent_re,product_re,abs_diff
void write_generating_csv(std::ostream& os, const std::vector<double>& lambdas,
                          const std::vector<GeneratingValue>& values);
// t,norm2,mean,H,lambda_0..lambda_n
void write_evolution_csv(std::ostream& os, const EvolutionTrace& trace);
// label,anchor,residual,tol,pass
void write_report_csv(std::ostream& os, const ValidationReport& rep);

// Whole stream or file as a string; "-" or "" means stdin. Throws InputError.
std::string read_input(const std::string& path);
// Writes to the file, or stdout for "-" or "".
void write_output(const std::string& path, const std::string& text);

}  // namespace bobk::io
