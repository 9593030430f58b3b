#pragma once

// Text serialization of reports and traces. Floating values are written with
// 17 significant digits so that a re-read reproduces every double exactly;
// identical inputs give byte-identical output.

#include <string>
#include <vector>

#include "necrostab/dynamics.hpp"
#include "necrostab/modes.hpp"
#include "necrostab/spectrum.hpp"
#include "necrostab/verify.hpp"

namespace necrostab::io {

std::string format_double(double x);

/// {params, r_star, r_s, k_s, kmax, gamma, a, gamma_k, gamma_star, argmax_k,
///  certified, classification, kernel_degrees}
std::string spectrum_json(const spectrum::SpectrumReport& r);
/// Inverse of spectrum_json. Throws IoError on malformed input.
spectrum::SpectrumReport parse_spectrum_json(const std::string& text);

std::string spectrum_csv(const spectrum::SpectrumReport& r);  // k, a_k, gamma_k
/// r, sigma, dsigma, pi0, dpi0 on n + 1 uniform points of [0, R_s].
std::string stationary_csv(const radial::RadialStationary& s, int n);
/// r, u_k, z_k on n + 1 uniform points of [K_s, R_s].
std::string mode_profile_csv(const modes::ModeSolution& m, int n);
std::string radius_trace_csv(const dynamics::EvolutionTrace& t);  // t, R
std::string mode_trace_csv(const dynamics::EvolutionTrace& t);    // t, c_k_l ...
std::string shape_csv(const std::vector<dynamics::ShapeSample>& samples);  // theta, phi, r
std::string heleshaw_csv(const spectrum::HeleShawSpectrum& h);  // k, mu_num, mu_den, mu
std::string verify_csv(const verify::VerifyReport& r);  // group, name, measured, tolerance, verdict, detail

/// Writes to path + ".tmp" and renames over path.
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace necrostab::io
