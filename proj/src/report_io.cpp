#include "necrostab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "necrostab/error.hpp"

namespace necrostab::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

namespace {

std::string json_number(double x) { return std::isfinite(x) ? format_double(x) : "null"; }

template <class T, class F>
std::string json_array(const std::vector<T>& v, F&& item) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += item(v[i]);
  }
  return out + "]";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double read_number(const nlohmann::json& j) {
  if (j.is_null()) return std::nan("");
  return j.get<double>();
}

}  // namespace

std::string spectrum_json(const spectrum::SpectrumReport& r) {
  const auto& p = r.params;
  std::string out = "{\n";
  out += fmt::format(
      "  \"params\": {{\"a\": {}, \"b\": {}, \"sigma_hat\": {}, \"sigma_tilde\": {}, \"g1\": {}, \"gamma\": {}}},\n",
      json_number(p.a), json_number(p.b), json_number(p.sigma_hat), json_number(p.sigma_tilde), json_number(p.g1),
      json_number(r.gamma));
  out += fmt::format("  \"r_star\": {},\n  \"r_s\": {},\n  \"k_s\": {},\n", json_number(r.r_star), json_number(r.r_s),
                     json_number(r.k_s));
  out += fmt::format("  \"kmax\": {},\n", r.kmax);
  out += fmt::format("  \"a\": {},\n", json_array(r.a_values, json_number));
  out += fmt::format("  \"gamma_k\": {},\n", json_array(r.gamma_values, json_number));
  out += fmt::format("  \"gamma_star\": {},\n  \"argmax_k\": {},\n", json_number(r.threshold.gamma_star),
                     r.threshold.argmax_k);
  out += fmt::format("  \"certified\": {},\n  \"tail_bound\": {},\n", r.threshold.certified ? "true" : "false",
                     json_number(r.threshold.tail_bound));
  out += fmt::format("  \"classification\": \"{}\",\n", spectrum::to_string(r.classification));
  out += fmt::format("  \"kernel_degrees\": {}\n", json_array(r.kernel_degrees, [](int k) { return std::to_string(k); }));
  return out + "}\n";
}

spectrum::SpectrumReport parse_spectrum_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    spectrum::SpectrumReport r;
    const auto& p = j.at("params");
    r.params.a = read_number(p.at("a"));
    r.params.b = read_number(p.at("b"));
    r.params.sigma_hat = read_number(p.at("sigma_hat"));
    r.params.sigma_tilde = read_number(p.at("sigma_tilde"));
    r.params.g1 = read_number(p.at("g1"));
    r.gamma = read_number(p.at("gamma"));
    r.params.gamma = r.gamma;
    r.r_star = read_number(j.at("r_star"));
    r.r_s = read_number(j.at("r_s"));
    r.k_s = read_number(j.at("k_s"));
    r.kmax = j.at("kmax").get<int>();
    for (const auto& v : j.at("a")) r.a_values.push_back(read_number(v));
    for (const auto& v : j.at("gamma_k")) r.gamma_values.push_back(read_number(v));
    r.threshold.gamma_star = read_number(j.at("gamma_star"));
    r.threshold.argmax_k = j.at("argmax_k").get<int>();
    r.threshold.kmax = r.kmax;
    r.threshold.certified = j.at("certified").get<bool>();
    r.threshold.tail_bound = read_number(j.at("tail_bound"));
    const auto cls = j.at("classification").get<std::string>();
    if (cls == spectrum::to_string(spectrum::Stability::StableModuloTranslations)) {
      r.classification = spectrum::Stability::StableModuloTranslations;
    } else if (cls == spectrum::to_string(spectrum::Stability::Unstable)) {
      r.classification = spectrum::Stability::Unstable;
    } else if (cls == spectrum::to_string(spectrum::Stability::Critical)) {
      r.classification = spectrum::Stability::Critical;
    } else {
      throw IoError(fmt::format("unknown classification '{}'", cls));
    }
    for (const auto& v : j.at("kernel_degrees")) r.kernel_degrees.push_back(v.get<int>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(fmt::format("malformed spectrum report: {}", e.what()));
  }
}

std::string spectrum_csv(const spectrum::SpectrumReport& r) {
  std::string out = "k,a_k,gamma_k\n";
  for (int k = 0; k <= r.kmax; ++k) {
    const std::string g = k >= 2 ? format_double(r.gamma_values[static_cast<std::size_t>(k - 2)]) : "";
    out += fmt::format("{},{},{}\n", k, format_double(r.a_values[static_cast<std::size_t>(k)]), g);
  }
  return out;
}

std::string stationary_csv(const radial::RadialStationary& s, int n) {
  if (n < 1) throw DomainError("profile needs at least one interval");
  std::string out = "r,sigma,dsigma,pi0,dpi0\n";
  for (int i = 0; i <= n; ++i) {
    const double r = i == n ? s.r_s : s.r_s * i / n;
    const auto sig = s.sigma(r);
    const auto pi = s.pi0(r);
    out += fmt::format("{},{},{},{},{}\n", format_double(r), format_double(sig.value), format_double(sig.derivative),
                       format_double(pi.value), format_double(pi.derivative));
  }
  return out;
}

std::string mode_profile_csv(const modes::ModeSolution& m, int n) {
  if (n < 1) throw DomainError("profile needs at least one interval");
  std::string out = "r,u_k,z_k\n";
  const double lo = m.r_inner(), hi = m.r_outer();
  for (int i = 0; i <= n; ++i) {
    const double r = i == n ? hi : lo + (hi - lo) * i / n;
    out += fmt::format("{},{},{}\n", format_double(r), format_double(m.u(r)), format_double(m.z(r)));
  }
  return out;
}

std::string radius_trace_csv(const dynamics::EvolutionTrace& t) {
  if (t.kind != dynamics::EvolutionTrace::Kind::Radius) throw DomainError("not a radius trace");
  std::string out = "t,R\n";
  for (std::size_t i = 0; i < t.size(); ++i) out += fmt::format("{},{}\n", format_double(t.times[i]), format_double(t.at(i)));
  return out;
}

std::string mode_trace_csv(const dynamics::EvolutionTrace& t) {
  if (t.kind != dynamics::EvolutionTrace::Kind::Modes) throw DomainError("not a mode trace");
  std::string out = "t";
  for (const auto& idx : t.indices) out += fmt::format(",c_{}_{}", idx.k, idx.l);
  out += '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += format_double(t.times[i]);
    for (std::size_t j = 0; j < t.width(); ++j) out += "," + format_double(t.at(i, j));
    out += '\n';
  }
  return out;
}

std::string shape_csv(const std::vector<dynamics::ShapeSample>& samples) {
  std::string out = "theta,phi,r\n";
  for (const auto& s : samples) {
    out += fmt::format("{},{},{}\n", format_double(s.theta), format_double(s.phi), format_double(s.r));
  }
  return out;
}

std::string heleshaw_csv(const spectrum::HeleShawSpectrum& h) {
  std::string out = "k,mu_num,mu_den,mu\n";
  for (std::size_t k = 0; k < h.mu_values.size(); ++k) {
    const auto& mu = h.mu_values[k];
    out += fmt::format("{},{},{},{}\n", k, mu.numerator(), mu.denominator(),
                       format_double(boost::rational_cast<double>(mu)));
  }
  return out;
}

std::string verify_csv(const verify::VerifyReport& r) {
  std::string out = "group,name,measured,tolerance,verdict,detail\n";
  for (const auto& c : r.checks) {
    out += fmt::format("{},{},{},{},{},{}\n", c.group, c.name, format_double(c.measured), format_double(c.tolerance),
                       c.pass ? "pass" : "FAIL", csv_field(c.detail));
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError(fmt::format("cannot open '{}' for writing", tmp));
    f << content;
    f.flush();
    if (!f) throw IoError(fmt::format("write to '{}' failed", tmp));
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError(fmt::format("cannot move '{}' into place", path));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace necrostab::io
