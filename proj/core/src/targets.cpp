#include "sqsp/targets.hpp"

#include <cmath>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "sqsp/chebyshev.hpp"

namespace sqsp {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    throw std::invalid_argument("targets: scale must lie in (0, 1]");
  }
}

void check_trunc_eps(double eps0) {
  if (!(eps0 > 0.0) || !(eps0 < 1.0)) {
    throw std::invalid_argument("targets: trunc_eps must lie in (0, 1)");
  }
}

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FileFormatError("cannot open " + path);
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw FileFormatError(path + ": " + err.what());
  }
}

Parity parse_parity(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("parity") || !j["parity"].is_string()) {
    throw FileFormatError(path + ": missing or non-string \"parity\" field");
  }
  const std::string p = j["parity"].get<std::string>();
  if (p == "even") {
    return Parity::even;
  }
  if (p == "odd") {
    return Parity::odd;
  }
  throw FileFormatError(path + ": parity must be \"even\" or \"odd\"");
}

Eigen::VectorXd parse_number_array(const nlohmann::json& j,
                                   const std::string& key,
                                   const std::string& path) {
  if (!j.contains(key) || !j[key].is_array() || j[key].empty()) {
    throw FileFormatError(path + ": missing or empty \"" + key + "\" array");
  }
  const auto& arr = j[key];
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const auto& entry : arr) {
    if (!entry.is_number()) {
      throw FileFormatError(path + ": non-numeric entry in \"" + key + "\"");
    }
    v[i++] = entry.get<double>();
  }
  return v;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) {
    throw FileFormatError("cannot open " + path + " for writing");
  }
  out << j.dump(2) << "\n";
  if (!out) {
    throw FileFormatError("write failed for " + path);
  }
}

}  // namespace

Eigen::VectorXd bessel_j_sequence(int k_max, double tau) {
  if (k_max < 0) {
    throw std::invalid_argument("bessel_j_sequence: k_max must be >= 0");
  }
  if (!(tau >= 0.0)) {
    throw std::invalid_argument("bessel_j_sequence: tau must be >= 0");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(k_max + 1);
  if (tau == 0.0) {
    out[0] = 1.0;
    return out;
  }
  // The start margin must clear the k ~ tau transition regime, where J_k only
  // decays like Ai(.); sqrt(40 n) keeps the seeding error below 1e-15.
  const int n = std::max(k_max, static_cast<int>(std::ceil(tau)));
  const int start = n + 10 + static_cast<int>(std::ceil(std::sqrt(40.0 * n)));
  std::vector<double> j(start + 2, 0.0);
  j[start] = 1e-30;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = (2.0 * k / tau) * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > 1e250) {
      // Only ratios matter before normalization; shrink the live tail to
      // keep the recurrence inside the representable range.
      for (int i = k - 1; i <= start + 1; ++i) {
        j[i] *= 1e-250;
      }
    }
  }
  double norm = j[0];
  for (int k = 2; k <= start; k += 2) {
    norm += 2.0 * j[k];
  }
  for (int k = 0; k <= k_max; ++k) {
    out[k] = j[k] / norm;
  }
  return out;
}

int jacobi_anger_degree(double tau, double eps0, Parity parity) {
  if (!(tau >= 0.0)) {
    throw std::invalid_argument("jacobi_anger_degree: tau must be >= 0");
  }
  check_trunc_eps(eps0);
  const double raw = M_E * tau / 2.0 + std::log(1.0 / eps0);
  int d = static_cast<int>(std::ceil(raw));
  if (d < 1) {
    d = 1;
  }
  if (d % 2 != parity_bit(parity)) {
    ++d;
  }
  return d;
}

ChebyshevCoeffVector jacobi_anger_cos(double tau, double eps0, double alpha) {
  check_alpha(alpha);
  check_trunc_eps(eps0);
  if (!(tau >= 0.0)) {
    throw std::invalid_argument("jacobi_anger_cos: tau must be >= 0");
  }
  if (tau == 0.0) {
    return {Parity::even, Eigen::VectorXd::Constant(1, alpha)};
  }
  const int d = jacobi_anger_degree(tau, eps0, Parity::even);
  const int m = d / 2 + 1;
  const Eigen::VectorXd bessel = bessel_j_sequence(d, tau);
  Eigen::VectorXd c(m);
  c[0] = bessel[0];
  for (int k = 1; k < m; ++k) {
    c[k] = 2.0 * (k % 2 != 0 ? -1.0 : 1.0) * bessel[2 * k];
  }
  return rescale_to_norm({Parity::even, std::move(c)}, alpha);
}

ChebyshevCoeffVector jacobi_anger_sin(double tau, double eps0, double alpha) {
  check_alpha(alpha);
  check_trunc_eps(eps0);
  if (!(tau >= 0.0)) {
    throw std::invalid_argument("jacobi_anger_sin: tau must be >= 0");
  }
  const int d = jacobi_anger_degree(tau, eps0, Parity::odd);
  const int m = (d + 1) / 2;
  const Eigen::VectorXd bessel = bessel_j_sequence(d, tau);
  Eigen::VectorXd c(m);
  for (int k = 0; k < m; ++k) {
    c[k] = 2.0 * (k % 2 != 0 ? -1.0 : 1.0) * bessel[2 * k + 1];
  }
  return rescale_to_norm({Parity::odd, std::move(c)}, alpha);
}

ChebyshevCoeffVector gaussian_coeffs(double mu, double sigma, int degree,
                                     double alpha) {
  check_alpha(alpha);
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian_coeffs: sigma must be positive");
  }
  if (degree < 2 || degree % 2 != 0) {
    throw std::invalid_argument("gaussian_coeffs: degree must be even and >= 2");
  }
  if (!std::isfinite(mu)) {
    throw std::invalid_argument("gaussian_coeffs: mu must be finite");
  }
  const SampleGrid grid(degree);
  std::vector<double> samples(grid.nodes.size());
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
    const double t = (std::abs(grid.nodes[j]) - mu) / sigma;
    samples[j] = std::exp(-t * t);
  }
  const ChebyshevCoeffVector c =
      coefficients_from_samples(samples, Parity::even);
  return rescale_to_norm(c, alpha);
}

ChebyshevCoeffVector rescale_to_norm(const ChebyshevCoeffVector& c,
                                     double alpha) {
  check_alpha(alpha);
  if (c.size() == 0 || c.coeffs.lpNorm<Eigen::Infinity>() == 0.0) {
    throw std::invalid_argument("rescale_to_norm: zero coefficient vector");
  }
  const double norm = infinity_norm(c);
  return {c.parity, c.coeffs * (alpha / norm)};
}

ChebyshevCoeffVector build_target(const TargetSpec& spec,
                                  bool* norm_exceeds_one) {
  if (norm_exceeds_one != nullptr) {
    *norm_exceeds_one = false;
  }
  switch (spec.kind) {
    case TargetKind::cos_tau:
      return jacobi_anger_cos(spec.tau, spec.trunc_eps, spec.scale);
    case TargetKind::sin_tau:
      return jacobi_anger_sin(spec.tau, spec.trunc_eps, spec.scale);
    case TargetKind::gaussian:
      return gaussian_coeffs(spec.mu, spec.sigma, spec.degree, spec.scale);
    case TargetKind::file:
      return load_coeffs(spec.path, norm_exceeds_one);
  }
  throw std::invalid_argument("build_target: unknown target kind");
}

ChebyshevCoeffVector load_coeffs(const std::string& path,
                                 bool* norm_exceeds_one) {
  const nlohmann::json j = parse_file(path);
  const Parity parity = parse_parity(j, path);
  ChebyshevCoeffVector c(parity, parse_number_array(j, "coeffs", path));
  if (norm_exceeds_one != nullptr) {
    *norm_exceeds_one = infinity_norm(c) > 1.0 + 1e-12;
  }
  return c;
}

void save_coeffs(const std::string& path, const ChebyshevCoeffVector& c) {
  nlohmann::json j;
  j["parity"] = c.parity == Parity::even ? "even" : "odd";
  j["coeffs"] = std::vector<double>(c.coeffs.data(), c.coeffs.data() + c.size());
  write_json(path, j);
}

ReducedPhaseFactors load_phases(const std::string& path) {
  const nlohmann::json j = parse_file(path);
  const Parity parity = parse_parity(j, path);
  return {parity, parse_number_array(j, "reduced_phases", path)};
}

void save_phases(const std::string& path, const ReducedPhaseFactors& phi) {
  nlohmann::json j;
  j["parity"] = phi.parity == Parity::even ? "even" : "odd";
  j["reduced_phases"] = std::vector<double>(
      phi.phases.data(), phi.phases.data() + phi.reduced_size());
  write_json(path, j);
}

}  // namespace sqsp
