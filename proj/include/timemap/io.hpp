#pragma once

#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "timemap/error.hpp"
#include "timemap/solution.hpp"
#include "timemap/spectral.hpp"
#include "timemap/verify.hpp"

namespace timemap {

enum class Format { Csv, Json };

struct Sample {
  double x = 0.0;
  double u = 0.0;
  double du = 0.0;
};

/// n_out + 1 equally spaced samples on [a, b]; the midpoint and b are hit
/// exactly.
template <Profile P>
std::vector<Sample> sample_profile(const P& p, int n_out) {
  if (n_out < 2) throw Error(ErrorCode::InvalidArgument, "need n_out >= 2");
  const ProblemSpec s = p.spec();
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(n_out) + 1);
  for (int j = 0; j <= n_out; ++j) {
    double x = s.a + j * (s.length() / n_out);
    if (2 * j == n_out) x = s.midpoint();
    if (j == n_out) x = s.b;
    out.push_back({x, p.u(x), p.du(x)});
  }
  return out;
}

inline std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline std::string to_csv(const std::vector<Sample>& samples) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "x,u,du\n";
  for (const auto& s : samples) os << s.x << ',' << s.u << ',' << s.du << '\n';
  return os.str();
}

inline nlohmann::json to_json(const ReportThresholds& t) {
  return {{"fd_order_min", t.fd_order_min},
          {"fd_order_max", t.fd_order_max},
          {"shooting_deviation", t.shooting_deviation},
          {"shooting_endpoint", t.shooting_endpoint},
          {"energy_drift", t.energy_drift},
          {"pohozaev", t.pohozaev},
          {"boundary", t.boundary},
          {"apex", t.apex}};
}

namespace detail {

// JSON has no representation for inf/NaN; such residuals become null.
inline nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace detail

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json residuals = nlohmann::json::array();
  for (double v : r.fd_residuals) residuals.push_back(detail::number_or_null(v));
  nlohmann::json orders = nlohmann::json::array();
  for (double v : r.fd_orders) orders.push_back(detail::number_or_null(v));
  return {{"fd_residual_sup", detail::number_or_null(r.fd_residual_sup)},
          {"fd_order_estimate", detail::number_or_null(r.fd_order_estimate)},
          {"fd_residuals", residuals},
          {"fd_orders", orders},
          {"shooting_max_deviation", detail::number_or_null(r.shooting_max_deviation)},
          {"shooting_endpoint_value", detail::number_or_null(r.shooting_endpoint_value)},
          {"energy_drift_sup", detail::number_or_null(r.energy_drift_sup)},
          {"pohozaev_residual", detail::number_or_null(r.pohozaev_residual)},
          {"boundary_residual", detail::number_or_null(r.boundary_residual)},
          {"midpoint_value", detail::number_or_null(r.midpoint_value)},
          {"passed", r.passed},
          {"failures", r.failures},
          {"tolerances", to_json(r.tolerances)}};
}

inline nlohmann::json to_json(const Certificate& c) {
  return {{"dimension", c.dimension},
          {"lambda", c.lambda},
          {"lambda1", c.lambda1},
          {"verdict", std::string(to_string(c.verdict))},
          {"clause", std::string(clause_text(c.clause))},
          {"starshaped_assumed", c.starshaped_assumed}};
}

inline nlohmann::json to_json(const SpectralResult& s) {
  return {{"lambda1", s.lambda1},
          {"method", std::string(to_string(s.method))},
          {"grid_n", s.grid_n ? nlohmann::json(*s.grid_n) : nlohmann::json(nullptr)},
          {"error_estimate", s.error_estimate}};
}

/// Profile document: {a, b, lambda, M, n, tolerance, samples[], residuals?}.
inline nlohmann::json to_json(const SolutionProfile& p, int n_out,
                              const VerificationReport* report = nullptr) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : sample_profile(p, n_out))
    samples.push_back({{"x", s.x}, {"u", s.u}, {"du", s.du}});
  nlohmann::json doc = {{"a", p.spec().a},
                        {"b", p.spec().b},
                        {"lambda", p.spec().lambda},
                        {"M", p.amplitude()},
                        {"n", p.size()},
                        {"tolerance", p.tolerance_budget()},
                        {"samples", samples}};
  if (report != nullptr) doc["residuals"] = to_json(*report);
  return doc;
}

inline std::string export_profile(const SolutionProfile& p, Format format, int n_out,
                                  const VerificationReport* report = nullptr) {
  if (format == Format::Csv) return to_csv(sample_profile(p, n_out));
  return to_json(p, n_out, report).dump(2) + "\n";
}

struct ProfileDocument {
  ProblemSpec spec;
  double M = 0.0;
  int n = 0;
  double tolerance = 0.0;
  std::vector<Sample> samples;
};

/// Parse a profile document. Throws InvalidArgument on schema violations.
inline ProfileDocument parse_profile_document(const nlohmann::json& doc) {
  try {
    ProfileDocument out;
    out.spec = {doc.at("a").get<double>(), doc.at("b").get<double>(),
                doc.at("lambda").get<double>()};
    out.M = doc.at("M").get<double>();
    out.n = doc.at("n").get<int>();
    out.tolerance = doc.at("tolerance").get<double>();
    for (const auto& s : doc.at("samples"))
      out.samples.push_back({s.at("x").get<double>(), s.at("u").get<double>(), s.at("du").get<double>()});
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed profile document: ") + e.what());
  }
}

/// Rebuild the profile described by a document. With the same quadrature
/// configuration the rebuilt profile reproduces the exported samples bit
/// for bit.
inline SolutionProfile rebuild_profile(const ProfileDocument& doc, const QuadratureConfig& cfg = {}) {
  require_admissible(doc.spec);
  return SolutionProfile(doc.spec, doc.M, doc.n, cfg);
}

/// Largest |u - u_rebuilt| or |du - du_rebuilt| over the stored samples.
inline double sample_mismatch(const SolutionProfile& p, const std::vector<Sample>& samples) {
  double worst = 0.0;
  for (const auto& s : samples) {
    const double d = std::max(std::abs(s.u - p.u(s.x)), std::abs(s.du - p.du(s.x)));
    if (!(d <= worst)) worst = d;
  }
  return worst;
}

}  // namespace timemap
