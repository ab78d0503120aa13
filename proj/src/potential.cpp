#include "rmt/potential.hpp"

#include <cmath>
#include <sstream>

namespace rmt {

int Potential::degree() const {
  int d = static_cast<int>(coeffs.size()) - 1;
  while (d > 0 && coeffs[d] == 0.0) --d;
  return d;
}

double Potential::operator()(double x) const {
  double s = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * x + *it;
  return s;
}

cplx Potential::operator()(cplx z) const {
  cplx s = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * z + *it;
  return s;
}

double Potential::derivative(double x) const {
  double s = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) s = s * x + k * coeffs[k];
  return s;
}

std::string Potential::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "V[";
  for (std::size_t k = 0; k < coeffs.size(); ++k) os << (k ? "," : "") << coeffs[k];
  os << "]";
  return os.str();
}

double eval_potential(const Potential& p, double x) {
  if (!std::isfinite(x)) fail(ErrorCode::invalid_argument, "non-finite x");
  return p(x);
}

double eval_potential_derivative(const Potential& p, double x) {
  if (!std::isfinite(x)) fail(ErrorCode::invalid_argument, "non-finite x");
  return p.derivative(x);
}

double eval_log_weight(const Potential& p, const EnsembleParams& e, double x) {
  if (!std::isfinite(x)) fail(ErrorCode::invalid_argument, "non-finite x");
  if (x == 0.0) {
    if (e.alpha < 0.0) fail(ErrorCode::domain, "weight has a pole at x = 0 for alpha < 0");
    if (e.alpha > 0.0) return -std::numeric_limits<double>::infinity();
    return -e.n * p(0.0);
  }
  return 2.0 * e.alpha * std::log(std::fabs(x)) - e.n * p(x);
}

std::vector<std::string> validate(const Potential& p) {
  std::vector<std::string> out;
  if (p.coeffs.empty()) {
    out.push_back("potential has no coefficients");
    return out;
  }
  for (double c : p.coeffs)
    if (!std::isfinite(c)) {
      out.push_back("all coefficients must be finite");
      return out;
    }
  const int d = p.degree();
  if (d < 2) out.push_back("degree must be at least 2");
  if (d % 2 != 0) out.push_back("even degree required");
  if (p.coeffs[d] <= 0.0) out.push_back("leading coefficient must be positive");
  return out;
}

std::vector<std::string> validate(const Potential& p, const EnsembleParams& e) {
  auto out = validate(p);
  if (!std::isfinite(e.alpha) || e.alpha <= -0.5) out.push_back("alpha must exceed -1/2");
  if (e.n < 1) out.push_back("n must be at least 1");
  return out;
}

}  // namespace rmt
