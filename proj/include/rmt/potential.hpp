// Polynomial confining potential V and the varying weight |x|^{2a} e^{-nV}.
#pragma once

#include <limits>
#include <string>
#include <vector>

#include "rmt/common.hpp"

namespace rmt {

struct Potential {
  std::vector<double> coeffs;  // ascending: coeffs[k] multiplies x^k

  int degree() const;
  double operator()(double x) const;
  double derivative(double x) const;
  cplx operator()(cplx z) const;
  std::string describe() const;
};

struct EnsembleParams {
  double alpha = 0.0;
  int n = 1;
};

double eval_potential(const Potential& p, double x);
double eval_potential_derivative(const Potential& p, double x);

// log w_n(x) = 2 alpha log|x| - n V(x). Returns -inf at x = 0 for alpha > 0.
double eval_log_weight(const Potential& p, const EnsembleParams& e, double x);

// Lists every violated admissibility rule; empty means usable.
std::vector<std::string> validate(const Potential& p, const EnsembleParams& e);
std::vector<std::string> validate(const Potential& p);

}  // namespace rmt
