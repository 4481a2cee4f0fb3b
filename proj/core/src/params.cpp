#include "htb/params.hpp"

#include <cmath>
#include <sstream>

#include "htb/errors.hpp"

namespace htb {

namespace {

void require(bool ok, const char* field, double value, const char* constraint) {
  if (ok) return;
  std::ostringstream msg;
  msg << field << " = " << value << " violates " << constraint;
  throw InvalidInputError(msg.str());
}

void require_finite(double value, const char* field) {
  require(std::isfinite(value), field, value, "finiteness");
}

}  // namespace

void HtbParams::validate() const {
  require_finite(sigma, "sigma");
  require_finite(kappa, "kappa");
  require_finite(rho, "rho");
  require_finite(gamma, "gamma");
  require_finite(alpha, "alpha");
  require_finite(x_bar, "x_bar");
  require_finite(beta, "beta");
  require_finite(r, "r");
  require_finite(lambda0, "lambda0");
  require_finite(s0, "s0");
  require_finite(x0, "x0");
  require_finite(lambda_max, "lambda_max");

  require(sigma > 0.0, "sigma", sigma, "sigma > 0");
  require(kappa > 0.0, "kappa", kappa, "kappa > 0");
  require(lambda0 > 0.0, "lambda0", lambda0, "lambda0 > 0");
  require(s0 > 0.0, "s0", s0, "s0 > 0");
  require(std::abs(rho) <= kMaxAbsRho, "rho", rho, "|rho| <= 1 - 1e-6");
  require(gamma >= 0.0 && gamma < 1.0, "gamma", gamma, "0 <= gamma < 1");
  require(alpha >= 0.0, "alpha", alpha, "alpha >= 0");
  require(lambda_max >= lambda0 * std::exp(x0), "lambda_max", lambda_max,
          "lambda_max >= lambda0 * e^{x0}");
}

RiskPremiumSpec RiskPremiumSpec::constant(double c) {
  if (!std::isfinite(c)) throw InvalidInputError("risk premium coefficient c must be finite");
  return RiskPremiumSpec(Kind::kConstant, c, 0.0);
}

RiskPremiumSpec RiskPremiumSpec::affine_in_x(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw InvalidInputError("risk premium coefficients a, b must be finite");
  return RiskPremiumSpec(Kind::kAffineInX, a, b);
}

double RiskPremiumSpec::operator()(double /*t*/, double x, double /*s*/) const {
  switch (kind_) {
    case Kind::kZero:
      return 0.0;
    case Kind::kConstant:
      return a_;
    case Kind::kAffineInX:
      return a_ + b_ * x;
  }
  return 0.0;  // unreachable
}

std::string RiskPremiumSpec::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::kZero:
      out << "zero";
      break;
    case Kind::kConstant:
      out << "constant(" << a_ << ")";
      break;
    case Kind::kAffineInX:
      out << "affine_in_x(" << a_ << "," << b_ << ")";
      break;
  }
  return out.str();
}

}  // namespace htb
