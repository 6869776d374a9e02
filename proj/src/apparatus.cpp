#include "entropic/apparatus.hpp"

#include <cmath>

#include "entropic/errors.hpp"

namespace entropic {

void MeasurementSetup::validate() const {
  const bool finite = std::isfinite(kappa1) && std::isfinite(kappa2) && std::isfinite(T) &&
                      std::isfinite(sigma1_sq) && std::isfinite(sigma2_sq);
  if (!finite) throw DomainError("measurement setup has non-finite parameters");
  if (!(T > 0.0)) throw DomainError("interaction time must be positive");
  if (!(sigma1_sq > 0.0) || !(sigma2_sq > 0.0)) throw DomainError("pointer variances must be positive");
  if (kappa1 == 0.0 || kappa2 == 0.0) throw DomainError("coupling strengths must be non-zero");
}

NoiseTerms::NoiseTerms(double delta_x, double delta_p) : delta_x_(delta_x), delta_p_(delta_p) {
  if (!(delta_x > 0.0) || !(delta_p > 0.0) || !std::isfinite(delta_x) || !std::isfinite(delta_p)) {
    throw DomainError("noise terms must be positive and finite");
  }
}

bool NoiseTerms::below_floor() const noexcept { return delta_x_ * delta_p_ < kMinimalProduct - 1e-12; }

NoiseTerms noise_terms(const MeasurementSetup& setup) {
  setup.validate();
  // Only κ·T enters.
  const double k1t2 = setup.kappa1 * setup.kappa1 * setup.T * setup.T;
  const double k2t2 = setup.kappa2 * setup.kappa2 * setup.T * setup.T;
  const double dx = std::sqrt(setup.sigma1_sq / k1t2 + k2t2 / (16.0 * setup.sigma2_sq));
  const double dp = std::sqrt(setup.sigma2_sq / k2t2 + k1t2 / (16.0 * setup.sigma1_sq));
  NoiseTerms noise(dx, dp);
  noise.from_setup_ = true;
  return noise;
}

double noise_product(const NoiseTerms& noise) { return noise.delta_x() * noise.delta_p(); }

bool is_minimal_product(const MeasurementSetup& setup, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  setup.validate();
  const double k1t = setup.kappa1 * setup.T;
  const double k2t = setup.kappa2 * setup.T;
  const double target = k1t * k1t * k2t * k2t / 16.0;
  return std::abs(setup.sigma1_sq * setup.sigma2_sq - target) <= tol * target;
}

}  // namespace entropic
