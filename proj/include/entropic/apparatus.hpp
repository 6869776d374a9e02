#pragma once

namespace entropic {

/// Two squeezed-vacuum pointers coupled to x and p for an interaction time T (ħ = 1).
struct MeasurementSetup {
  double kappa1;
  double kappa2;
  double T;
  double sigma1_sq;
  double sigma2_sq;

  /// Throws DomainError unless T, σ₁², σ₂² > 0 and both couplings are non-zero.
  void validate() const;
};

/// Gaussian smoothing widths (δ_X, δ_P) that the apparatus imposes on the inferred densities.
class NoiseTerms {
public:
  /// Products below this are unreachable by any physical setup.
  static constexpr double kMinimalProduct = 0.5;

  /// Direct construction; allows sub-minimal products, which `below_floor` then reports.
  NoiseTerms(double delta_x, double delta_p);

  double delta_x() const noexcept { return delta_x_; }
  double delta_p() const noexcept { return delta_p_; }
  bool from_setup() const noexcept { return from_setup_; }
  /// True when δ_Xδ_P < 1/2 − 1e-12.
  bool below_floor() const noexcept;

  friend NoiseTerms noise_terms(const MeasurementSetup& setup);

private:
  double delta_x_;
  double delta_p_;
  bool from_setup_ = false;
};

NoiseTerms noise_terms(const MeasurementSetup& setup);

double noise_product(const NoiseTerms& noise);

/// |σ₁²σ₂² − κ₁²κ₂²T⁴/16| ≤ tol · κ₁²κ₂²T⁴/16.
bool is_minimal_product(const MeasurementSetup& setup, double tol);

}  // namespace entropic
