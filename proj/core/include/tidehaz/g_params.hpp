#pragma once

namespace tidehaz {

/// Site constants for the G method: the decaying proxy tsunami and the
/// regression that maps its amplitude to a Gaussian (xi0, sigma).
/// Defaults are the Crescent City values.
struct GMethodParams {
  double sigma0 = 0.638;       ///< tide standard deviation, m
  double alpha = 0.17;
  double beta = 0.858;
  double C = 1.044;
  double alpha_prime = 0.056;
  double beta_prime = 1.119;
  double C_prime = 0.707;
  double xi_ref = -1.13;       ///< reference level for amplitudes, m (MLLW)
  double subsidence = 0.0;     ///< S, m, positive for subsidence
  int duration_minutes = 7200; ///< T_G
  double period_minutes = 20.0;
  double efold_minutes = 2880.0;

  /// Throws std::invalid_argument unless sigma0, T_G, period and e-folding
  /// time are positive.
  void validate() const;
};

} // namespace tidehaz
