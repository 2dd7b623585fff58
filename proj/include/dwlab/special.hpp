#pragma once

namespace dwlab {

/// Modified Bessel function I_ell(z), ell >= 0, z >= 0.
/// Power series for z <= 30, exp(z) * bessel_i_scaled(ell, z) above.
/// Throws std::invalid_argument for negative order or argument.
double bessel_i(int ell, double z);

/// exp(-z) * I_ell(z). Series branch for z <= 30; for z > 30 the large-z
/// expansion of exp(-z) I_ell(z) truncated at its smallest term.
double bessel_i_scaled(int ell, double z);

/// I_1(w/2) / w, continued through w = 0 with the value 1/4.
/// Series below w = 1e-3, direct division above.
double i1_over_z(double w);

/// I_2(w/2) / w^2, continued through w = 0 with the value 1/32.
double i2_over_z2(double w);

/// exp(-w/2) * I_1(w/2) / w, stable for all w >= 0.
double i1_over_z_scaled(double w);

/// exp(-w/2) * I_2(w/2) / w^2, stable for all w >= 0.
double i2_over_z2_scaled(double w);

}  // namespace dwlab
