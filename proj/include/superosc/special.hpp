#pragma once

#include <complex>

namespace superosc::special {

/// Complex error function. Maclaurin series near the imaginary axis, Laplace
/// continued fraction of erfc (modified Lentz) elsewhere. About 1e-13 relative
/// accuracy for |Re z| <= 8, |Im z| <= 9.
std::complex<double> erf(std::complex<double> z);

/// Complementary error function with the same split.
std::complex<double> erfc(std::complex<double> z);

/// sin(y)/y with the removable singularity filled in.
double sinc(double y);
/// d/dy sinc(y).
double sinc_derivative(double y);

}  // namespace superosc::special
