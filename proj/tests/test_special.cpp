#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracle/oracle.hpp"
#include "superosc/special.hpp"

using namespace superosc;

TEST(Erf, AgainstSeriesOracle) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int checked = 0;
  while (checked < 2000) {
    const std::complex<double> z(u(rng), u(rng));
    if (std::abs(z) > 3.0) continue;
    ++checked;
    const auto ref = oracle::erf_series({z.real(), z.imag()});
    const std::complex<double> r(static_cast<double>(ref.real()), static_cast<double>(ref.imag()));
    EXPECT_LE(std::abs(special::erf(z) - r), 1e-13 * std::max(1.0, std::abs(r))) << z;
  }
}

TEST(Erf, AgainstFrozenReference) {
  // mpmath.erf at 40 digits
  struct Row {
    double re, im, want_re, want_im;
  };
  const Row rows[] = {
      {0.5, 0.5, 0.64261291485482052832, 0.45788139443519221584},
      {2, 1, 1.0036063427256517509, -0.011259006028815025076},
      {3.9, 0.2, 1.0000000013572993814, 3.6146566264199168392e-8},
      {4.5, 3, 1.0000010291755813475, 8.6963795559917244145e-7},
      {6, -2, 0.99999999999999923534, 8.16444869943385355e-16},
      {-5, 1, -1.0000000000029597765, -2.8460183820855939314e-12},
      {10, 10, 0.96164937427247485984, -0.01098768460819398838},
      {0.1, 8, 4.3873887588112186629e+26, -7.2402753684506178514e+24},
      {0.001, -0.002, 0.0011283833044904183014, -0.0022567590864395154101},
      {3.5, -3.5, 0.88712927123958427221, -0.015026380322129921374},
      {25, 0.3, 1.0, -5.4930748634182314299e-47},
      {-2, -7, -1444767998537868683.6, 2315600827015349315.9},
  };
  for (const auto& r : rows) {
    const std::complex<double> want(r.want_re, r.want_im);
    const std::complex<double> got = special::erf({r.re, r.im});
    EXPECT_LE(std::abs(got - want), 1e-12 * std::abs(want)) << r.re << "+" << r.im << "i";
  }
}

TEST(Erf, Symmetries) {
  for (double re : {-4.5, -1.0, 0.3, 2.0, 7.0}) {
    for (double im : {-3.0, 0.0, 0.5, 2.5}) {
      const std::complex<double> z(re, im);
      EXPECT_LE(std::abs(special::erf(-z) + special::erf(z)), 1e-15 * std::max(1.0, std::abs(special::erf(z))));
      EXPECT_LE(std::abs(special::erf(std::conj(z)) - std::conj(special::erf(z))),
                1e-15 * std::max(1.0, std::abs(special::erf(z))));
      EXPECT_LE(std::abs(special::erf(z) + special::erfc(z) - 1.0), 1e-14 * std::max(1.0, std::abs(special::erf(z))));
    }
  }
  EXPECT_NEAR(special::erf({1.0, 0.0}).real(), std::erf(1.0), 4e-16);
}

TEST(Sinc, SeriesBranchIsContinuous) {
  for (double y : {1e-5, 9.9e-5, 1.01e-4, 1e-3, 9.9e-3, 1.01e-2, 0.3, 0.99}) {
    EXPECT_NEAR(special::sinc(y), std::sin(y) / y, 4e-16);
    // Long double series with explicit factorials; the closed form cancels badly near 0.
    long double d = 0.0L, fact = 1.0L;
    for (int n = 1; n <= 12; ++n) {
      fact *= (2.0L * n) * (2.0L * n + 1);
      d += (n % 2 ? -1.0L : 1.0L) * 2 * n * std::pow(static_cast<long double>(y), 2 * n - 1) / fact;
    }
    EXPECT_NEAR(special::sinc_derivative(y), static_cast<double>(d), 1e-16 * y);
  }
  for (double y : {0.999, 1.0, 1.001}) {
    const double d = (std::cos(y) * y - std::sin(y)) / (y * y);
    EXPECT_NEAR(special::sinc_derivative(y), d, 1e-15);
  }
  EXPECT_EQ(special::sinc(0.0), 1.0);
  EXPECT_EQ(special::sinc_derivative(0.0), 0.0);
}
