// Runs the acceptance checks and prints one PASS/FAIL line each.
// Exit status is the number of failing checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracle/oracle.hpp"
#include "superosc/bandlimited.hpp"
#include "superosc/criteria.hpp"
#include "superosc/scanner.hpp"
#include "superosc/wavenumber.hpp"

using namespace superosc;
using std::numbers::pi;

namespace {

// Collects failures with a short reason; the first few are printed.
struct Check {
  int failures = 0;
  std::vector<std::string> notes;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (notes.size() < 4) notes.push_back(what);
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string num(double v) { return fmt("(%.17g)", v); }

// 1. (cos x)^2 on [0, a pi/2]: a_0 = a pi/4, a_a = a pi/8, the rest vanish.
void closed_form(Check& ck) {
  const auto f = compile("cos(x)^2");
  double worst = 0.0, worst_q = 0.0;
  for (int a = 1; a <= 4; ++a) {
    const auto s = cosine_spectrum(f, Interval(0, a * pi / 2));
    for (int k = 0; k <= s.k_max; ++k) {
      const double want = k == 0 ? a * pi / 4 : k == a ? a * pi / 8 : 0.0;
      const double err = std::abs(s.coefficient(k) - want);
      worst = std::max(worst, err);
      ck.expect(err <= 1e-9, fmt("alpha=%g k=%g err=%.3g", a, k, err));
    }
    const auto q = q_value(s);
    const double qerr = q.q ? std::abs(*q.q) : 1.0;
    worst_q = std::max(worst_q, qerr);
    ck.expect(q.q && qerr <= 1e-8, fmt("alpha=%g Q=%.3g", a, qerr));
  }
  ck.summary = fmt("max coeff err %.2g, max |Q| %.2g", worst, worst_q);
}

// 2. B = 2, b = a pi/2 gives k0 = a + 1.
void k0_rule(Check& ck) {
  for (int a = 1; a <= 100; ++a) {
    const int k0 = k0_index(2.0, Interval(0, a * pi / 2));
    ck.expect(k0 == a + 1, fmt("alpha=%g k0=%g", a, k0));
  }
  ck.summary = "alpha = 1..100";
}

// 3. h(1,2): k(x) = 2 everywhere, no flag, but Q_sin = 1 on [pi/2, 3 pi/4].
void h_discrepancy(Check& ck) {
  const auto h = compile("h(1,2)");
  const auto r = wavenumber_report(*h.trig_polynomial(), Interval(0, pi), 1000);
  double worst = 0.0;
  for (const auto& [x, k] : r.samples) worst = std::max(worst, std::abs(k - 2.0));
  ck.expect(r.samples.size() == 1000, fmt("%g samples retained", r.samples.size()));
  ck.expect(worst <= 1e-10, fmt("max |k - 2| = %.3g", worst));
  ck.expect(!r.flags_superoscillation, "wavenumber flag set");
  const auto q = check_sine_criterion(h, 0.0, Interval(pi / 2, 3 * pi / 4));
  ck.expect(q.q && std::abs(*q.q - 1.0) <= 1e-8 && q.passes, fmt("Q_sin = %.12g", q.q.value_or(-1)));
  ck.summary = fmt("max |k-2| %.2g, Q_sin %.12g", worst, q.q.value_or(-1));
}

// 4. hs(s,1): k <= 1 on 10^4 samples; Q_cos = 1 up to the first extremum
// past 0 and < 1/2 on [0, pi].
void hs_bound(Check& ck) {
  std::string detail;
  for (double s : {0.25, 0.5, 0.75}) {
    const auto f = compile("hs(" + num(s) + ",1)");
    const auto sig = analytic_signal(*f.trig_polynomial());
    double sup = -1e300;
    for (int i = 0; i < 10000; ++i) sup = std::max(sup, local_wavenumber(sig, -pi + 2 * pi * i / 9999.0));
    ck.expect(sup <= 1.0 + 1e-9, fmt("s=%g sup k=%.12g", s, sup));
    const auto r = wavenumber_report(*f.trig_polynomial(), Interval(-pi, pi), 10000);
    ck.expect(!r.flags_superoscillation, fmt("s=%g flagged", s));
    // the first extremum is arccos s (pi/3 for s = 1/2)
    const double b = s == 0.5 ? pi / 3 : std::acos(s);
    const auto near = check_cosine_criterion(f, Interval(0, b));
    ck.expect(near.q && std::abs(*near.q - 1.0) <= 1e-8, fmt("s=%g Q_cos(first) = %.12g", s, near.q.value_or(-1)));
    const auto far = check_cosine_criterion(f, Interval(0, pi));
    ck.expect(far.q && *far.q < 0.5, fmt("s=%g Q_cos(pi) = %.6g", s, far.q.value_or(-1)));
    detail += fmt("s=%g sup k %.6f Q(pi) %.3g; ", s, sup, far.q.value_or(-1));
  }
  ck.summary = detail.substr(0, detail.size() - 2);
}

// 5. hs(1/2,1): Q_cos rises again at 5 pi/3 and 7 pi/3.
void hs_onset(Check& ck) {
  const auto f = compile("hs(0.5,1)");
  auto q = [&](double b) { return check_cosine_criterion(f, Interval(0, b)).q.value_or(-1); };
  const double m1 = q(5 * pi / 3) - q(pi);
  const double m2 = q(7 * pi / 3) - q(2 * pi);
  ck.expect(m1 > 0.01, fmt("Q(5pi/3) - Q(pi) = %.4g", m1));
  ck.expect(m2 > 0.01, fmt("Q(7pi/3) - Q(2pi) = %.4g", m2));
  ck.summary = fmt("margins %.4f, %.4f", m1, m2);
}

// 6. sinc, sinc^2 fail at each of the first four extrema; pure tones give Q = 0.
void negative_controls(Check& ck) {
  double worst_sinc = 0.0;
  for (const char* text : {"sinc(x)", "sinc(x)^2"}) {
    const auto f = compile(text);
    const Interval range(0.1, 20);
    const auto ext = find_extrema(f, range, default_root_step(f.band_edge(), range));
    ck.expect(ext.points.size() >= 4, std::string(text) + ": fewer than four extrema");
    for (std::size_t i = 0; i < 4 && i < ext.points.size(); ++i) {
      const auto r = check_cosine_criterion(f, Interval(0, ext.points[i]));
      worst_sinc = std::max(worst_sinc, r.q.value_or(1));
      ck.expect(r.q && *r.q < 0.5, std::string(text) + fmt(" b=%.6g Q=%.6g", ext.points[i], r.q.value_or(-1)));
    }
  }
  double worst_tone = 0.0;
  int intervals = 0;
  for (const char* text : {"sin(x)", "cos(x)"}) {
    const auto f = compile(text);
    const Interval range(-10, 10);
    const double step = default_root_step(1.0, range);
    const auto zeros = find_roots(f, 0.0, range, step).points;
    const auto ext = find_extrema(f, range, step).points;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      for (std::size_t j = i + 1; j < zeros.size(); ++j) {
        const auto r = check_sine_criterion(f, 0.0, Interval(zeros[i], zeros[j]));
        worst_tone = std::max(worst_tone, r.q.value_or(1));
        ++intervals;
      }
    }
    for (std::size_t i = 0; i < ext.size(); ++i) {
      for (std::size_t j = i + 1; j < ext.size(); ++j) {
        const auto r = check_cosine_criterion(f, Interval(ext[i], ext[j]));
        worst_tone = std::max(worst_tone, r.q.value_or(1));
        ++intervals;
      }
    }
  }
  ck.expect(worst_tone <= 1e-8, fmt("pure tone Q = %.3g", worst_tone));
  ck.summary = fmt("max sinc Q %.4f, max tone Q %.2g over %g intervals", worst_sinc, worst_tone, intervals);
}

// 7. Scan profiles from 0: first point passes, two-fails stop within 40 points,
// every Q within 1e-6 of the quadrature oracle.
void catalog_profiles(Check& ck) {
  struct Case {
    const char* text;
    CriterionMode mode;
  };
  const Case cases[] = {{"im(g(2,10))", CriterionMode::Sine},         {"im(g(2,20))", CriterionMode::Sine},
                        {"re(g(2,10))", CriterionMode::Cosine},       {"re(g(2,20))", CriterionMode::Cosine},
                        {"im(g(2,20)+g(3,20))", CriterionMode::Sine}, {"im(F(1,0.2))", CriterionMode::Sine},
                        {"re(F(1,0.2))", CriterionMode::Cosine},      {"G(1,1)", CriterionMode::Sine}};
  double worst = 0.0;
  int points = 0;
  for (const auto& cs : cases) {
    const auto f = compile(cs.text);
    auto g = [&](double x) { return f.real(x); };
    const auto p = scan_profile(f, 0.0, cs.mode, 0.0, Direction::Right);
    const std::string name = cs.text;
    ck.expect(!p.points.empty() && p.points.front().passes, name + ": first point fails");
    ck.expect(p.stop_reason == StopReason::ConsecutiveFails && p.points.size() <= 40,
              name + fmt(": stopped after %g points without two fails", p.points.size()));
    for (const auto& pt : p.points) {
      const double ref = cs.mode == CriterionMode::Sine ? oracle::q_sine(g, 0.0, 0.0, pt.b, f.band_edge())
                                                        : oracle::q_cosine(g, 0.0, pt.b, f.band_edge());
      const double err = pt.q ? std::abs(*pt.q - ref) : 1.0;
      worst = std::max(worst, err);
      ++points;
      ck.expect(err <= 1e-6, name + fmt(": b=%.6g Q=%.9g oracle=%.9g", pt.b, pt.q.value_or(-1), ref));
    }
  }
  ck.summary = fmt("%g profile points, max |Q - oracle| %.2g", points, worst);
}

// 8. Odd/even functions: Q over [0, b] and [-b, b] agree.
void symmetric_intervals(Check& ck) {
  const auto odd = compile("im(g(2,10))");
  const auto even = compile("re(g(2,10))");
  const Interval range(0.05, 20);
  const auto zeros = find_roots(odd, 0.0, range, default_root_step(1.0, range)).points;
  const auto ext = find_extrema(even, range, default_root_step(1.0, range)).points;
  ck.expect(zeros.size() >= 3 && ext.size() >= 3, "too few zeros or extrema");
  double worst = 0.0;
  for (std::size_t i = 0; i < 3 && i < zeros.size() && i < ext.size(); ++i) {
    const double b = zeros[i];
    const double d1 = std::abs(check_sine_criterion(odd, 0.0, Interval(0, b)).q.value_or(-1) -
                               check_sine_criterion(odd, 0.0, Interval(-b, b)).q.value_or(2));
    const double e = ext[i];
    const double d2 = std::abs(check_cosine_criterion(even, Interval(0, e)).q.value_or(-1) -
                               check_cosine_criterion(even, Interval(-e, e)).q.value_or(2));
    worst = std::max({worst, d1, d2});
    ck.expect(d1 <= 1e-8, fmt("Q_sin at b=%.6g differs by %.3g", b, d1));
    ck.expect(d2 <= 1e-8, fmt("Q_cos at b=%.6g differs by %.3g", e, d2));
  }
  ck.summary = fmt("max difference %.2g", worst);
}

TrigPolynomial random_trig(std::mt19937& rng) {
  // dyadic amplitudes keep the algebra exact
  std::uniform_int_distribution<int> amp(-64, 64), freq(1, 40), count(1, 6);
  TrigPolynomial v(amp(rng) / 16.0);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) v.add_term(freq(rng) / 4.0, amp(rng) / 16.0, amp(rng) / 16.0);
  return v;
}

// 9. H[H[v]] = -(v - mean) termwise; the analytic signal of h(1,2) is u2.
void hilbert_algebra(Check& ck) {
  std::mt19937 rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto v = random_trig(rng);
    const auto hh = hilbert_transform(hilbert_transform(v));
    ck.expect(hh == -(v - TrigPolynomial(v.constant())), fmt("polynomial %g: involution fails", i));
  }
  const auto s = analytic_signal(*compile("h(1,2)").trig_polynomial());
  const std::vector<ExponentialSum::Term> u2 = {{1.0, {0.5, 0.0}}, {3.0, {0.5, 0.0}}};
  ck.expect(s.u.terms == u2, "analytic signal of h(1,2) differs from (e^{3ix} + e^{ix}) / 2");
  ck.summary = "100 random polynomials, h(1,2) coefficients exact";
}

// 10. g(x,2,N) -> e^{2ix} on [-1, 1].
void convergence(Check& ck) {
  double prev = 1e300;
  std::string trail;
  for (int n : {10, 20, 40, 80}) {
    const double d = sequence_distance(2.0, n, -1.0, 1.0);
    ck.expect(d < prev, fmt("N=%g distance %.4g not below %.4g", n, d, prev));
    trail += fmt("%.3g ", d);
    prev = d;
  }
  const auto g = compile("g(2,1000)");
  double sup = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double x = -1.0 + 2.0 * i / 20000;
    sup = std::max(sup, std::abs(g(x) - std::exp(std::complex<double>(0.0, 2.0 * x))));
  }
  ck.expect(sup < 0.01, fmt("N=1000 distance %.4g", sup));
  ck.summary = "distances " + trail + fmt("; N=1000 %.3g", sup);
}

struct Tone {
  double w, a, b;
};

struct RandomPoly {
  double constant;
  std::vector<Tone> tones;

  std::string text(const std::string& arg = "x", double scale = 1.0, double offset = 0.0) const {
    std::string s = num(scale * constant + offset);
    for (const auto& t : tones) {
      s += " + " + num(scale * t.a) + "*cos(" + num(t.w) + "*" + arg + ")";
      s += " + " + num(scale * t.b) + "*sin(" + num(t.w) + "*" + arg + ")";
    }
    return s;
  }
};

RandomPoly random_poly(std::mt19937& rng) {
  std::uniform_real_distribution<double> amp(-2.0, 2.0), freq(0.2, 4.0);
  RandomPoly p{amp(rng), {}};
  const int n = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < n; ++i) p.tones.push_back({freq(rng), amp(rng), amp(rng)});
  return p;
}

double energy_sum(const LocalSpectrum& s) {
  double sum = 0.0;
  for (int k = 1; k <= s.k_max; ++k) sum += s.coefficient(k) * s.coefficient(k);
  return sum;
}

// (2/L) sum_{k>=1} a_k^2 <= integral of (f - mean level)^2, up to quadrature error.
bool bessel_ok(const LocalSpectrum& s, const std::function<double(double)>& f) {
  const double shift = s.c;
  double energy = static_cast<double>(oracle::gauss_legendre(
      [&](double x) { return (f(x) - shift) * (f(x) - shift); }, s.interval.b1(), s.interval.b2(), 1e-14));
  if (s.mode == CriterionMode::Cosine) energy -= s.coefficient(0) * s.coefficient(0) / s.interval.length();
  return energy_sum(s) * 2.0 / s.interval.length() <= energy * (1 + 1e-9) + 1e-14;
}

// 11. Q in [0,1], invariances, modes vs quadrature for the catalog, Bessel.
void property_suite(Check& ck) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> start(-5.0, 5.0), lam(0.2, 3.0), shift(-4.0, 4.0);
  int sine_cases = 0, cosine_cases = 0, spectra = 0;
  double worst_inv = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = random_poly(rng);
    const auto f = compile(p.text());
    auto fr = [&](double x) { return f.real(x); };

    // sine criterion between two level crossings
    const double x1 = start(rng);
    const double c = f.real(x1);
    const Interval range(x1 + 1e-3, x1 + 12.0);
    const auto roots = find_roots(f, c, range, default_root_step(f.band_edge(), range)).points;
    if (!roots.empty()) {
      const Interval iv(x1, roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)]);
      const auto base = check_sine_criterion(f, c, iv);
      if (base.q) {
        ++sine_cases;
        ++spectra;
        ck.expect(*base.q >= 0.0 && *base.q <= 1.0, fmt("Q_sin = %.6g outside [0,1]", *base.q));
        ck.expect(bessel_ok(base.spectrum, fr), "Bessel inequality fails: " + p.text());
        const double l = lam(rng) * (trial % 2 ? -1.0 : 1.0);
        const double s = shift(rng), d = shift(rng);
        const double q1 = check_sine_criterion(compile(p.text("x", l)), l * c, iv).q.value_or(-1);
        const double q2 = check_sine_criterion(compile(p.text("(x - " + num(s) + ")")), c,
                                               Interval(iv.b1() + s, iv.b2() + s)).q.value_or(-1);
        const double q3 = check_sine_criterion(compile(p.text("x", 1.0, d)), c + d, iv).q.value_or(-1);
        for (double q : {q1, q2, q3}) {
          worst_inv = std::max(worst_inv, std::abs(q - *base.q));
          ck.expect(std::abs(q - *base.q) <= 1e-10, fmt("sine invariance off by %.3g", std::abs(q - *base.q)));
        }
      }
    }

    // cosine criterion between extrema
    const Interval wide(-6, 6);
    const auto ext = find_extrema(f, wide, default_root_step(f.band_edge(), wide)).points;
    if (ext.size() >= 3) {
      const Interval iv(ext[0], ext[ext.size() / 2 + 1]);
      const auto base = check_cosine_criterion(f, iv);
      if (base.q) {
        ++cosine_cases;
        ++spectra;
        ck.expect(*base.q >= 0.0 && *base.q <= 1.0, fmt("Q_cos = %.6g outside [0,1]", *base.q));
        ck.expect(bessel_ok(base.spectrum, fr), "Bessel inequality fails: " + p.text());
        const double l = -lam(rng);
        const double s = shift(rng), d = shift(rng);
        const double q1 = check_cosine_criterion(compile(p.text("x", l)), iv).q.value_or(-1);
        const double q2 = check_cosine_criterion(compile(p.text("(x - " + num(s) + ")")),
                                                 Interval(iv.b1() + s, iv.b2() + s)).q.value_or(-1);
        const double q3 = check_cosine_criterion(compile(p.text("x", 1.0, d)), iv).q.value_or(-1);
        for (double q : {q1, q2, q3}) {
          worst_inv = std::max(worst_inv, std::abs(q - *base.q));
          ck.expect(std::abs(q - *base.q) <= 1e-10, fmt("cosine invariance off by %.3g", std::abs(q - *base.q)));
        }
      }
    }
  }
  ck.expect(sine_cases >= 30 && cosine_cases >= 20, fmt("only %g sine and %g cosine cases", sine_cases, cosine_cases));

  struct Case {
    const char* text;
    CriterionMode mode;
  };
  const Case catalog_cases[] = {{"im(g(2,10))", CriterionMode::Sine},  {"re(g(2,10))", CriterionMode::Cosine},
                                {"im(g(3,20))", CriterionMode::Sine},  {"re(g(3,20))", CriterionMode::Cosine},
                                {"im(F(1,0.2))", CriterionMode::Sine}, {"re(F(1,0.2))", CriterionMode::Cosine},
                                {"G(1,1)", CriterionMode::Sine},       {"G(1,1)", CriterionMode::Cosine},
                                {"h(1,2)", CriterionMode::Sine},       {"h(1,2)", CriterionMode::Cosine},
                                {"hs(0.5,1)", CriterionMode::Sine},    {"hs(0.5,1)", CriterionMode::Cosine},
                                {"sinc(x)", CriterionMode::Cosine},    {"sinc(x)^2", CriterionMode::Cosine}};
  double worst_mode = 0.0;
  for (const auto& cs : catalog_cases) {
    const auto f = compile(cs.text);
    auto g = [&](double x) { return f.real(x); };
    const Interval range(0.05, 40.0);  // G(1,1) has zeros only at 1, 4 pi, 8 pi
    const double step = default_root_step(f.band_edge(), range);
    const auto pts = cs.mode == CriterionMode::Sine ? find_roots(f, 0.0, range, step).points
                                                    : find_extrema(f, range, step).points;
    if (pts.size() < 3) {
      ck.expect(false, std::string(cs.text) + ": fewer than three endpoints");
      continue;
    }
    const Interval iv(pts[0], pts[2]);
    const auto s = cs.mode == CriterionMode::Sine ? sine_spectrum(f, 0.0, iv) : cosine_spectrum(f, iv);
    ++spectra;
    const int first = cs.mode == CriterionMode::Sine ? 1 : 0;
    double largest = 0.0;
    for (int k = first; k < first + 8; ++k) largest = std::max(largest, std::abs(s.coefficient(k)));
    for (int k = first; k < first + 8; ++k) {
      const double ref = cs.mode == CriterionMode::Sine ? oracle::sine_mode(g, 0.0, iv.b1(), iv.b2(), k)
                                                        : oracle::cosine_mode(g, iv.b1(), iv.b2(), k);
      const double err = std::abs(s.coefficient(k) - ref) / largest;
      worst_mode = std::max(worst_mode, err);
      ck.expect(err <= 1e-8, std::string(cs.text) + fmt(" k=%g relative error %.3g", k, err));
    }
    ck.expect(bessel_ok(s, g), std::string(cs.text) + ": Bessel inequality fails");
  }
  ck.summary = fmt("%g sine + %g cosine random cases, max invariance drift %.2g", sine_cases, cosine_cases,
                   worst_inv) +
               fmt(", max mode error %.2g, %g spectra", worst_mode, spectra);
}

}  // namespace

int main() {
  struct Item {
    const char* name;
    std::function<void(Check&)> run;
  };
  const Item items[] = {
      {"closed-form (cos x)^2 coefficients", closed_form},
      {"k0 rule", k0_rule},
      {"h(1,2) wavenumber vs sine criterion", h_discrepancy},
      {"hs(s,1) wavenumber bound", hs_bound},
      {"hs(1/2,1) onset", hs_onset},
      {"negative controls", negative_controls},
      {"scan profiles vs quadrature oracle", catalog_profiles},
      {"symmetric intervals", symmetric_intervals},
      {"Hilbert algebra", hilbert_algebra},
      {"g convergence", convergence},
      {"property suite", property_suite},
  };
  int failed = 0;
  int index = 0;
  for (const auto& item : items) {
    ++index;
    Check ck;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      item.run(ck);
    } catch (const std::exception& e) {
      ck.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = ck.failures == 0;
    if (!ok) ++failed;
    std::printf("AC%-2d %-40s %s  (%s; %.2fs)\n", index, item.name, ok ? "PASS" : "FAIL", ck.summary.c_str(), secs);
    for (const auto& n : ck.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d acceptance checks passed\n", index - failed, index);
  return failed;
}
