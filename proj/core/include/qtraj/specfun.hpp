#ifndef QTRAJ_SPECFUN_HPP
#define QTRAJ_SPECFUN_HPP

// Self-contained special functions: Airy pair Ai/Bi with derivatives and
// the Dawson integral, plus the growing gaussian integral used by the
// harmonic-oscillator solution pairs.  All routines are pure functions of
// their arguments and safe for concurrent calls.

namespace qtraj::specfun {

struct AiryPair {
    double ai;
    double bi;
    double dai;
    double dbi;
};

// A value stored as mantissa * exp(exponent), so that exponentially
// growing quantities can be combined into ratios without overflow.
struct ScaledValue {
    double mantissa = 0.0;
    double exponent = 0.0;

    double value() const;
};

// Documented argument range of airy_pair; outside it a std::domain_error
// is thrown (Bi overflows a double shortly above the upper bound).
inline constexpr double airy_domain_min = -1.0e4;
inline constexpr double airy_domain_max = 100.0;

// Ai(y), Bi(y) and first derivatives.  Relative error <= 1e-10 over the
// documented range (absolute <= 1e-13 near the zeros on the negative
// axis).  Maclaurin series in extended precision near the origin,
// asymptotic expansions beyond the crossover points.
AiryPair airy_pair(double y);

// Bi and Bi' for y >= 0 in exponent-scaled form (exponent = 2/3 y^{3/2}).
struct ScaledAiryB {
    double bi_mantissa;
    double dbi_mantissa;
    double exponent;
};
ScaledAiryB airy_bi_scaled(double y);

// Dawson integral F(u) = exp(-u^2) * int_0^u exp(t^2) dt.  Entire, odd,
// relative error <= 1e-12.
double dawson(double u);

// G(x) = int_0^x exp(2 alpha q^2) dq for alpha > 0, odd in x, evaluated
// through the Dawson function.  Throws std::overflow_error when
// 2 alpha x^2 exceeds the double exponent budget.
double growing_gaussian_integral(double x, double alpha);

// Overflow-safe form of the same integral: mantissa * exp(exponent) with
// exponent = 2 alpha x^2.
ScaledValue growing_gaussian_integral_scaled(double x, double alpha);

} // namespace qtraj::specfun

#endif
