#include "gscale/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gscale::dist {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

double lgamma_(double x) { return std::lgamma(x); }

// Lower regularized incomplete gamma by power series; valid for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lgamma_(a));
}

// Upper regularized incomplete gamma by Lentz continued fraction; x >= a+1.
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - lgamma_(a));
}

// Continued fraction for the incomplete beta (Lentz).
double beta_cf(double a, double b, double x) {
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }
double norm_sf(double x) { return 0.5 * std::erfc(x * 0.7071067811865475244); }
double norm_pdf(double x) { return 0.3989422804014326779 * std::exp(-0.5 * x * x); }

// Acklam-style rational approximation, used only as a Newton start.
double norm_quantile_guess(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

void validate(const DistSpec& s) {
    switch (s.family) {
        case Family::Normal: return;
        case Family::StudentT:
        case Family::ChiSquare:
            if (!(s.df1 > 0.0)) throw ParameterError("distribution df must be positive");
            return;
        case Family::FisherF:
            if (!(s.df1 > 0.0) || !(s.df2 > 0.0))
                throw ParameterError("F distribution df must be positive");
            return;
    }
    throw ParameterError("unknown distribution family");
}

}  // namespace

namespace detail {

double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double lfront = lgamma_(a + b) - lgamma_(a) - lgamma_(b) +
                    a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(lfront) * beta_cf(a, b, x) / a;
    return 1.0 - std::exp(lgamma_(a + b) - lgamma_(a) - lgamma_(b) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace detail

DistSpec DistSpec::student_t(double df) {
    DistSpec s{Family::StudentT, df, 0.0};
    validate(s);
    return s;
}

DistSpec DistSpec::chi_square(double df) {
    DistSpec s{Family::ChiSquare, df, 0.0};
    validate(s);
    return s;
}

DistSpec DistSpec::fisher_f(double df1, double df2) {
    DistSpec s{Family::FisherF, df1, df2};
    validate(s);
    return s;
}

double cdf(const DistSpec& spec, double x) {
    validate(spec);
    if (!std::isfinite(x)) throw DomainError("cdf argument must be finite");
    switch (spec.family) {
        case Family::Normal:
            return norm_cdf(x);
        case Family::ChiSquare:
            return detail::gamma_p(0.5 * spec.df1, 0.5 * x);
        case Family::StudentT: {
            if (x == 0.0) return 0.5;
            double v = spec.df1;
            double tail = 0.5 * detail::inc_beta(0.5 * v, 0.5, v / (v + x * x));
            return x > 0.0 ? 1.0 - tail : tail;
        }
        case Family::FisherF: {
            if (x <= 0.0) return 0.0;
            double d1 = spec.df1, d2 = spec.df2;
            return detail::inc_beta(0.5 * d1, 0.5 * d2, d1 * x / (d1 * x + d2));
        }
    }
    return 0.0;
}

double sf(const DistSpec& spec, double x) {
    validate(spec);
    if (!std::isfinite(x)) throw DomainError("sf argument must be finite");
    switch (spec.family) {
        case Family::Normal:
            return norm_sf(x);
        case Family::ChiSquare:
            return detail::gamma_q(0.5 * spec.df1, 0.5 * x);
        case Family::StudentT: {
            if (x == 0.0) return 0.5;
            double v = spec.df1;
            double tail = 0.5 * detail::inc_beta(0.5 * v, 0.5, v / (v + x * x));
            return x > 0.0 ? tail : 1.0 - tail;
        }
        case Family::FisherF: {
            if (x <= 0.0) return 1.0;
            double d1 = spec.df1, d2 = spec.df2;
            return detail::inc_beta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * x));
        }
    }
    return 1.0;
}

double pdf(const DistSpec& spec, double x) {
    validate(spec);
    switch (spec.family) {
        case Family::Normal:
            return norm_pdf(x);
        case Family::ChiSquare: {
            if (x <= 0.0) return 0.0;
            double h = 0.5 * spec.df1;
            return std::exp((h - 1.0) * std::log(x) - 0.5 * x - h * std::log(2.0) -
                            lgamma_(h));
        }
        case Family::StudentT: {
            double v = spec.df1;
            return std::exp(lgamma_(0.5 * (v + 1.0)) - lgamma_(0.5 * v) -
                            0.5 * std::log(v * 3.14159265358979323846) -
                            0.5 * (v + 1.0) * std::log1p(x * x / v));
        }
        case Family::FisherF: {
            if (x <= 0.0) return 0.0;
            double d1 = spec.df1, d2 = spec.df2;
            double lf = 0.5 * d1 * std::log(d1) + 0.5 * d2 * std::log(d2) +
                        (0.5 * d1 - 1.0) * std::log(x) -
                        0.5 * (d1 + d2) * std::log(d2 + d1 * x) +
                        lgamma_(0.5 * (d1 + d2)) - lgamma_(0.5 * d1) - lgamma_(0.5 * d2);
            return std::exp(lf);
        }
    }
    return 0.0;
}

double quantile(const DistSpec& spec, double p) {
    validate(spec);
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile probability must be in (0,1)");

    double x;
    double z = norm_quantile_guess(p);
    switch (spec.family) {
        case Family::Normal:
            x = z;
            break;
        case Family::StudentT:
            x = z;  // decent start for moderate df
            break;
        case Family::ChiSquare: {
            // Wilson-Hilferty start
            double v = spec.df1;
            double t = 1.0 - 2.0 / (9.0 * v) + z * std::sqrt(2.0 / (9.0 * v));
            x = v * t * t * t;
            if (!(x > 0.0)) x = 0.5 * v;
            break;
        }
        case Family::FisherF:
            x = 1.0;
            break;
        default:
            x = 0.0;
    }

    const bool positive_support =
        spec.family == Family::ChiSquare || spec.family == Family::FisherF;

    // Expand a bracket [lo, hi] with cdf(lo) < p < cdf(hi).
    double lo, hi;
    if (positive_support) {
        lo = 0.0;
        hi = std::max(x, 1.0);
        while (cdf(spec, hi) < p) {
            hi *= 2.0;
            if (hi > 1e300) throw DomainError("quantile bracket overflow");
        }
    } else {
        double w = 1.0;
        lo = x - w;
        hi = x + w;
        while (cdf(spec, lo) > p) { w *= 2.0; lo = x - w; }
        w = 1.0;
        while (cdf(spec, hi) < p) { w *= 2.0; hi = x + w; }
    }
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

    // Safeguarded Newton: fall back to bisection when the step leaves the
    // bracket or the density underflows.
    for (int it = 0; it < 200; ++it) {
        double f = cdf(spec, x) - p;
        if (f == 0.0) return x;
        if (f > 0.0) hi = x; else lo = x;
        double d = pdf(spec, x);
        double step = (d > kTiny) ? f / d : 0.0;
        double xn = x - step;
        if (step == 0.0 || xn <= lo || xn >= hi) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) <= 1e-14 * (1.0 + std::fabs(xn))) { x = xn; break; }
        x = xn;
    }
    return x;
}

double sf_pvalue(const DistSpec& spec, double stat) {
    double p = sf(spec, stat);
    return std::clamp(p, p_value_floor, 1.0);
}

}  // namespace gscale::dist
