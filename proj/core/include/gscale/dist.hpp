#ifndef GSCALE_DIST_HPP
#define GSCALE_DIST_HPP

#include "gscale/error.hpp"

namespace gscale::dist {

enum class Family { Normal, StudentT, ChiSquare, FisherF };

// Distribution selector for the reference distributions used by the tests:
// standard normal, Student t, chi-square and Fisher F.
struct DistSpec {
    Family family = Family::Normal;
    double df1 = 0.0;  // t/chi-square df, or F numerator df
    double df2 = 0.0;  // F denominator df

    static DistSpec normal() { return {Family::Normal, 0.0, 0.0}; }
    static DistSpec student_t(double df);
    static DistSpec chi_square(double df);
    static DistSpec fisher_f(double df1, double df2);
};

// Lower-tail probability P(X <= x). Absolute accuracy ~1e-12 over the
// supported families (contract: <= 1e-10).
double cdf(const DistSpec& spec, double x);

// Upper-tail probability computed directly (not as 1 - cdf) so small
// p-values retain relative accuracy.
double sf(const DistSpec& spec, double x);

// Inverse CDF. Bracketed Newton on the cdf; p must lie in (0, 1).
double quantile(const DistSpec& spec, double p);

double pdf(const DistSpec& spec, double x);

// Floor applied to p-values so log(p) stays finite downstream.
inline constexpr double p_value_floor = 2.2250738585072014e-308;

// Upper-tail p-value, clamped to [p_value_floor, 1].
double sf_pvalue(const DistSpec& spec, double stat);

namespace detail {
// Regularized incomplete gamma P(a,x)/Q(a,x) and beta I_x(a,b); exposed for
// tests of the series/continued-fraction switching.
double gamma_p(double a, double x);
double gamma_q(double a, double x);
double inc_beta(double a, double b, double x);
}  // namespace detail

}  // namespace gscale::dist

#endif
