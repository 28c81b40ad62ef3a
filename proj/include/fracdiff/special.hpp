#pragma once

namespace fracdiff {

/// Gamma function for x > 0 (Lanczos, g = 7, with reflection below 0.5).
/// Relative error stays below 1e-13 on (0, 30). Throws DomainError for x <= 0.
double gamma_fn(double x);

/// (t^a - t^b) / ln t for t in (0, 1], continuously extended to a - b at t = 1.
/// Near t = 1 the quotient is rewritten as (a - b) t^b (e^z - 1)/z with z = (a - b) ln t.
double stable_powdiff_log(double t, double a, double b);

/// Caputo derivative of order theta of t^p: Gamma(p+1)/Gamma(p+1-theta) t^(p-theta),
/// and 0 for p = 0.
double caputo_exact_power(double p, double theta, double t);

}  // namespace fracdiff
