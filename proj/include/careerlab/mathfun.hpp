#pragma once

// Scalar special functions used by the Dirichlet policy head and the
// statistics module. Everything here is deterministic double math with
// no dependencies beyond <cmath>.

namespace careerlab {

/// First derivative of lgamma. Accurate to ~1e-12 for x > 0.
double digamma(double x);

/// Second derivative of lgamma. Accurate to ~1e-10 for x > 0.
double trigamma(double x);

/// log Beta(a, b) = lgamma(a) + lgamma(b) - lgamma(a+b).
double log_beta(double a, double b);

/// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0,1].
double reg_inc_beta(double x, double a, double b);

/// Inverse of reg_inc_beta in x: returns x with I_x(a,b) = p.
double reg_inc_beta_inv(double p, double a, double b);

/// Two-sided tail probability P(|T| >= t) for Student's t with
/// (possibly fractional) df degrees of freedom.
double student_t_two_sided_p(double t, double df);

/// Standard normal CDF.
double norm_cdf(double z);

/// log of the binomial coefficient C(n, k).
double log_choose(double n, double k);

}  // namespace careerlab
