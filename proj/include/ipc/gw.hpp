#pragma once

#include <cstdint>
#include <vector>

namespace ipc {

// Survival probability of a Poisson(lambda) branching process:
// 1 - theta = exp(-lambda * theta). Zero for lambda <= 1.
double theta(double lambda);

// Derivative of theta, from the implicit equation:
// theta'(lambda) * (1 - lambda * (1 - theta)) = theta * (1 - theta).
double theta_prime(double lambda);

// Dual (subcritical) mass: m(lambda) = lambda * (1 - theta(lambda)); satisfies
// lambda * exp(-lambda) = m * exp(-m).
double dual_m(double lambda);

// Inverse of dual_m on (0, 1] -> [1, infinity).
double dual_inverse(double m);

// Total-progeny mass function of a Poisson(mu) branching process (mu <= 1):
// P(size = n) = exp(-mu n) (mu n)^(n-1) / n!.
double pgw_size_pmf(double mu, std::int64_t n);

// Same law at mu = 1 (critical case).
double borel_pmf(std::int64_t n);

// Density of the next record height given the current one:
// f_h(y) = theta'(y) / theta(h) for 1 < y < h.
double forward_height_density(double h, double y);

// Joint density of (segment length n, next record height y) given current
// record h: theta(y)/theta(h) * exp(-y n) (y n)^(n-1) / (n-1)!.
double forward_joint_density(double h, std::int64_t n, double y);

// Segment length mass given its own record height y (> 1):
// theta(y)/theta'(y) * exp(-n y) (n y)^(n-1) / (n-1)!.
double pond_size_given_height(double y, std::int64_t n);

// phi_y(n) = (1 - y) exp(-n y) (n y)^(n-1) / (n-1)! for 0 < y < 1. Sums to 1
// over n >= 1; it is the size law of the enclosing box given its height.
double phi_pmf(double y, std::int64_t n);

// Geometric(x): P(X = k) = x^k (1 - x), k >= 0.
double geometric_pmf(double x, std::int64_t k);

// Distance between two fixed labels in a uniform rooted labelled tree on n
// vertices: P(d = k - 1) = k * n(n-1)...(n-k+1) / n^(k+1), k = 1..n.
double cayley_distance_pmf(std::int64_t n, std::int64_t k);

// Probability that the rightward critical/supercritical walk ever gets a
// chance (min(lambda, 1)) and that it survives (theta(lambda)).
double walk_chance_probability(double lambda);
double walk_survival_probability(double lambda);

// Candidate maps sending the running-maximum record height to the backbone
// threshold chain; the two defensible readings.
enum class QVariant { OneMinusTheta, Dual };
double q_map(double lambda, QVariant variant);

// For positive values a_1..a_r, computes
//   (prod_i a_i) * sum over permutations sigma of prod_i 1 / (a_sigma(1) + ... + a_sigma(i)),
// which equals 1 identically.
double perm_identity(const std::vector<double>& values);

// I(a, b) = int_0^1 x^a e^{-b x} dx; the identity checks
// I(b-1, b) - I(b, b) = e^{-b} / b for integer b >= 1. Returns the left side.
double integrate_identity_lhs(std::int64_t b);
double integrate_identity_rhs(std::int64_t b);

// Fraction of cyclic rotations of the given step sequence (each step <= 1)
// whose partial sums stay strictly positive. The combinatorial lemma says this
// is total/n when the total is nonnegative.
double cycle_lemma_check(const std::vector<int>& steps);

} // namespace ipc
