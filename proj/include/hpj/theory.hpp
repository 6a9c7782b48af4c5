#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "hpj/errors.hpp"

// Runtime model of the (1+1) EA on HillPathJump at mutation rate c/n:
//
//   E[T] ~ g_a(c) n^k,   g_a(x) = (a/x + 1/x^k) e^x,
//
// minimized where q_a(x) = a x^k - a x^{k-1} + x - k vanishes, because
// x^{k+1} e^{-x} g_a'(x) = q_a(x).
namespace hpj::theory {

class ModelParams {
public:
    // a > 0, k >= 2.
    ModelParams(double a, int k);

    double a() const noexcept { return a_; }
    int k() const noexcept { return k_; }

private:
    double a_;
    int k_;
};

double g(const ModelParams& params, double x);
double g_derivative(const ModelParams& params, double x);
double q(const ModelParams& params, double x);
// a x^{k-1} (x - 1) + x - k; same polynomial, other grouping.
double q_factored(const ModelParams& params, double x);
double q_derivative(const ModelParams& params, double x);

// Unique zero of q on (1, k). Bisection on [1, k] (q is increasing on
// [1, inf) with q(1) < 0 < q(k)) down to `tol`, then Newton polish kept
// inside the final bracket.
double root_Z(const ModelParams& params, double tol = 1e-12);

// a with root_Z(a) == c: (k - c) / (c^{k-1} (c - 1)). Requires 1 < c < k.
double calibrate(double c, int k);

// g_a(c) n^k.
double predicted_runtime(const ModelParams& params, double n, double c);
// e^c (L n / c + n^k / c^k); equals the above for a = L / n^{k-1}.
double predicted_runtime_for_length(double length, double n, int k, double c);

// c e^{-c} / n.
double drift_prediction(double n, double c);

// (c/n)^k (1 - c/n)^{n-k}. Requires 0 < c < n.
double jump_success_probability(std::size_t n, int k, double c);

// Minimizer of a differentiable f on [lo, hi] given its derivative, with
// f' < 0 at lo and f' > 0 at hi: bisects on the sign of f'. Every
// stationary point found this way is the interior minimum of a function
// that is unimodal on the bracket.
template <class Derivative>
double argmin_bracketed(Derivative&& derivative, double lo, double hi, double tol = 1e-14) {
    if (!(lo < hi)) throw DomainError("argmin_bracketed: empty bracket");
    if (!(derivative(lo) < 0.0) || !(derivative(hi) > 0.0))
        throw DomainError("argmin_bracketed: derivative does not change sign from - to + on the bracket");
    for (int iter = 0; iter < 200 && hi - lo > tol * std::max(1.0, std::abs(lo)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (derivative(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// argmin over x > 0 of g_a, through argmin_bracketed on [1, k].
double argmin_g(const ModelParams& params);

// argmin over x > 0 of (e^x - 1) / x^2, about 1.5936.
double leadingones_constant();

struct TheoryResult {
    double a;
    int k;
    double c_star;
    double g_at_min;

    double predicted_runtime(double n) const { return g_at_min * std::pow(n, k); }
};

TheoryResult analyze(const ModelParams& params, double tol = 1e-12);

} // namespace hpj::theory
