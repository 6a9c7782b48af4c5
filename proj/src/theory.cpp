#include "hpj/theory.hpp"

#include <algorithm>

namespace hpj::theory {

namespace {

void require_positive(double x, const char* where) {
    if (!(x > 0.0)) throw DomainError(std::string(where) + ": argument must be positive, got " + std::to_string(x));
}

} // namespace

ModelParams::ModelParams(double a, int k) : a_(a), k_(k) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("model: coefficient a must be positive");
    if (k < 2) throw DomainError("model: k must be >= 2");
}

double g(const ModelParams& params, double x) {
    require_positive(x, "g");
    return (params.a() / x + std::pow(x, -params.k())) * std::exp(x);
}

double g_derivative(const ModelParams& params, double x) {
    require_positive(x, "g'");
    const double a = params.a();
    const int k = params.k();
    return (a / x + std::pow(x, -k) - a / (x * x) - k * std::pow(x, -k - 1)) * std::exp(x);
}

double q(const ModelParams& params, double x) {
    require_positive(x, "q");
    const double a = params.a();
    const int k = params.k();
    return a * std::pow(x, k) - a * std::pow(x, k - 1) + x - k;
}

double q_factored(const ModelParams& params, double x) {
    require_positive(x, "q");
    return params.a() * std::pow(x, params.k() - 1) * (x - 1.0) + x - params.k();
}

double q_derivative(const ModelParams& params, double x) {
    require_positive(x, "q'");
    const int k = params.k();
    return params.a() * std::pow(x, k - 2) * (k * x - (k - 1)) + 1.0;
}

double root_Z(const ModelParams& params, double tol) {
    if (!(tol > 0.0)) throw DomainError("root_Z: tolerance must be positive");
    double lo = 1.0;
    double hi = static_cast<double>(params.k());
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (q_factored(params, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 4; ++iter) {
        const double slope = q_derivative(params, x);
        const double next = x - q_factored(params, x) / slope;
        if (!(next > lo && next < hi)) break;
        x = next;
    }
    return x;
}

double calibrate(double c, int k) {
    if (k < 2) throw DomainError("calibrate: k must be >= 2");
    if (!(c > 1.0 && c < k))
        throw DomainError("calibrate: c must lie in (1, " + std::to_string(k) + "), got " + std::to_string(c));
    return (k - c) / (std::pow(c, k - 1) * (c - 1.0));
}

double predicted_runtime(const ModelParams& params, double n, double c) {
    require_positive(n, "predicted_runtime");
    return g(params, c) * std::pow(n, params.k());
}

double predicted_runtime_for_length(double length, double n, int k, double c) {
    require_positive(n, "predicted_runtime");
    require_positive(c, "predicted_runtime");
    return std::exp(c) * (length * n / c + std::pow(n / c, k));
}

double drift_prediction(double n, double c) {
    if (!(n >= 1.0)) throw DomainError("drift_prediction: n must be >= 1");
    require_positive(c, "drift_prediction");
    return c * std::exp(-c) / n;
}

double jump_success_probability(std::size_t n, int k, double c) {
    const auto nd = static_cast<double>(n);
    if (!(c > 0.0 && c < nd))
        throw DomainError("jump_success_probability: c must lie in (0, n), got " + std::to_string(c));
    if (k < 0 || static_cast<std::size_t>(k) > n) throw DomainError("jump_success_probability: k outside [0, n]");
    const double p = c / nd;
    return std::pow(p, k) * std::exp((nd - k) * std::log1p(-p));
}

double argmin_g(const ModelParams& params) {
    return argmin_bracketed([&](double x) { return g_derivative(params, x); }, 1.0, static_cast<double>(params.k()));
}

double leadingones_constant() {
    // d/dx (e^x - 1)/x^2 = ((x - 2) e^x + 2) / x^3
    auto derivative = [](double x) { return ((x - 2.0) * std::exp(x) + 2.0) / (x * x * x); };
    return argmin_bracketed(derivative, 1.0, 2.5);
}

TheoryResult analyze(const ModelParams& params, double tol) {
    const double c_star = root_Z(params, tol);
    return {params.a(), params.k(), c_star, g(params, c_star)};
}

} // namespace hpj::theory
