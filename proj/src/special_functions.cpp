#include "toa/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "toa/error.hpp"

namespace toa::special {

namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();
constexpr double kBig = 4.503599627370496e15;
constexpr double kBigInverse = 2.22044604925031308085e-16;
constexpr int kMaxIterations = 100000;

void check_domain(double a, double x) {
    if (!(a > 0.0) || std::isnan(x)) {
        throw ParameterError("incomplete gamma needs a > 0");
    }
}

/// log(x^a e^-x / Gamma(a))
double log_prefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

double series(double a, double x) {
    const double log_ax = log_prefactor(a, x);
    if (log_ax < std::log(std::numeric_limits<double>::min())) {
        return 0.0;
    }
    double r = a;
    double term = 1.0;
    double sum = 1.0;
    for (int i = 0; i < kMaxIterations; ++i) {
        r += 1.0;
        term *= x / r;
        sum += term;
        if (term / sum <= kEpsilon) {
            break;
        }
    }
    return sum * std::exp(log_ax) / a;
}

double continued_fraction(double a, double x) {
    const double log_ax = log_prefactor(a, x);
    if (log_ax < std::log(std::numeric_limits<double>::min())) {
        return 0.0;
    }
    double y = 1.0 - a;
    double z = x + y + 1.0;
    double c = 0.0;
    double pkm2 = 1.0;
    double qkm2 = x;
    double pkm1 = x + 1.0;
    double qkm1 = z * x;
    double ans = pkm1 / qkm1;
    for (int i = 0; i < kMaxIterations; ++i) {
        c += 1.0;
        y += 1.0;
        z += 2.0;
        const double yc = y * c;
        const double pk = pkm1 * z - pkm2 * yc;
        const double qk = qkm1 * z - qkm2 * yc;
        double change = 1.0;
        if (qk != 0.0) {
            const double r = pk / qk;
            change = std::abs((ans - r) / r);
            ans = r;
        }
        pkm2 = pkm1;
        pkm1 = pk;
        qkm2 = qkm1;
        qkm1 = qk;
        if (std::abs(pk) > kBig) {
            pkm2 *= kBigInverse;
            pkm1 *= kBigInverse;
            qkm2 *= kBigInverse;
            qkm1 *= kBigInverse;
        }
        if (change <= kEpsilon) {
            break;
        }
    }
    return ans * std::exp(log_ax);
}

}  // namespace

double igam(double a, double x) {
    check_domain(a, x);
    if (x <= 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    if (x > 1.0 && x > a) {
        return 1.0 - continued_fraction(a, x);
    }
    return series(a, x);
}

double igamc(double a, double x) {
    check_domain(a, x);
    if (x <= 0.0) {
        return 1.0;
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    if (x < 1.0 || x < a) {
        return 1.0 - series(a, x);
    }
    return continued_fraction(a, x);
}

double erfc(double x) { return std::erfc(x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace toa::special
