#include "qest/closedform.hpp"

#include <cmath>
#include <stdexcept>

namespace qest::closedform {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_gamma(double g, const char* what) {
    if (g < 0.0 || g > 1.0) throw std::invalid_argument(std::string(what) + ": gamma outside [0,1]");
}
} // namespace

double cb_min(double g) {
    check_gamma(g, "cb_min");
    const double p = kPi;
    return (p * p * (p * p - 4.0) - 48.0 * g * (1.0 - g) * (p - 4.0) * (p - 4.0)) /
           (48.0 * (p * p - 4.0));
}

double cf_min(double g) {
    check_gamma(g, "cf_min");
    const double p = kPi;
    const double p2 = p * p, p4 = p2 * p2, p6 = p4 * p2;
    const double num = (48.0 * p2 + 4.0 * p4 - 192.0 * (1.0 - g) * (1.0 - g)) * (1.0 - g) -
                       p6 * (1.0 + g);
    const double den = 48.0 * p2 * (4.0 - p2 - 4.0 * g - p2 * g);
    return num / den;
}

double pe(double g) {
    check_gamma(g, "pe");
    const double p = kPi;
    const double p2 = p * p, p3 = p2 * p, p4 = p3 * p, p5 = p4 * p, p6 = p5 * p;
    const double pref = (1.0 - g) / (p2 * (p2 - 4.0) * (p2 * g + 4.0 * g + p2 - 4.0));
    const double quad = (p6 - 8.0 * p5 + 20.0 * p4 - 32.0 * p3 + 68.0 * p2 - 16.0) * g * g +
                        (p6 - 8.0 * p5 + 12.0 * p4 + 32.0 * p3 - 72.0 * p2 + 32.0) * g -
                        (p4 - 8.0 * p2 + 16.0);
    return std::max(pref * quad, 0.0);
}

double gamma0() {
    const double p = kPi;
    const double p2 = p * p, p3 = p2 * p, p4 = p3 * p;
    const double num =
        p * std::sqrt(p2 * (p2 - 8.0 * p + 20.0) * (p - 4.0) * (p - 4.0) + 16.0) -
        (p - 4.0) * (p - 4.0) * p2 + 8.0;
    const double den = 2.0 * p2 * (p4 - 8.0 * p3 + 20.0 * p2 - 32.0 * p + 68.0) - 32.0;
    return (p2 - 4.0) * num / den;
}

double gamma_star() {
    const double p = kPi;
    const double p2 = p * p, p3 = p2 * p, p4 = p3 * p, p5 = p4 * p, p6 = p5 * p;
    const double p7 = p6 * p, p8 = p7 * p;
    const double a =
        2.0 * (p2 + 4.0) * (-16.0 + 68.0 * p2 - 32.0 * p3 + 20.0 * p4 - 8.0 * p5 + p6);
    const double b = 384.0 - 1376.0 * p2 + 640.0 * p3 - 208.0 * p4 + 64.0 * p5 +
                     40.0 * p6 - 24.0 * p7 + 3.0 * p8;
    const double c = 8.0 * (p2 - 4.0) * (12.0 - 35.0 * p2 + 16.0 * p3 - 2.0 * p4);
    const double d = (p2 - 4.0) * (p2 - 4.0) * (8.0 - 18.0 * p2 + 8.0 * p3 - p4);
    const double s = 27.0 * a * a * d - 9.0 * a * b * c + 2.0 * b * b * b;
    const double q = b * b - 3.0 * a * c;
    const double rad = s * s - 4.0 * q * q * q;
    // real branch of the cube root (the radicand is positive here, but the
    // real cbrt keeps gamma* real either way)
    const double theta = std::cbrt(std::sqrt(std::abs(rad)) - s);
    const double c13 = std::cbrt(2.0);
    return (theta * theta - c13 * b * theta + c13 * c13 * q) / (c13 * 3.0 * a * theta);
}

double coop_min_at_zero() {
    const double p2 = kPi * kPi;
    return (p2 * p2 - 48.0) / (48.0 * p2);
}

ComplexMatrix sb_opt(double g) {
    check_gamma(g, "sb_opt");
    const double p = kPi;
    const double den = 4.0 * (p * p - 4.0);
    ComplexMatrix s(2);
    s(0, 0) = (32.0 + p * p * p - 12.0 * p - (32.0 - 8.0 * p) * g) / den;
    s(1, 1) = (p * p * p - 4.0 * p + (32.0 - 8.0 * p) * g) / den;
    const double off = 4.0 * p * (p - 4.0) * std::sqrt((1.0 - g) * g) / den;
    s(0, 1) = off;
    s(1, 0) = off;
    return s;
}

} // namespace qest::closedform
