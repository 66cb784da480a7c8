#include "datareq/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace datareq {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_integer_value(double x) {
    return std::isfinite(x) && x == std::floor(x);
}

} // namespace

std::string family_name(CurveFamily family) {
    switch (family) {
    case CurveFamily::PowerLaw: return "power_law";
    case CurveFamily::Arctan: return "arctan";
    case CurveFamily::Logarithmic: return "logarithmic";
    case CurveFamily::AlgebraicRoot: return "algebraic_root";
    }
    return "unknown";
}

CurveFamily family_from_name(const std::string& name) {
    for (CurveFamily family : kAllFamilies) {
        if (family_name(family) == name) return family;
    }
    throw InvalidDataError("unknown curve family '" + name + "'");
}

double evaluate(CurveFamily family, const Params& p, double n) {
    double value = 0.0;
    switch (family) {
    case CurveFamily::PowerLaw:
        if (n < 0.0 && !is_integer_value(p.theta2)) {
            throw DomainError("power_law: negative size with fractional exponent");
        }
        value = p.theta1 * std::pow(n, p.theta2) + p.theta3;
        break;
    case CurveFamily::Arctan:
        value = (200.0 / kPi) * std::atan(p.theta1 * (kPi / 2.0) * n + p.theta2) +
                p.theta3;
        break;
    case CurveFamily::Logarithmic:
        if (n + p.theta2 <= 0.0) {
            throw DomainError("logarithmic: log argument not positive");
        }
        value = p.theta1 * std::log(n + p.theta2) + p.theta3;
        break;
    case CurveFamily::AlgebraicRoot:
        if (p.theta2 == 0.0) {
            throw DomainError("algebraic_root: zero root order");
        }
        value = 100.0 * n /
                    std::pow(1.0 + std::pow(std::fabs(p.theta1 * n), p.theta2),
                             1.0 / p.theta2) +
                p.theta3;
        break;
    }
    if (std::isnan(value)) {
        throw DomainError("formula undefined for family " + family_name(family));
    }
    return value;
}

std::optional<double> supremum(CurveFamily family, const Params& p) {
    switch (family) {
    case CurveFamily::PowerLaw:
        if (p.theta1 == 0.0) return p.theta3;
        if (p.theta2 > 0.0) return std::nullopt;
        if (p.theta2 == 0.0) return p.theta1 + p.theta3;
        return p.theta3; // n^theta2 -> 0 for theta2 < 0
    case CurveFamily::Arctan:
        if (p.theta1 > 0.0) return 100.0 + p.theta3;
        if (p.theta1 < 0.0) return -100.0 + p.theta3;
        return (200.0 / kPi) * std::atan(p.theta2) + p.theta3; // constant model
    case CurveFamily::Logarithmic:
        if (p.theta1 == 0.0) return p.theta3;
        return std::nullopt;
    case CurveFamily::AlgebraicRoot:
        if (p.theta1 == 0.0) {
            throw DomainError("algebraic_root: no saturation level for theta1 == 0");
        }
        return 100.0 / std::fabs(p.theta1) + p.theta3;
    }
    return std::nullopt;
}

bool is_monotone_on(CurveFamily family, const Params& p, double n_lo,
                    double n_hi) {
    if (!(n_lo < n_hi)) {
        throw InvalidDataError("is_monotone_on: requires n_lo < n_hi");
    }
    // Exact sign rules where the derivative has a fixed sign.
    if (family == CurveFamily::PowerLaw) {
        // d/dn = theta1 * theta2 * n^(theta2 - 1); constant when either is 0.
        return p.theta1 * p.theta2 >= 0.0;
    }
    if (family == CurveFamily::Arctan) {
        return p.theta1 >= 0.0;
    }

    const double lo = std::max(n_lo, 1.0);
    const double hi = n_hi;
    if (hi <= lo) return true; // degenerate probe span

    constexpr int kProbes = 64;
    const double log_ratio = std::log(hi / lo);
    double prev = evaluate(family, p, lo);
    for (int i = 1; i < kProbes; ++i) {
        const double x = (i == kProbes - 1)
                             ? hi
                             : lo * std::exp(log_ratio * i / (kProbes - 1));
        const double cur = evaluate(family, p, x);
        if (cur < prev - 1e-9) return false;
        prev = cur;
    }
    return true;
}

std::int64_t inverse_solve(CurveFamily family, const Params& p, double target,
                           std::int64_t n_lo, std::int64_t n_hi) {
    if (n_lo >= n_hi) {
        throw InvalidDataError("inverse_solve: requires n_lo < n_hi");
    }
    if (!is_monotone_on(family, p, static_cast<double>(n_lo),
                        static_cast<double>(n_hi))) {
        throw NotMonotoneError("inverse_solve: model not non-decreasing on [" +
                               std::to_string(n_lo) + ", " +
                               std::to_string(n_hi) + "]");
    }
    if (evaluate(family, p, static_cast<double>(n_lo)) >= target) {
        return n_lo;
    }
    if (evaluate(family, p, static_cast<double>(n_hi)) < target) {
        throw UnreachableError("inverse_solve: target " + std::to_string(target) +
                               " not reached by size " + std::to_string(n_hi));
    }
    // Invariant: evaluate(lo) < target <= evaluate(hi).
    std::int64_t lo = n_lo;
    std::int64_t hi = n_hi;
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (evaluate(family, p, static_cast<double>(mid)) >= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

Params initial_params(CurveFamily) {
    return Params{1.0, 1.0, 0.0};
}

} // namespace datareq
