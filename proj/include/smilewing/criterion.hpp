#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "smilewing/errors.hpp"

namespace smilewing {

/// Open interval (lower, upper) of real arguments on which a moment
/// generating function is finite. lower = -q*, upper = r*; either endpoint
/// may be infinite. Always contains 0.
struct AnalyticStrip {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();

    [[nodiscard]] bool contains(double v) const { return v > lower && v < upper; }

    [[nodiscard]] double q_star() const { return -lower; }
    [[nodiscard]] double r_star() const { return upper; }

    void validate() const {
        if (std::isnan(lower) || std::isnan(upper) || !(lower < 0.0) || !(upper > 0.0))
            throw InvalidParameter("AnalyticStrip: must satisfy lower < 0 < upper, got (" +
                                   std::to_string(lower) + ", " + std::to_string(upper) + ")");
    }
};

/// How (and whether) a model's mgf blows up at a critical exponent.
///
/// TypeI: some derivative M^(n) diverges like s^-rho times a slowly varying
/// factor as the argument approaches the critical exponent.
/// TypeII: log M itself diverges like s^-rho.
/// NoBlowup: the strip is unbounded on the relevant side (no finite critical
/// point, e.g. Brownian motion).
struct CriterionClass {
    enum class Kind { TypeI, TypeII, NoBlowup, Unclassified };

    Kind kind = Kind::Unclassified;
    int derivative_order = 0; ///< n; meaningful for TypeI only
    double rho = 0.0;         ///< blow-up index; meaningful for TypeI/TypeII

    static CriterionClass type1(int n, double rho_) {
        if (n < 0) throw InvalidParameter("CriterionClass: derivative order must be >= 0");
        if (!(rho_ > 0.0)) throw InvalidParameter("CriterionClass: rho must be > 0");
        return CriterionClass{Kind::TypeI, n, rho_};
    }
    static CriterionClass type2(double rho_) {
        if (!(rho_ > 0.0)) throw InvalidParameter("CriterionClass: rho must be > 0");
        return CriterionClass{Kind::TypeII, 0, rho_};
    }
    static CriterionClass no_blowup() { return CriterionClass{Kind::NoBlowup, 0, 0.0}; }
    static CriterionClass unclassified() { return CriterionClass{Kind::Unclassified, 0, 0.0}; }
};

/// Short text form used in reports and CSV headers, e.g. "I(n=0,rho=1.5)".
std::string to_string(const CriterionClass& c);

} // namespace smilewing
