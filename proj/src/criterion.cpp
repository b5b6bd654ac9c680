#include "smilewing/criterion.hpp"

#include <sstream>

namespace smilewing {

std::string to_string(const CriterionClass& c) {
    std::ostringstream os;
    switch (c.kind) {
    case CriterionClass::Kind::TypeI:
        os << "I(n=" << c.derivative_order << ",rho=" << c.rho << ")";
        break;
    case CriterionClass::Kind::TypeII:
        os << "II(rho=" << c.rho << ")";
        break;
    case CriterionClass::Kind::NoBlowup:
        os << "no_blowup";
        break;
    case CriterionClass::Kind::Unclassified:
        os << "unclassified";
        break;
    }
    return os.str();
}

} // namespace smilewing
