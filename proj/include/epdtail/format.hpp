#pragma once

#include <string>

namespace epdtail {

/// Decimal with 12 significant digits; "nan", "inf", "-inf" for non-finite.
std::string format_number(double v);

/// Value rounded to 12 significant digits (what format_number prints).
double round_12(double v);

}  // namespace epdtail
