#ifndef CONF4_FORMAT_HPP
#define CONF4_FORMAT_HPP

#include <string>

namespace conf4 {

/// Floating-point value with 17 significant digits ("%.17g"); all CSV and
/// JSON output goes through this so reruns are byte-identical.
std::string format17(double x);

/// JSON string literal (quotes included).
std::string json_escape(const std::string& s);

}  // namespace conf4

#endif
