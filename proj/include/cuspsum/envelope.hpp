#pragma once

// Structured CLI output.  Every numeric quantity under "results" travels as
// {value, bound} — bound is a number or the string "exact" — and the linter
// enforces that shape before anything is printed.

#include <complex>
#include <string>

#include "json.hpp"

namespace cuspsum {

using json = nlohmann::json;

json bounded(double value, double bound, const std::string& note = "");
json bounded_exact(double value, const std::string& note = "");
json bounded_cplx(std::complex<double> value, double bound, const std::string& note = "");

// Throws std::logic_error if any numeric leaf under "results" is not wrapped
// in a {value, bound} record.
void lint_envelope(const json& envelope);

json make_envelope(const std::string& command, const json& config_echo);

}  // namespace cuspsum
