#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "siegel/gauss.hpp"
#include "siegel/matz.hpp"
#include "siegel/ring.hpp"

namespace siegel {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// "L:c0,c1,..." with rational coefficients in the power basis of Q(zeta_L)
std::string exact_string(const CycNumber& x);
CycNumber parse_exact(const std::string& s);
// 15 significant digits, "re" or "re+imi"
std::string approx_string(const CycNumber& x);

json to_json(const CycNumber& x);  // {exact, text, approx}
CycNumber cyc_from_json(const json& j);
json to_json(const IntMatrix& m);
json to_json(const VerifyReport& r);

std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);
std::vector<std::string> parse_csv_row(const std::string& line);

}  // namespace siegel
