#pragma once

// JSON and CSV serialisation, and the flat key=value config format.

#include "cubic/family.hpp"
#include "cubic/roots.hpp"
#include "cubic/units.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cubic {

nlohmann::json to_json(const MonicCubic& f);
MonicCubic poly_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FamilyDescriptor& d, const Integer& t);
// Reads the descriptor and stores the "t" field into *t when given.
FamilyDescriptor family_from_json(const nlohmann::json& j, Integer* t = nullptr);

// {"value": "...", "err": "2^-k"}; exact roots give "0".
nlohmann::json to_json(const IsolatedRoot& r, int digits = 60);

nlohmann::json to_json(const RegulatorReport& r, int digits = 30);

// Locale-independent decimal rendering.
std::string format_real(const Real& x, int digits);

// Writes rows with ',' separators and '\n' line endings; fields containing
// commas or quotes are quoted.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& os_;
};

// key=value lines, '#' comments, surrounding blanks trimmed. Duplicate keys
// are an error except for keys listed in `repeatable`, which accumulate.
using ConfigMap = std::map<std::string, std::vector<std::string>>;
ConfigMap parse_config(std::istream& in, const std::vector<std::string>& repeatable = {"H"});
ConfigMap parse_config_file(const std::string& path, const std::vector<std::string>& repeatable = {"H"});

}  // namespace cubic
