#include "cubic/io.hpp"

#include "cubic/error.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

namespace cubic {

using nlohmann::json;

namespace {
Integer int_field(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (v.is_string()) return parse_integer(v.get<std::string>());
    if (v.is_number_integer()) return Integer(v.get<long>());
    throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "' must be an integer string");
}

int sign_field(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    Integer v = int_field(j, key);
    if (v != 1 && v != -1) throw Error(ErrorCode::InvalidInput, std::string(key) + " must be 1 or -1");
    return static_cast<int>(v.get_si());
}
}  // namespace

json to_json(const MonicCubic& f) {
    return json{{"p2", f.p2.get_str()}, {"p1", f.p1.get_str()}, {"p0", f.p0.get_str()}};
}

MonicCubic poly_from_json(const json& j) {
    return MonicCubic(int_field(j, "p2"), int_field(j, "p1"), int_field(j, "p0"));
}

json to_json(const FamilyDescriptor& d, const Integer& t) {
    json j;
    j["kind"] = d.kind_name();
    switch (d.kind) {
        case FamilyDescriptor::Kind::OneUnit:
            j["a"] = d.one.a.get_str();
            j["b"] = d.one.b.get_str();
            j["eps1"] = std::to_string(d.one.eps1);
            j["eps2"] = std::to_string(d.one.eps2);
            break;
        case FamilyDescriptor::Kind::TwoUnit:
            j["a"] = d.two.a.get_str();
            j["b"] = d.two.b.get_str();
            j["c"] = d.two.c.get_str();
            j["d"] = d.two.d.get_str();
            j["eps1"] = std::to_string(d.two.eps1);
            j["eps2"] = std::to_string(d.two.eps2);
            break;
        case FamilyDescriptor::Kind::Seed: {
            j["h"] = to_json(d.seed);
            j["a"] = d.sa.get_str();
            j["b"] = d.sb.get_str();
            j["c"] = d.sc.get_str();
            j["d"] = d.sd.get_str();
            json units = json::array();
            for (const auto& u : d.seed_units) units.push_back(json::array({u.a.get_str(), u.b.get_str()}));
            j["units"] = units;
            break;
        }
    }
    j["t"] = t.get_str();
    return j;
}

FamilyDescriptor family_from_json(const json& j, Integer* t) {
    if (!j.contains("kind") || !j.at("kind").is_string()) throw Error(ErrorCode::InvalidInput, "family needs a kind");
    std::string kind = j.at("kind").get<std::string>();
    FamilyDescriptor d;
    if (kind == "one_unit") {
        d.kind = FamilyDescriptor::Kind::OneUnit;
        d.one = {int_field(j, "a"), int_field(j, "b"), sign_field(j, "eps1", 1), sign_field(j, "eps2", 1)};
    } else if (kind == "two_unit") {
        d.kind = FamilyDescriptor::Kind::TwoUnit;
        TwoUnitParams p{int_field(j, "a"), int_field(j, "b"), int_field(j, "c"), int_field(j, "d"),
                        sign_field(j, "eps1", 1), sign_field(j, "eps2", 1), 1};
        Integer det = p.a * p.d - p.b * p.c;
        if (det != 1 && det != -1) throw Error(ErrorCode::InvalidParams, "ad - bc must be ±1");
        p.eps = static_cast<int>(det.get_si());
        d.two = p;
    } else if (kind == "seed") {
        d.kind = FamilyDescriptor::Kind::Seed;
        if (!j.contains("h")) throw Error(ErrorCode::InvalidInput, "seed family needs h");
        d.seed = poly_from_json(j.at("h"));
        d.sa = int_field(j, "a");
        d.sb = int_field(j, "b");
        d.sc = int_field(j, "c");
        d.sd = int_field(j, "d");
        if (j.contains("units")) {
            for (const auto& u : j.at("units")) {
                if (!u.is_array() || u.size() != 2) throw Error(ErrorCode::InvalidInput, "units are [a, b] pairs");
                auto get = [](const json& v) {
                    return v.is_string() ? parse_integer(v.get<std::string>()) : Integer(v.get<long>());
                };
                d.seed_units.push_back({get(u[0]), get(u[1])});
            }
        }
    } else {
        throw Error(ErrorCode::InvalidInput, "unknown family kind '" + kind + "'");
    }
    if (t) *t = j.contains("t") ? int_field(j, "t") : Integer(0);
    return d;
}

std::string format_real(const Real& x, int digits) { return x.to_string(digits); }

json to_json(const IsolatedRoot& r, int digits) {
    json j;
    j["value"] = format_real(r.value, digits);
    if (r.exact)
        j["err"] = "0";
    else
        j["err"] = "2^-" + std::to_string(r.certified_bits);
    return j;
}

json to_json(const RegulatorReport& r, int digits) {
    return json{{"rel_reg", format_real(r.rel_reg, digits)},
                {"rel_reg_err", format_real(r.rel_reg_err, 6)},
                {"cusick_ratio", format_real(r.cusick_ratio, digits)},
                {"certified", r.certified},
                {"margin_bits", r.margin_bits}};
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os_ << ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n") != std::string::npos) {
            os_ << '"';
            for (char c : f) {
                if (c == '"') os_ << '"';
                os_ << c;
            }
            os_ << '"';
        } else {
            os_ << f;
        }
    }
    os_ << '\n';
}

namespace {
std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}
}  // namespace

ConfigMap parse_config(std::istream& in, const std::vector<std::string>& repeatable) {
    ConfigMap out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": empty key");
        bool rep = std::find(repeatable.begin(), repeatable.end(), key) != repeatable.end();
        if (!rep && out.count(key))
            throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        out[key].push_back(value);
    }
    return out;
}

ConfigMap parse_config_file(const std::string& path, const std::vector<std::string>& repeatable) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot read config file '" + path + "'");
    return parse_config(in, repeatable);
}

}  // namespace cubic
