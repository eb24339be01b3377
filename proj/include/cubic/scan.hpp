#pragma once

// Scan configuration, schedules and the CSV tables behind the CLI.

#include "cubic/io.hpp"
#include "cubic/lambda.hpp"
#include "cubic/pipeline.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cubic {

// A fixed family, or one whose parameters grow with t through b_t = ⌊|t|^β⌋.
struct ScanFamily {
    enum class Growth { None, OneUnit, TwoUnitB2B1 };
    FamilyDescriptor base;
    Growth growth = Growth::None;
    Rational beta;
    Integer a = 1;  // OneUnit growth: pairs (a, b_t)
    std::string name = "one_unit";

    FamilyDescriptor at(const Integer& t) const;
};

// ⌊|t|^β⌋, at least 1; exact.
Integer growth_b(const Integer& t, const Rational& beta);

// Accepts plain integers and powers written as "10^9" or "-2^30".
Integer parse_t(const std::string& text);

struct ScanConfig {
    ScanFamily family;
    std::vector<Integer> t_values;
    PrecisionPolicy policy;
    std::string output;  // empty: stdout
    std::size_t samples = 10000;
    std::vector<std::string> H_text;
    std::vector<Real> H;
    Real tight_R = Real(1);
    bool search_phi = false;
    int digits = 20;
    unsigned threads = 0;  // 0: hardware concurrency

    AnalysisOptions options() const;
};

// Throws ConfigError on unknown keys, bad values or an empty schedule.
ScanConfig scan_config_from(const ConfigMap& cfg);

// One report per t, in schedule order regardless of which worker finished first.
std::vector<OrderReport> run_scan(const ScanConfig& cfg, const AnalysisOptions& opt);

enum class Table { Scan, Certify, Mass };
void write_table(std::ostream& os, Table table, const ScanConfig& cfg, const std::vector<OrderReport>& rows);

// steps+1 reduced points of γ(r), r uniform on [0, r_max]. Needs 0 <= ã <= b̃.
void write_curve(std::ostream& os, const Real& a_tilde, const Real& b_tilde, std::size_t steps, int digits);

ProjectiveRatio parse_ratio(const std::string& text);
void write_orbit(std::ostream& os, MobiusMap map, const ProjectiveRatio& s0, std::size_t n, int digits);

// Minimal CSV reader for files written by write_table.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

struct AuditRow {
    Integer t;
    bool claimed = false;
    bool recomputed = false;
    bool agrees = true;
    std::string status;
};

// Recomputes every row at doubled precision. A row claiming certified=true
// must stay certified and its ratio must agree within the two error bounds.
// `claims` (t -> certified) overrides the claims of a fresh run.
std::vector<AuditRow> audit(const ScanConfig& cfg, const std::vector<std::pair<Integer, bool>>* claims);

}  // namespace cubic
