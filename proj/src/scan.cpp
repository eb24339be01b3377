#include "cubic/scan.hpp"

#include "cubic/error.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <thread>

namespace cubic {

namespace {

constexpr std::size_t kMaxScheduleLength = 1000000;
constexpr std::size_t kMaxTBits = 1 << 16;

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

const std::string& single(const ConfigMap& cfg, const std::string& key) {
    const auto& v = cfg.at(key);
    if (v.size() != 1) config_error("key '" + key + "' given more than once");
    return v.front();
}

bool has(const ConfigMap& cfg, const std::string& key) { return cfg.count(key) != 0; }

Integer int_key(const ConfigMap& cfg, const std::string& key) {
    try {
        return parse_t(single(cfg, key));
    } catch (const Error& e) {
        config_error("key '" + key + "': " + e.what());
    }
}

Integer int_key_or(const ConfigMap& cfg, const std::string& key, long fallback) {
    return has(cfg, key) ? int_key(cfg, key) : Integer(fallback);
}

int sign_key(const ConfigMap& cfg, const std::string& key) {
    Integer v = int_key_or(cfg, key, 1);
    if (v != 1 && v != -1) config_error("key '" + key + "' must be 1 or -1");
    return static_cast<int>(v.get_si());
}

long small_key(const ConfigMap& cfg, const std::string& key, long fallback, long lo, long hi) {
    if (!has(cfg, key)) return fallback;
    Integer v = int_key(cfg, key);
    if (v < lo || v > hi) config_error("key '" + key + "' out of range");
    return v.get_si();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ' && c != '\t') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

bool bool_key(const ConfigMap& cfg, const std::string& key) {
    if (!has(cfg, key)) return false;
    const std::string& v = single(cfg, key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    config_error("key '" + key + "' must be true or false");
}

std::vector<Integer> schedule_from(const ConfigMap& cfg) {
    std::string kind = has(cfg, "schedule") ? single(cfg, "schedule") : "list";
    std::vector<Integer> out;
    if (kind == "list") {
        if (!has(cfg, "t")) config_error("empty t-schedule");
        for (const auto& part : split(single(cfg, "t"), ',')) {
            if (part.empty()) continue;
            try {
                out.push_back(parse_t(part));
            } catch (const Error& e) {
                config_error(std::string("t: ") + e.what());
            }
        }
    } else if (kind == "arithmetic" || kind == "geometric") {
        if (!has(cfg, "t_start") || !has(cfg, "t_stop")) config_error(kind + " schedule needs t_start and t_stop");
        Integer start = int_key(cfg, "t_start"), stop = int_key(cfg, "t_stop");
        if (kind == "arithmetic") {
            Integer step = int_key_or(cfg, "t_step", 1);
            if (step <= 0) config_error("t_step must be positive");
            for (Integer t = start; t <= stop; t += step) {
                if (out.size() >= kMaxScheduleLength) config_error("t-schedule too long");
                out.push_back(t);
            }
        } else {
            Integer ratio = int_key_or(cfg, "t_ratio", 10);
            if (ratio < 2) config_error("t_ratio must be at least 2");
            if (start <= 0) config_error("geometric schedule needs t_start > 0");
            for (Integer t = start; t <= stop; t *= ratio) out.push_back(t);
        }
    } else {
        config_error("unknown schedule '" + kind + "'");
    }
    if (out.empty()) config_error("empty t-schedule");
    for (const auto& t : out)
        if (bit_length(t) > kMaxTBits) config_error("t-schedule endpoint exceeds integer capacity");
    return out;
}

std::vector<UnitParam> units_from(const std::string& text) {
    std::vector<UnitParam> out;
    for (const auto& item : split(text, ',')) {
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string::npos) config_error("units are written a:b");
        try {
            out.push_back({parse_integer(item.substr(0, colon)), parse_integer(item.substr(colon + 1))});
        } catch (const Error& e) {
            config_error(std::string("units: ") + e.what());
        }
    }
    return out;
}

ScanFamily family_from(const ConfigMap& cfg) {
    ScanFamily fam;
    fam.name = has(cfg, "family") ? single(cfg, "family") : "";
    FamilyDescriptor& d = fam.base;
    if (fam.name == "one_unit") {
        d.kind = FamilyDescriptor::Kind::OneUnit;
        d.one = {int_key(cfg, "a"), int_key(cfg, "b"), sign_key(cfg, "eps1"), sign_key(cfg, "eps2")};
        if (!is_admissible_one_unit(d.one)) config_error("(a, b) is not a mutually cubic pair");
    } else if (fam.name == "two_unit") {
        d.kind = FamilyDescriptor::Kind::TwoUnit;
        TwoUnitParams p{int_key(cfg, "a"), int_key(cfg, "b"), int_key(cfg, "c"), int_key(cfg, "d"),
                        sign_key(cfg, "eps1"), sign_key(cfg, "eps2"), 1};
        Integer det = p.a * p.d - p.b * p.c;
        if (det != 1 && det != -1) config_error("ad - bc must be 1 or -1");
        p.eps = static_cast<int>(det.get_si());
        if (!is_admissible_two_unit(p)) config_error("two-unit parameters are not admissible");
        d.two = p;
    } else if (fam.name == "simplest") {
        d = simplest_family();
    } else if (fam.name == "seed") {
        d.kind = FamilyDescriptor::Kind::Seed;
        d.seed = MonicCubic(int_key(cfg, "h_p2"), int_key(cfg, "h_p1"), int_key(cfg, "h_p0"));
        d.sa = int_key(cfg, "a");
        d.sb = int_key(cfg, "b");
        d.sc = int_key(cfg, "c");
        d.sd = int_key(cfg, "d");
        if (!has(cfg, "units")) config_error("seed family needs units");
        d.seed_units = units_from(single(cfg, "units"));
        if (d.seed_units.size() < 2) config_error("seed family needs two units");
    } else if (fam.name == "one_unit_growing" || fam.name == "two_unit_b2b1") {
        if (!has(cfg, "b_exponent")) config_error(fam.name + " needs b_exponent");
        try {
            fam.beta = parse_rational(single(cfg, "b_exponent"));
        } catch (const Error& e) {
            config_error(std::string("b_exponent: ") + e.what());
        }
        if (fam.beta <= 0 || fam.beta >= 1) config_error("b_exponent must lie in (0, 1)");
        if (fam.name == "one_unit_growing") {
            fam.growth = ScanFamily::Growth::OneUnit;
            fam.a = int_key_or(cfg, "a", 1);
            if (fam.a != 1 && fam.a != -1) config_error("one_unit_growing needs a = ±1");
        } else {
            fam.growth = ScanFamily::Growth::TwoUnitB2B1;
        }
    } else {
        config_error("unknown family '" + fam.name + "'");
    }
    return fam;
}

const std::set<std::string> kKnownKeys = {
    "family", "a", "b", "c", "d", "eps1", "eps2", "h_p2", "h_p1", "h_p0", "units", "b_exponent",
    "schedule", "t", "t_start", "t_stop", "t_step", "t_ratio",
    "precision_bits", "max_bits", "output", "samples", "H", "tight_R", "search_phi", "digits", "threads"};

std::string yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

Integer growth_b(const Integer& t, const Rational& beta) {
    if (beta <= 0) throw Error(ErrorCode::InvalidParams, "growth exponent must be positive");
    Integer num = beta.get_num(), den = beta.get_den();
    if (!num.fits_ulong_p() || !den.fits_ulong_p()) throw Error(ErrorCode::InvalidParams, "growth exponent too large");
    Integer base = ipow(abs(t), num.get_ui());
    Integer r;
    mpz_root(r.get_mpz_t(), base.get_mpz_t(), den.get_ui());
    return r < 1 ? Integer(1) : r;
}

FamilyDescriptor ScanFamily::at(const Integer& t) const {
    FamilyDescriptor d = base;
    switch (growth) {
        case Growth::None: break;
        case Growth::OneUnit:
            d.kind = FamilyDescriptor::Kind::OneUnit;
            d.one = {a, growth_b(t, beta), 1, 1};
            break;
        case Growth::TwoUnitB2B1: {
            Integer b = growth_b(t, beta);
            d.kind = FamilyDescriptor::Kind::TwoUnit;
            d.two = {b * b + b + 1, b, b + 1, Integer(1), 1, 1, 1};
            break;
        }
    }
    return d;
}

Integer parse_t(const std::string& text) {
    auto caret = text.find('^');
    if (caret == std::string::npos) return parse_integer(text);
    std::string base_s = text.substr(0, caret);
    bool neg = !base_s.empty() && base_s[0] == '-';
    if (neg) base_s.erase(0, 1);
    Integer base = parse_integer(base_s), e = parse_integer(text.substr(caret + 1));
    if (e < 0 || e > 100000) throw Error(ErrorCode::InvalidInput, "exponent out of range in '" + text + "'");
    Integer v = ipow(base, e.get_ui());
    return neg ? Integer(-v) : v;
}

AnalysisOptions ScanConfig::options() const {
    AnalysisOptions o;
    o.policy = policy;
    o.H = H;
    o.samples = samples;
    o.tight_R = tight_R;
    o.search_phi = search_phi;
    return o;
}

ScanConfig scan_config_from(const ConfigMap& cfg) {
    for (const auto& [k, v] : cfg)
        if (!kKnownKeys.count(k)) config_error("unknown key '" + k + "'");
    ScanConfig c;
    c.family = family_from(cfg);
    c.t_values = schedule_from(cfg);
    c.policy.target_bits = small_key(cfg, "precision_bits", 192, 64, 1 << 20);
    c.policy.max_bits = small_key(cfg, "max_bits", std::max<long>(4096, 8 * c.policy.target_bits), 64, 1 << 24);
    if (c.policy.max_bits < c.policy.target_bits) config_error("max_bits below precision_bits");
    c.samples = static_cast<std::size_t>(small_key(cfg, "samples", 10000, 6, 100000000));
    c.digits = static_cast<int>(small_key(cfg, "digits", 20, 3, 1000));
    c.threads = static_cast<unsigned>(small_key(cfg, "threads", 0, 0, 1024));
    c.search_phi = bool_key(cfg, "search_phi");
    if (has(cfg, "output")) c.output = single(cfg, "output");
    if (has(cfg, "H")) {
        for (const auto& h : cfg.at("H")) {
            for (const auto& part : split(h, ',')) {
                if (part.empty()) continue;
                try {
                    c.H.push_back(Real::parse(part, 128));
                } catch (const Error&) {
                    config_error("H: cannot parse '" + part + "'");
                }
                c.H_text.push_back(part);
            }
        }
    }
    if (has(cfg, "tight_R")) {
        try {
            c.tight_R = Real::parse(single(cfg, "tight_R"), 128);
        } catch (const Error&) {
            config_error("tight_R: cannot parse");
        }
        if (c.tight_R < Real(1)) config_error("tight_R must be at least 1");
    }
    return c;
}

std::vector<OrderReport> run_scan(const ScanConfig& cfg, const AnalysisOptions& opt) {
    const std::size_t n = cfg.t_values.size();
    std::vector<OrderReport> out(n);
    unsigned hw = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    std::size_t workers = std::min<std::size_t>(hw, n);
    auto run = [&](std::size_t w) {
        PrecisionGuard guard(opt.policy.target_bits);
        for (std::size_t i = w; i < n; i += workers) {
            const Integer& t = cfg.t_values[i];
            FamilyDescriptor d;
            try {
                d = cfg.family.at(t);
                out[i] = analyse_order(d.build(t), d.units(), opt);
            } catch (const Error& e) {
                out[i].status = status_name(e.code());
                out[i].capacity_error = e.code() == ErrorCode::PrecisionExhausted;
            }
        }
    };
    if (workers <= 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    return out;
}

void write_table(std::ostream& os, Table table, const ScanConfig& cfg, const std::vector<OrderReport>& rows) {
    CsvWriter csv(os);
    const int dg = cfg.digits;
    auto opt_real = [dg](const std::optional<Real>& x) { return x ? format_real(*x, dg) : std::string(); };

    if (table == Table::Mass) {
        // long format, one row per (t, H)
        csv.row({"t", "status", "disc", "ht", "ceil_w", "H", "fraction", "tight_r"});
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const OrderReport& r = rows[i];
            for (std::size_t k = 0; k < cfg.H_text.size(); ++k)
                csv.row({cfg.t_values[i].get_str(), r.status, r.disc.get_str(), opt_real(r.ht), opt_real(r.ceil_w),
                         cfg.H_text[k], k < r.fractions.size() ? format_real(r.fractions[k], dg) : std::string(),
                         opt_real(r.tight_r)});
        }
        return;
    }

    std::vector<std::string> head{"t", "status", "p2", "p1", "p0", "disc"};
    if (table == Table::Scan) {
        for (const char* h : {"irreducible", "totally_real"}) head.push_back(h);
    }
    for (const char* h : {"units_verified", "rel_reg", "rel_reg_err", "cusick_ratio", "certified"}) head.push_back(h);
    if (table == Table::Scan) {
        for (const char* h : {"tau_re", "tau_im", "reduced", "reduction", "ht", "ceil_w", "tight_r"}) head.push_back(h);
        for (const auto& h : cfg.H_text) head.push_back("mass_above_" + h);
    }
    csv.row(head);

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const OrderReport& r = rows[i];
        std::vector<std::string> f{cfg.t_values[i].get_str(), r.status, r.f.p2.get_str(), r.f.p1.get_str(),
                                   r.f.p0.get_str(), r.disc.get_str()};
        if (table == Table::Scan) {
            f.push_back(yes_no(r.irreducible));
            f.push_back(yes_no(r.totally_real));
        }
        f.push_back(std::to_string(r.units_verified));
        if (r.reg) {
            f.push_back(format_real(r.reg->rel_reg, dg));
            f.push_back(format_real(r.reg->rel_reg_err, 6));
            f.push_back(format_real(r.reg->cusick_ratio, dg));
        } else {
            f.insert(f.end(), 3, "");
        }
        f.push_back(yes_no(r.reg && r.reg->certified));
        if (table == Table::Scan) {
            if (r.shape) {
                f.push_back(format_real(r.shape->tau.re, dg));
                f.push_back(format_real(r.shape->tau.im, dg));
                f.push_back(yes_no(r.shape->reduced));
                f.push_back(to_string(r.shape->word));
            } else {
                f.insert(f.end(), 4, "");
            }
            f.push_back(opt_real(r.ht));
            f.push_back(opt_real(r.ceil_w));
            f.push_back(opt_real(r.tight_r));
            for (std::size_t k = 0; k < cfg.H_text.size(); ++k)
                f.push_back(k < r.fractions.size() ? format_real(r.fractions[k], dg) : std::string());
        }
        csv.row(f);
    }
}

void write_curve(std::ostream& os, const Real& a, const Real& b, std::size_t steps, int digits) {
    if (a.sign() < 0 || b < a) throw Error(ErrorCode::InvalidParams, "curve needs 0 <= a_tilde <= b_tilde");
    if (steps < 2) throw Error(ErrorCode::InvalidParams, "curve needs at least 2 steps");
    CsvWriter csv(os);
    csv.row({"i", "r", "re", "im"});
    Real rmax = curve_r_max(a, b);
    for (std::size_t i = 0; i <= steps; ++i) {
        Real r = i == steps ? rmax : rmax * Real(static_cast<long>(i)) / Real(static_cast<long>(steps));
        ShapePoint p = reduce_fundamental(curve_gamma(a, b, r));
        csv.row({std::to_string(i), format_real(r, digits), format_real(p.tau.re, digits),
                 format_real(p.tau.im, digits)});
    }
}

ProjectiveRatio parse_ratio(const std::string& text) {
    if (text == "inf" || text == "infinity") return ProjectiveRatio::infinity();
    return ProjectiveRatio::exact(parse_rational(text));
}

void write_orbit(std::ostream& os, MobiusMap map, const ProjectiveRatio& s0, std::size_t n, int digits) {
    Orbit o = orbit(map, s0, n);
    CsvWriter csv(os);
    csv.row({"step", "numerator", "denominator", "decimal"});
    for (std::size_t i = 0; i < o.values.size(); ++i) {
        const auto& v = o.values[i];
        std::string num, den;
        if (v.is_infinity()) {
            num = "1";
            den = "0";
        } else if (v.kind() == ProjectiveRatio::Kind::Exact) {
            num = v.rational().get_num().get_str();
            den = v.rational().get_den().get_str();
        }
        // past the exact cap only the decimal column is filled
        csv.row({std::to_string(i), num, den, v.to_string(digits)});
    }
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cur += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::vector<AuditRow> audit(const ScanConfig& cfg, const std::vector<std::pair<Integer, bool>>* claims) {
    AnalysisOptions opt = cfg.options();
    opt.H.clear();
    opt.want_height = false;
    opt.want_shape = false;

    std::vector<std::pair<Integer, bool>> own;
    std::vector<OrderReport> base;
    if (!claims) {
        base = run_scan(cfg, opt);
        for (std::size_t i = 0; i < base.size(); ++i)
            own.emplace_back(cfg.t_values[i], base[i].reg && base[i].reg->certified);
        claims = &own;
    }

    ScanConfig hi = cfg;
    hi.t_values.clear();
    for (const auto& [t, c] : *claims) hi.t_values.push_back(t);
    AnalysisOptions hopt = opt;
    hopt.policy.target_bits *= 2;
    hopt.policy.max_bits *= 2;
    std::vector<OrderReport> again = run_scan(hi, hopt);

    std::vector<AuditRow> out;
    for (std::size_t i = 0; i < claims->size(); ++i) {
        AuditRow row;
        row.t = (*claims)[i].first;
        row.claimed = (*claims)[i].second;
        const OrderReport& r = again[i];
        row.status = r.status;
        row.recomputed = r.reg && r.reg->certified;
        row.agrees = !row.claimed || row.recomputed;
        if (row.agrees && !base.empty() && base[i].reg && r.reg) {
            Real diff = abs(base[i].reg->cusick_ratio - r.reg->cusick_ratio);
            Real L = log(Real(r.disc) / Real(4));
            Real tol = (base[i].reg->rel_reg_err + r.reg->rel_reg_err) / (L * L);
            if (diff > tol * Real(2) + pow2(-40)) row.agrees = false;
        }
        out.push_back(row);
    }
    return out;
}

}  // namespace cubic
