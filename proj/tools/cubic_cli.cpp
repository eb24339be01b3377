#include "cubic/error.hpp"
#include "cubic/scan.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace cubic;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kConfig = 2;
constexpr int kCapacity = 3;

struct ScanFlags {
    std::string config;
    std::vector<std::string> sets;
    long precision_bits = 0;
    long samples = 0;
    std::vector<std::string> H;
    std::string output;
    std::string t;
    unsigned threads = 0;
    bool threads_given = false;
};

void add_scan_flags(CLI::App* cmd, ScanFlags& f) {
    cmd->add_option("--config", f.config, "key=value config file");
    cmd->add_option("--set", f.sets, "extra key=value entry (repeatable)");
    cmd->add_option("--precision-bits", f.precision_bits, "target precision of roots")->check(CLI::Range(64L, 1L << 20));
    cmd->add_option("--samples", f.samples, "grid points per hexagon")->check(CLI::Range(6L, 100000000L));
    cmd->add_option("--H", f.H, "mass threshold (repeatable)");
    cmd->add_option("--output", f.output, "output CSV (default stdout)");
    cmd->add_option("--t", f.t, "comma separated t list, replaces the schedule");
    cmd->add_option("--threads", f.threads, "worker count (0: all cores)");
}

void put(ConfigMap& m, const std::string& key, const std::string& value) { m[key] = {value}; }

ScanConfig load(const ScanFlags& f, bool default_H) {
    ConfigMap m;
    if (!f.config.empty()) m = parse_config_file(f.config);
    for (const auto& s : f.sets) {
        std::istringstream line(s);
        ConfigMap one = parse_config(line);
        for (auto& [k, v] : one) {
            if (k == "H")
                m[k].insert(m[k].end(), v.begin(), v.end());
            else
                m[k] = v;
        }
    }
    if (!f.t.empty()) {
        for (const char* k : {"schedule", "t_start", "t_stop", "t_step", "t_ratio"}) m.erase(k);
        put(m, "t", f.t);
    }
    if (f.precision_bits) put(m, "precision_bits", std::to_string(f.precision_bits));
    if (f.samples) put(m, "samples", std::to_string(f.samples));
    if (!f.H.empty()) m["H"] = f.H;
    if (default_H && !m.count("H")) put(m, "H", "10");
    if (!f.output.empty()) put(m, "output", f.output);
    if (f.threads) put(m, "threads", std::to_string(f.threads));
    return scan_config_from(m);
}

// Writes to the configured file, or stdout.
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
    if (path.empty()) {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ConfigError, "cannot write '" + path + "'");
    fn(out);
}

int run_table(const ScanFlags& f, Table table) {
    ScanConfig cfg = load(f, table == Table::Mass);
    AnalysisOptions opt = cfg.options();
    if (table == Table::Certify) {
        opt.H.clear();
        opt.want_height = false;
    }
    auto rows = run_scan(cfg, opt);
    ScanConfig shown = cfg;
    if (table == Table::Certify) shown.H_text.clear();
    emit(cfg.output, [&](std::ostream& os) { write_table(os, table, shown, rows); });
    for (const auto& r : rows)
        if (r.capacity_error) return kCapacity;
    return kOk;
}

int run_verify(const ScanFlags& f, const std::string& input) {
    ScanConfig cfg = load(f, false);
    std::vector<std::pair<Integer, bool>> claims;
    bool from_file = !input.empty();
    if (from_file) {
        std::ifstream in(input);
        if (!in) throw Error(ErrorCode::ConfigError, "cannot read '" + input + "'");
        auto rows = read_csv(in);
        if (rows.empty()) throw Error(ErrorCode::InvalidInput, "empty CSV");
        const auto& head = rows.front();
        auto col = [&](const std::string& name) {
            for (std::size_t i = 0; i < head.size(); ++i)
                if (head[i] == name) return i;
            throw Error(ErrorCode::InvalidInput, "CSV lacks column '" + name + "'");
        };
        std::size_t ct = col("t"), cc = col("certified");
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].size() <= std::max(ct, cc)) throw Error(ErrorCode::InvalidInput, "short CSV row");
            claims.emplace_back(parse_integer(rows[i][ct]), rows[i][cc] == "true");
        }
    }
    auto report = audit(cfg, from_file ? &claims : nullptr);
    bool ok = true, capacity = false;
    emit(cfg.output, [&](std::ostream& os) {
        CsvWriter csv(os);
        csv.row({"t", "claimed", "recomputed", "status", "agrees"});
        for (const auto& r : report) {
            csv.row({r.t.get_str(), r.claimed ? "true" : "false", r.recomputed ? "true" : "false", r.status,
                     r.agrees ? "true" : "false"});
            ok = ok && r.agrees;
            capacity = capacity || r.status == status_name(ErrorCode::PrecisionExhausted);
        }
    });
    if (!ok) return kMismatch;
    return capacity ? kCapacity : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Totally real cubic orders: unit families, shapes and escape of mass"};
    app.require_subcommand(1);

    ScanFlags scan, cert, mass, ver;
    auto* c_scan = app.add_subcommand("scan-family", "per-t table: units, regulator, shape, height, mass");
    add_scan_flags(c_scan, scan);
    auto* c_cert = app.add_subcommand("certify", "per-t Cusick certification only");
    add_scan_flags(c_cert, cert);
    auto* c_mass = app.add_subcommand("mass-profile", "per-t height, hexagon ceiling and mass above H");
    add_scan_flags(c_mass, mass);
    auto* c_ver = app.add_subcommand("verify", "re-audit certified rows at doubled precision");
    add_scan_flags(c_ver, ver);
    std::string input;
    c_ver->add_option("--input", input, "CSV from scan-family or certify");

    std::string a_tilde = "0", b_tilde = "0", curve_out;
    long steps = 100;
    int curve_digits = 20;
    auto* c_curve = app.add_subcommand("emit-curves", "samples of the limit curve γ(r)");
    c_curve->add_option("--a-tilde", a_tilde, "decimal or p/q")->required();
    c_curve->add_option("--b-tilde", b_tilde, "decimal or p/q")->required();
    c_curve->add_option("--steps", steps, "number of intervals")->check(CLI::Range(2L, 10000000L));
    c_curve->add_option("--digits", curve_digits)->check(CLI::Range(3, 1000));
    c_curve->add_option("--output", curve_out);

    std::string map_name = "T", s0_text = "3", orbit_out;
    long n = 40;
    int orbit_digits = 50;
    auto* c_orbit = app.add_subcommand("lambda-orbit", "orbit of T or R from s0");
    c_orbit->add_option("--map", map_name)->check(CLI::IsMember({"T", "R"}));
    c_orbit->add_option("--s0", s0_text, "rational p/q or inf");
    c_orbit->add_option("--n", n)->check(CLI::Range(0L, 100000000L));
    c_orbit->add_option("--digits", orbit_digits)->check(CLI::Range(3, 1000));
    c_orbit->add_option("--output", orbit_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (c_scan->parsed()) return run_table(scan, Table::Scan);
        if (c_cert->parsed()) return run_table(cert, Table::Certify);
        if (c_mass->parsed()) return run_table(mass, Table::Mass);
        if (c_ver->parsed()) return run_verify(ver, input);
        if (c_curve->parsed()) {
            auto parse = [](const std::string& s) {
                return s.find('/') != std::string::npos ? Real(parse_rational(s), 256) : Real::parse(s, 256);
            };
            PrecisionGuard guard(256);
            Real a = parse(a_tilde), b = parse(b_tilde);
            emit(curve_out, [&](std::ostream& os) { write_curve(os, a, b, static_cast<std::size_t>(steps), curve_digits); });
            return kOk;
        }
        if (c_orbit->parsed()) {
            ProjectiveRatio s0 = parse_ratio(s0_text);
            MobiusMap map = map_name == "T" ? MobiusMap::T : MobiusMap::R;
            emit(orbit_out, [&](std::ostream& os) { write_orbit(os, map, s0, static_cast<std::size_t>(n), orbit_digits); });
            return kOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::PrecisionExhausted ? kCapacity : kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    }
    return kConfig;
}
