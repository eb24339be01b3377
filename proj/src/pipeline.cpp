#include "cubic/pipeline.hpp"

#include "cubic/error.hpp"

namespace cubic {

std::string status_name(ErrorCode code) {
    std::string s = to_string(code);
    for (char& c : s)
        if (c == ' ') c = '-';
    return s;
}

SimplexSet choose_simplex(const LogVector& v1, const LogVector& v2, bool search) {
    if (!search) return make_simplex(v1, v2);
    const LogVector sum = v1 + v2, diff = v2 - v1;
    const std::pair<const LogVector*, const LogVector*> bases[6] = {
        {&v1, &v2}, {&v2, &v1}, {&v1, &sum}, {&sum, &v2}, {&v1, &diff}, {&diff, &v2}};
    std::optional<SimplexSet> best;
    std::optional<Real> best_ceil;
    for (const auto& [a, b] : bases) {
        SimplexSet s = make_simplex(*a, *b);
        Real c = hex_domain(s).ceiling;
        if (!best_ceil || c < *best_ceil) {
            best = s;
            best_ceil = c;
        }
    }
    return *best;
}

OrderReport analyse_order(const MonicCubic& f, const std::vector<UnitParam>& units, const AnalysisOptions& opt) {
    OrderReport rep;
    rep.f = f;
    rep.disc = discriminant(f);
    rep.totally_real = rep.disc > 0;
    try {
        rep.irreducible = is_irreducible(f);
        if (!rep.totally_real) {
            rep.status = "not-totally-real";
            return rep;
        }
        if (!rep.irreducible) {
            rep.status = "reducible";
            return rep;
        }
        CubicOrderData order = build_order(f, units, opt.policy);
        rep.units_verified = order.units.size();
        if (order.units.size() < 2) {
            rep.status = "units-not-verified";
            return rep;
        }
        rep.v1 = log_embed(order, order.units[0].a, order.units[0].b);
        rep.v2 = log_embed(order, order.units[1].a, order.units[1].b);
        Bounded rr = relative_regulator(*rep.v1, *rep.v2);
        if (rep.disc > 16) rep.reg = certify_fundamental(rr, rep.disc);
        if (opt.want_shape) {
            rep.raw_tau = oriented_quotient(*rep.v1, *rep.v2);
            rep.shape = shape_from_units(*rep.v1, *rep.v2);
        }
        if (!opt.want_height) return rep;
        LatticeBasis3 L = embed_order_lattice(order);
        rep.ht = lattice_height(L);
        SimplexSet phi = choose_simplex(*rep.v1, *rep.v2, opt.search_phi);
        HexDomain hex = hex_domain(phi);
        rep.ceil_w = hex.ceiling;
        for (int k = 12; k >= 0; --k) {
            Real r = Real(k) / Real(12);
            if (check_tight(phi, *rep.ht, opt.tight_R, r)) {
                rep.tight_r = r;
                break;
            }
        }
        if (!opt.H.empty()) {
            auto heights = grid_heights(order, phi, opt.samples);
            for (const auto& H : opt.H) {
                std::size_t above = 0;
                for (const auto& h : heights)
                    if (h > H) ++above;
                rep.fractions.push_back(
                    Real(Rational(static_cast<long>(above), static_cast<long>(heights.size())), 128));
            }
        }
    } catch (const Error& e) {
        rep.status = status_name(e.code());
        rep.capacity_error = e.code() == ErrorCode::PrecisionExhausted;
    }
    return rep;
}

}  // namespace cubic
