#include "cubic/escape.hpp"

#include "cubic/error.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace cubic {

namespace {

using Vec3 = std::array<Real, 3>;

Real dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 axpy(const Real& k, const Vec3& x, const Vec3& y) {  // y + k x
    return {y[0] + k * x[0], y[1] + k * x[1], y[2] + k * x[2]};
}

Real tol_for(Bits p) { return pow2(-static_cast<long>(p) / 2, p); }

std::array<Vec3, 3> columns(const LatticeBasis3& B) { return {B.column(0), B.column(1), B.column(2)}; }

LatticeBasis3 from_columns(const std::array<Vec3, 3>& b, const Real& det_err) {
    LatticeBasis3 B;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B.m[i][j] = b[j][i];
    B.det_err = det_err;
    return B;
}

struct GramSchmidt {
    std::array<Vec3, 3> star;
    std::array<Real, 3> norm2;
    std::array<std::array<Real, 3>, 3> mu;
};

GramSchmidt gram_schmidt(const std::array<Vec3, 3>& b) {
    GramSchmidt g;
    for (int i = 0; i < 3; ++i) {
        g.star[i] = b[i];
        for (int j = 0; j < i; ++j) {
            g.mu[i][j] = dot(b[i], g.star[j]) / g.norm2[j];
            g.star[i] = axpy(-g.mu[i][j], g.star[j], g.star[i]);
        }
        g.norm2[i] = dot(g.star[i], g.star[i]);
        if (g.norm2[i].sign() <= 0) throw Error(ErrorCode::PrecisionExhausted, "lattice basis is numerically singular");
    }
    return g;
}

}  // namespace

Real determinant(const LatticeBasis3& B) {
    const auto& m = B.m;
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

LatticeBasis3 embed_order_lattice(const CubicOrderData& order, const Real& reach) {
    if (order.disc <= 0) throw Error(ErrorCode::DomainError, "order discriminant must be positive");
    if (reach.sign() < 0) throw Error(ErrorCode::PreconditionViolation, "reach must be non-negative");
    // coefficient vectors of short vectors of exp(x) L grow like e^reach, and
    // their entries meet θ^2: both eat into the relative precision twice
    long reach_bits = to_integer_floor(reach * Real(2) / log(Real(2))).get_si() + 1;
    Bits need = order.policy.target_bits + 2 * reach_bits + 4 * static_cast<long>(bit_length(root_bound(order.f))) + 16;
    std::array<IsolatedRoot, 3> roots = order.roots;
    if (roots[0].value.precision() < need) {
        if (need > order.policy.max_bits)
            throw Error(ErrorCode::PrecisionExhausted, "lattice translates need more than max_bits");
        PrecisionPolicy pol{need, order.policy.max_bits};
        for (auto& r : roots) r = refine_root(order.f, r, pol);
    }
    Bits p = 0;
    Bits certified = MPFR_PREC_MAX;
    for (const auto& r : roots) {
        p = std::max(p, r.value.precision());
        certified = std::min(certified, r.certified_bits);
    }
    PrecisionGuard guard(p);
    Real s = exp(-log(Real(order.disc, p)) / Real(6));
    LatticeBasis3 B;
    for (int i = 0; i < 3; ++i) {
        const Real& th = roots[i].value;
        B.m[i][0] = s;
        B.m[i][1] = s * th;
        B.m[i][2] = s * th * th;
    }
    long loss = std::min<long>(certified, p) / 2;
    B.det_err = pow2(-loss, 64);
    Real det = determinant(B);
    if (abs(abs(det) - Real(1)) > B.det_err)
        throw Error(ErrorCode::PrecisionExhausted, "normalised order lattice is not unimodular to working precision");
    return B;
}

LatticeBasis3 lll_reduce(const LatticeBasis3& B) {
    Bits p = B.precision();
    PrecisionGuard guard(p);
    auto b = columns(B);
    const Real delta = Real(99) / Real(100);
    const Real half = Real(1) / Real(2) + tol_for(p);
    int k = 1;
    for (int iter = 0; k < 3; ++iter) {
        if (iter > 100000) throw Error(ErrorCode::PrecisionExhausted, "LLL did not terminate");
        auto g = gram_schmidt(b);
        for (int j = k - 1; j >= 0; --j) {
            if (abs(g.mu[k][j]) > half) {
                Real q = round_nearest(g.mu[k][j]);
                b[k] = axpy(-q, b[j], b[k]);
                for (int l = 0; l <= j; ++l) g.mu[k][l] = l == j ? g.mu[k][l] - q : g.mu[k][l] - q * g.mu[j][l];
            }
        }
        Real m = g.mu[k][k - 1];
        if (g.norm2[k] >= (delta - m * m) * g.norm2[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            k = std::max(k - 1, 1);
        }
    }
    return from_columns(b, B.det_err);
}

Real shortest_vector_length(const LatticeBasis3& B) {
    Bits p = B.precision();
    PrecisionGuard guard(p);
    LatticeBasis3 R = lll_reduce(B);
    auto b = columns(R);
    auto g = gram_schmidt(b);
    Real best = dot(b[0], b[0]);
    for (int i = 1; i < 3; ++i) best = min(best, dot(b[i], b[i]));
    const Real slack = Real(1) + tol_for(p);

    // Fincke-Pohst: x2, x1, x0 with partial squared lengths below best
    std::array<Integer, 3> x;
    auto range = [&](int i, const Real& c, const Real& used) {
        Real room = best * slack - used;
        if (room.sign() < 0) return std::pair<Integer, Integer>(1, 0);
        Real w = sqrt(room / g.norm2[i]);
        return std::pair<Integer, Integer>(to_integer_floor(c - w) , to_integer_floor(c + w) + 1);
    };
    auto center = [&](int i) {
        Real c(p, 0);
        for (int j = i + 1; j < 3; ++j) c -= Real(x[j], p) * g.mu[j][i];
        return c;
    };
    auto part = [&](int i, const Real& c) {
        Real d = Real(x[i], p) - c;
        return d * d * g.norm2[i];
    };
    Real zero(p, 0);
    Real c2 = center(2);
    auto [lo2, hi2] = range(2, c2, zero);
    for (x[2] = lo2; x[2] <= hi2; ++x[2]) {
        Real u2 = part(2, c2);
        if (u2 > best * slack) continue;
        Real c1 = center(1);
        auto [lo1, hi1] = range(1, c1, u2);
        for (x[1] = lo1; x[1] <= hi1; ++x[1]) {
            Real u1 = u2 + part(1, c1);
            if (u1 > best * slack) continue;
            Real c0 = center(0);
            auto [lo0, hi0] = range(0, c0, u1);
            for (x[0] = lo0; x[0] <= hi0; ++x[0]) {
                if (x[0] == 0 && x[1] == 0 && x[2] == 0) continue;
                Vec3 v{zero, zero, zero};
                for (int j = 0; j < 3; ++j)
                    if (x[j] != 0) v = axpy(Real(x[j], p), b[j], v);
                Real n2 = dot(v, v);
                if (n2 < best) best = n2;
            }
        }
    }
    return sqrt(best);
}

Real lattice_height(const LatticeBasis3& B) { return Real(1) / shortest_vector_length(B); }

LatticeBasis3 exp_act(const LogVector& x, const LatticeBasis3& B) {
    Bits p = std::max(B.precision(), x.precision());
    PrecisionGuard guard(p);
    Real scale = max(max(upper_abs(x.x[0]), upper_abs(x.x[1])), upper_abs(x.x[2]));
    if (abs(x.sum()) > 3 * x.err + ldexp(scale + Real(1), 8 - static_cast<long>(p)))
        throw Error(ErrorCode::DomainError, "exp_act needs a trace-zero vector");
    LatticeBasis3 out;
    for (int i = 0; i < 3; ++i) {
        Real e = exp(x.x[i]);
        if (!e.is_finite() || e.is_zero()) throw Error(ErrorCode::PrecisionExhausted, "exp overflow in exp_act");
        for (int j = 0; j < 3; ++j) out.m[i][j] = e * B.m[i][j];
    }
    out.det_err = B.det_err;
    return out;
}

SimplexSet make_simplex(const LogVector& v1, const LogVector& v2) {
    Bits p = std::max(v1.precision(), v2.precision());
    PrecisionGuard guard(p);
    Vec3 a{v1.x[0], v1.x[1], v1.x[2]}, b{v2.x[0], v2.x[1], v2.x[2]};
    Real n1 = sqrt(dot(a, a)), n2 = sqrt(dot(b, b));
    // |v1 x v2| against what the coordinate errors can fake
    Real area = sqrt(dot(cross(a, b), cross(a, b)));
    Real floor = 4 * (n1 * v2.err + n2 * v1.err) + ldexp(n1 * n2 + Real(1), 8 - static_cast<long>(p));
    if (area <= floor) throw Error(ErrorCode::DependentUnits, "simplex vectors are dependent");
    return SimplexSet{{v1, v2 - v1, -v2}};
}

HexDomain hex_domain(const SimplexSet& phi) {
    static const int lam[6][3] = {{2, 1, 0}, {1, 2, 0}, {0, 2, 1}, {0, 1, 2}, {1, 0, 2}, {2, 0, 1}};
    Bits p = phi.alpha[0].precision();
    PrecisionGuard guard(p);
    HexDomain h;
    const Real third = Real(1) / Real(3);
    bool first = true;
    for (int v = 0; v < 6; ++v) {
        for (int i = 0; i < 3; ++i) {
            Real s(p, 0);
            for (int k = 0; k < 3; ++k)
                if (lam[v][k] != 0) s += Real(lam[v][k]) * phi.alpha[k].x[i];
            h.vertices[v][i] = s * third;
            if (first || h.vertices[v][i] > h.ceiling) h.ceiling = h.vertices[v][i];
            first = false;
        }
    }
    h.ceiling_err = max(max(phi.alpha[0].err, phi.alpha[1].err), phi.alpha[2].err);
    return h;
}

Real hex_area(const HexDomain& hex) {
    Bits p = hex.vertices[0][0].precision();
    PrecisionGuard guard(p);
    Vec3 acc{Real(p, 0), Real(p, 0), Real(p, 0)};
    for (int k = 0; k < 6; ++k) {
        Vec3 c = cross(hex.vertices[k], hex.vertices[(k + 1) % 6]);
        for (int i = 0; i < 3; ++i) acc[i] += c[i];
    }
    return sqrt(dot(acc, acc)) / Real(2);
}

Real simplex_covolume(const SimplexSet& phi) {
    Bits p = phi.alpha[0].precision();
    PrecisionGuard guard(p);
    Vec3 a{phi.alpha[0].x[0], phi.alpha[0].x[1], phi.alpha[0].x[2]};
    Vec3 b{phi.alpha[1].x[0], phi.alpha[1].x[1], phi.alpha[1].x[2]};
    Vec3 c = cross(a, b);
    return sqrt(dot(c, c));
}

bool check_tight(const SimplexSet& phi, const Real& ht, const Real& R, const Real& r) {
    if (R < Real(1)) throw Error(ErrorCode::PreconditionViolation, "check_tight needs R >= 1");
    if (r.sign() < 0 || r > Real(1)) throw Error(ErrorCode::PreconditionViolation, "check_tight needs 0 <= r <= 1");
    HexDomain h = hex_domain(phi);
    Bits p = std::max(h.ceiling.precision(), ht.precision());
    PrecisionGuard guard(p);
    Real fudge = pow2(8 - static_cast<long>(p));
    Real lhs = exp(r * (h.ceiling + h.ceiling_err)) * (Real(1) + fudge);
    Real rhs = ht * R * (Real(1) - fudge);
    return lhs <= rhs;
}

Real tightness_exponent(const Real& a, const Real& b, const Real& r) {
    if (r.sign() < 0 || r > Real(1)) throw Error(ErrorCode::PreconditionViolation, "tightness_exponent needs 0 <= r <= 1");
    Real two_thirds = Real(2) / Real(3);
    return two_thirds * (Real(1) - r) + (Real(1) / Real(3) - r) * (a + b);
}

MassGrid mass_grid_for(std::size_t samples) {
    if (samples == 0) throw Error(ErrorCode::PreconditionViolation, "mass grid needs at least one sample");
    MassGrid g;
    std::size_t n = 1;
    while (6 * n * n < samples) ++n;
    g.level = n;
    g.points = 6 * n * n;
    return g;
}

namespace {

// Φ must sit in the lattice of the order's first two verified units.
void check_phi_in_unit_lattice(const CubicOrderData& order, const SimplexSet& phi) {
    if (order.units.size() < 2) throw Error(ErrorCode::InvalidInput, "order has fewer than two verified units");
    LogVector u1 = log_embed(order, order.units[0].a, order.units[0].b);
    LogVector u2 = log_embed(order, order.units[1].a, order.units[1].b);
    Bits p = std::max(u1.precision(), phi.alpha[0].precision());
    PrecisionGuard guard(p);
    // solve on the first two coordinates, then check all three
    Real det = u1.x[0] * u2.x[1] - u1.x[1] * u2.x[0];
    if (abs(det) <= Real(16) * (u1.err + u2.err) * (abs(u1.x[0]) + abs(u1.x[1]) + abs(u2.x[0]) + abs(u2.x[1])))
        throw Error(ErrorCode::InvalidInput, "order units are dependent");
    for (const auto& a : phi.alpha) {
        Real m = (a.x[0] * u2.x[1] - a.x[1] * u2.x[0]) / det;
        Real n = (u1.x[0] * a.x[1] - u1.x[1] * a.x[0]) / det;
        Integer mi = to_integer_floor(round_nearest(m)), ni = to_integer_floor(round_nearest(n));
        LogVector diff = a - (mi * u1 + ni * u2);
        Real scale = Real(Integer(abs(mi) + abs(ni) + 1), 64);
        Real tol = 8 * diff.err + ldexp(scale * Real(64), -static_cast<long>(p) / 2);
        for (int i = 0; i < 3; ++i)
            if (abs(diff.x[i]) > tol)
                throw Error(ErrorCode::InvalidInput, "simplex set is not generated by the order's units");
    }
}

std::vector<std::array<Real, 3>> grid_points(const HexDomain& hex, std::size_t level) {
    Bits p = hex.vertices[0][0].precision();
    PrecisionGuard guard(p);
    std::vector<std::array<Real, 3>> pts;
    pts.reserve(6 * level * level);
    const Real n(static_cast<long>(level));
    for (int k = 0; k < 6; ++k) {
        const auto& B = hex.vertices[k];
        const auto& C = hex.vertices[(k + 1) % 6];
        auto emit = [&](const Real& cb, const Real& cc) {
            std::array<Real, 3> x;
            for (int i = 0; i < 3; ++i) x[i] = (cb * B[i] + cc * C[i]) / n;
            // vertices carry the log-embedding error; put the point back on the plane
            Real mean = (x[0] + x[1] + x[2]) / Real(3);
            for (auto& c : x) c -= mean;
            pts.push_back(std::move(x));
        };
        const Real one_third = Real(1) / Real(3), two_thirds = Real(2) / Real(3);
        for (std::size_t i = 0; i < level; ++i)
            for (std::size_t j = 0; i + j + 1 <= level; ++j)
                emit(Real(static_cast<long>(i)) + one_third, Real(static_cast<long>(j)) + one_third);
        for (std::size_t i = 0; i + 1 < level; ++i)
            for (std::size_t j = 0; i + j + 2 <= level; ++j)
                emit(Real(static_cast<long>(i)) + two_thirds, Real(static_cast<long>(j)) + two_thirds);
    }
    return pts;
}

}  // namespace

std::vector<Real> grid_heights(const CubicOrderData& order, const SimplexSet& phi, std::size_t samples) {
    check_phi_in_unit_lattice(order, phi);
    MassGrid grid = mass_grid_for(samples);
    HexDomain hex = hex_domain(phi);
    auto pts = grid_points(hex, grid.level);
    LatticeBasis3 L0 = lll_reduce(embed_order_lattice(order, Real(2) * upper_abs(hex.ceiling)));
    Bits p = std::max(L0.precision(), hex.vertices[0][0].precision());

    // the points were put on the plane at the hexagon's precision
    const Real point_err = ldexp(upper_abs(hex.ceiling) + Real(1), 4 - static_cast<long>(hex.vertices[0][0].precision()));
    std::vector<Real> heights(pts.size());
    std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), pts.size() / 64 + 1));
    std::vector<std::exception_ptr> errors(workers);
    auto run = [&](std::size_t w) {
        try {
            PrecisionGuard guard(p);
            for (std::size_t i = w; i < pts.size(); i += workers) {
                LogVector x(pts[i][0], pts[i][1], pts[i][2], point_err);
                heights[i] = lattice_height(exp_act(x, L0));
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& t : threads) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return heights;
}

Real mass_above_height(const CubicOrderData& order, const SimplexSet& phi, const Real& H, std::size_t samples) {
    auto heights = grid_heights(order, phi, samples);
    std::size_t above = 0;
    for (const auto& h : heights)
        if (h > H) ++above;
    return Real(Rational(static_cast<long>(above), static_cast<long>(heights.size())), 128);
}

}  // namespace cubic
