#include "powersum/frey_finite_field.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace powersum {

namespace {

u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

u64 invmod(u64 a, u64 m) {
    long long t = 0, newt = 1;
    long long r = (long long)m, newr = (long long)(a % m);
    while (newr != 0) {
        long long q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    if (r != 1) throw std::invalid_argument("invmod: not invertible");
    return t < 0 ? (u64)(t + (long long)m) : (u64)t;
}

}  // namespace

u64 primitive_root(u64 ell) {
    if (ell == 2) return 1;
    auto fac = factorize_u64(ell - 1);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (auto [q, e] : fac)
            if (powmod(g, (ell - 1) / q, ell) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

std::vector<u64> roots_of_unity(u64 ell, u64 t) {
    if (t == 0 || (ell - 1) % t != 0)
        throw std::invalid_argument("roots_of_unity: t must divide ell - 1");
    u64 z = powmod(primitive_root(ell), (ell - 1) / t, ell);
    std::vector<u64> out;
    out.reserve(t);
    u64 v = 1;
    for (u64 i = 0; i < t; ++i) {
        out.push_back(v);
        v = mulmod(v, z, ell);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<u64> sqrt_mod(u64 a, u64 ell) {
    a %= ell;
    if (a == 0) return 0;
    if (ell == 2) return a;
    if (powmod(a, (ell - 1) / 2, ell) != 1) return std::nullopt;
    u64 r;
    if (ell % 4 == 3) {
        r = powmod(a, (ell + 1) / 4, ell);
    } else {
        // Tonelli-Shanks
        u64 q = ell - 1;
        unsigned s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        u64 z = 2;
        while (powmod(z, (ell - 1) / 2, ell) != ell - 1) ++z;
        u64 m = s;
        u64 c = powmod(z, q, ell);
        u64 t = powmod(a, q, ell);
        r = powmod(a, (q + 1) / 2, ell);
        while (t != 1) {
            u64 i = 0, tt = t;
            while (tt != 1) {
                tt = mulmod(tt, tt, ell);
                ++i;
            }
            u64 b = c;
            for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, ell);
            m = i;
            c = mulmod(b, b, ell);
            t = mulmod(t, c, ell);
            r = mulmod(r, b, ell);
        }
    }
    return std::min(r, ell - r);
}

u64 WeierstrassModL::discriminant() const {
    u64 m = ell;
    u64 b2 = (mulmod(a1, a1, m) + 4 * a2) % m;
    u64 b4 = (2 * a4 + mulmod(a1, a3, m)) % m;
    u64 b6 = (mulmod(a3, a3, m) + 4 * a6) % m;
    u64 b8 = (mulmod(mulmod(a1, a1, m), a6, m) + mulmod(4 * a2 % m, a6, m) + m -
              mulmod(mulmod(a1, a3, m), a4, m) % m) % m;
    b8 = (b8 + mulmod(a2, mulmod(a3, a3, m), m) + m - mulmod(a4, a4, m)) % m;
    u64 t1 = mulmod(mulmod(b2, b2, m), b8, m);
    u64 t2 = mulmod(8 % m, mulmod(mulmod(b4, b4, m), b4, m), m);
    u64 t3 = mulmod(27 % m, mulmod(b6, b6, m), m);
    u64 t4 = mulmod(9 % m, mulmod(b2, mulmod(b4, b6, m), m), m);
    return (m - t1 % m + m - t2 + m - t3 + t4) % m;
}

namespace {

// y^2 = g(x) with g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 (odd ell).
struct BForm {
    u64 ell, b2, b4, b6;
};

BForm bform(const WeierstrassModL& c) {
    u64 m = c.ell;
    return {m, (mulmod(c.a1, c.a1, m) + 4 * c.a2) % m, (2 * c.a4 + mulmod(c.a1, c.a3, m)) % m,
            (mulmod(c.a3, c.a3, m) + 4 * c.a6) % m};
}

// Short form y^2 = x^3 + Ax + B isomorphic to the input (needs ell > 3).
void short_form(const WeierstrassModL& c, u64& A, u64& B) {
    u64 m = c.ell;
    BForm b = bform(c);
    // c4 = b2^2 - 24 b4, c6 = -b2^3 + 36 b2 b4 - 216 b6; E: y^2 = x^3 - 27 c4 x - 54 c6
    u64 c4 = submod(mulmod(b.b2, b.b2, m), 24 * b.b4 % m, m);
    u64 c6 = submod(mulmod(36 % m, mulmod(b.b2, b.b4, m), m),
                    (mulmod(mulmod(b.b2, b.b2, m), b.b2, m) + mulmod(216 % m, b.b6, m)) % m, m);
    A = mulmod(m - 27 % m, c4, m);
    B = mulmod(m - 54 % m, c6, m);
}

struct AffinePoint {
    u64 x = 0, y = 0;
    bool inf = true;
};

struct ShortCurve {
    u64 ell, A, B;

    AffinePoint add(const AffinePoint& p, const AffinePoint& q) const {
        if (p.inf) return q;
        if (q.inf) return p;
        u64 m = ell;
        if (p.x == q.x) {
            if ((p.y + q.y) % m == 0) return {};
            u64 num = (3 * mulmod(p.x, p.x, m) + A) % m;
            u64 lam = mulmod(num, invmod(2 * p.y % m, m), m);
            u64 x3 = submod(mulmod(lam, lam, m), 2 * p.x % m, m);
            u64 y3 = submod(mulmod(lam, submod(p.x, x3, m), m), p.y, m);
            return {x3, y3, false};
        }
        u64 lam = mulmod(submod(q.y, p.y, m), invmod(submod(q.x, p.x, m), m), m);
        u64 x3 = submod(submod(mulmod(lam, lam, m), p.x, m), q.x, m);
        u64 y3 = submod(mulmod(lam, submod(p.x, x3, m), m), p.y, m);
        return {x3, y3, false};
    }

    AffinePoint mul(AffinePoint p, u64 n) const {
        AffinePoint r;
        while (n) {
            if (n & 1) r = add(r, p);
            p = add(p, p);
            n >>= 1;
        }
        return r;
    }
};

int legendre(u64 a, u64 ell) {
    a %= ell;
    if (a == 0) return 0;
    return powmod(a, (ell - 1) / 2, ell) == 1 ? 1 : -1;
}

// All m in [lo, hi] with m*P = infinity, via baby-step giant-step:
// m = (lo + i*s) + j with 0 <= j < s, so (lo + i*s)P = -(jP).
std::vector<u64> kill_multiples(const ShortCurve& E, const AffinePoint& P, u64 lo, u64 hi) {
    u64 width = hi - lo + 1;
    u64 s = 1;
    while (s * s < width) ++s;
    std::unordered_map<u64, std::vector<u64>> babies;  // x-coord -> j list
    std::vector<u64> inf_js;
    std::vector<AffinePoint> baby_pts(s);
    AffinePoint bj;  // j*P
    for (u64 j = 0; j < s; ++j) {
        baby_pts[j] = bj;
        if (bj.inf)
            inf_js.push_back(j);
        else
            babies[bj.x].push_back(j);
        bj = E.add(bj, P);
    }
    std::vector<u64> hits;
    AffinePoint G = E.mul(P, s);
    AffinePoint R = E.mul(P, lo);
    for (u64 base = lo; base <= hi; base += s) {
        if (R.inf) {
            for (u64 j : inf_js)
                if (base + j <= hi) hits.push_back(base + j);
        } else {
            auto it = babies.find(R.x);
            if (it != babies.end())
                for (u64 j : it->second)
                    if ((baby_pts[j].y + R.y) % E.ell == 0 && base + j <= hi)
                        hits.push_back(base + j);
        }
        R = E.add(R, G);
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    std::vector<u64> out;
    for (u64 m : hits)
        if (E.mul(P, m).inf) out.push_back(m);
    return out;
}

// Exhaustive #E for the residual small-ell ambiguities the twist pairing
// cannot settle (possible only for ell <= 457).
u64 exhaustive_order(const ShortCurve& E) {
    u64 m = E.ell, count = 1;
    for (u64 x = 0; x < m; ++x) {
        u64 g = (mulmod(mulmod(x, x, m), x, m) + mulmod(E.A, x, m) + E.B) % m;
        int chi = legendre(g, m);
        count += (u64)(1 + chi);
    }
    return count;
}

u64 point_order(const ShortCurve& E, const AffinePoint& P, u64 killer) {
    u64 ord = killer;
    for (auto [q, e] : factorize_u64(killer)) {
        for (unsigned i = 0; i < e; ++i) {
            if (ord % q == 0 && E.mul(P, ord / q).inf)
                ord /= q;
            else
                break;
        }
    }
    return ord;
}

}  // namespace

long trace_naive(const WeierstrassModL& c) {
    if (!c.nonsingular()) throw std::invalid_argument("trace_naive: singular reduction");
    u64 m = c.ell;
    if (m == 2) throw std::invalid_argument("trace_naive: ell must be odd");
    BForm b = bform(c);
    // chi table of squares
    std::vector<bool> sq(m, false);
    for (u64 v = 0; v <= (m - 1) / 2; ++v) sq[mulmod(v, v, m)] = true;
    long sum = 0;
    for (u64 x = 0; x < m; ++x) {
        u64 g = (mulmod(mulmod(x, x, m), (4 * x + b.b2) % m, m) + mulmod(2 * b.b4 % m, x, m) +
                 b.b6) %
                m;
        if (g == 0) continue;
        sum += sq[g] ? 1 : -1;
    }
    return -sum;
}

long trace_bsgs(const WeierstrassModL& c) {
    if (!c.nonsingular()) throw std::invalid_argument("trace_bsgs: singular reduction");
    u64 m = c.ell;
    if (m < 5) throw std::invalid_argument("trace_bsgs: ell must be >= 5");
    u64 A, B;
    short_form(c, A, B);
    u64 W = (u64)std::sqrt(4.0 * (double)m);
    while ((W + 1) * (W + 1) <= 4 * m) ++W;
    while (W * W > 4 * m) --W;
    u64 lo = m + 1 - W, hi = m + 1 + W;

    // quadratic twist by a non-residue d: y^2 = x^3 + A d^2 x + B d^3
    u64 d = 2;
    while (legendre(d, m) != -1) ++d;
    ShortCurve E0{m, A, B};
    ShortCurve E1{m, mulmod(A, mulmod(d, d, m), m), mulmod(B, mulmod(d, mulmod(d, d, m), m), m)};

    u64 e[2] = {1, 1};  // lcm of point orders seen on E0 / E1
    std::mt19937_64 rng(0xfe1d5eedULL ^ m);
    auto candidates = [&](int side) {
        std::vector<u64> out;
        u64 start = (lo + e[side] - 1) / e[side] * e[side];
        for (u64 v = start; v <= hi; v += e[side]) out.push_back(v);
        return out;
    };

    for (int iter = 0; iter < 4000; ++iter) {
        // unique consistent pair (m0, m1), m0 + m1 = 2m + 2?
        auto c0 = candidates(0), c1 = candidates(1);
        std::vector<u64> feasible;
        for (u64 m0 : c0) {
            u64 m1 = 2 * m + 2 - m0;
            if (std::binary_search(c1.begin(), c1.end(), m1)) feasible.push_back(m0);
        }
        if (feasible.size() == 1) return (long)(m + 1) - (long)feasible[0];
        if (feasible.empty()) throw std::logic_error("trace_bsgs: no consistent group order");
        if (iter > 60 && m <= 457) return (long)(m + 1) - (long)exhaustive_order(E0);

        u64 x = rng() % m;
        u64 g = (mulmod(mulmod(x, x, m), x, m) + mulmod(A, x, m) + B) % m;
        int chi = legendre(g, m);
        int side;
        AffinePoint P;
        if (chi == 0) {
            P = {x, 0, false};
            side = 0;
        } else if (chi == 1) {
            P = {x, *sqrt_mod(g, m), false};
            side = 0;
        } else {
            u64 xt = mulmod(d, x, m);
            u64 gt = mulmod(mulmod(mulmod(d, d, m), d, m), g, m);
            P = {xt, *sqrt_mod(gt, m), false};
            side = 1;
        }
        const ShortCurve& E = side == 0 ? E0 : E1;
        auto kills = kill_multiples(E, P, lo, hi);
        if (kills.empty()) throw std::logic_error("trace_bsgs: no annihilator in Hasse interval");
        u64 ord = point_order(E, P, kills.front());
        e[side] = e[side] / gcd_u64(e[side], ord) * ord;
    }
    throw std::logic_error("trace_bsgs: order ambiguity not resolved");
}

long trace_of_frobenius(const WeierstrassModL& c) {
    return c.ell < (1u << 20) ? trace_naive(c) : trace_bsgs(c);
}

long trace_of_frobenius(const FreyCurveModL& c) { return trace_of_frobenius(c.weierstrass()); }

std::vector<FreyPoint> build_A(u64 ell, u64 t, unsigned k, const DecompositionPair& pair,
                               const IntPoly& f_k) {
    if (ell < 3 || !is_prime_u64(ell)) throw std::invalid_argument("build_A: ell must be prime");
    if (t == 0 || (ell - 1) % t != 0)
        throw std::invalid_argument("build_A: t must divide ell - 1");
    if (k % ell == 0) throw std::invalid_argument("build_A: ell | k");
    if (pair.d1 % ell == 0 || pair.d2 % ell == 0)
        throw std::invalid_argument("build_A: ell | d1 d2");

    u64 d1 = pair.d1 % ell, d2 = pair.d2 % ell;
    u64 two_d2_over_d1 = mulmod(2 * d2 % ell, invmod(d1, ell), ell);
    u64 scale = mulmod(d2, invmod(mulmod(powmod(2, k - 2, ell), d1, ell), ell), ell);

    std::vector<FreyPoint> out;
    for (u64 zeta : roots_of_unity(ell, t)) {
        u64 rhs = submod(mulmod(two_d2_over_d1, zeta, ell), 1 % ell, ell);
        auto r = sqrt_mod(rhs, ell);
        if (!r) continue;
        u64 roots[2] = {*r, (ell - *r) % ell};
        for (int i = 0; i < (roots[0] == roots[1] ? 1 : 2); ++i) {
            u64 x0 = roots[i];
            u64 w = mulmod(scale, f_k.eval_mod(mulmod(x0, x0, ell), ell), ell);
            if (w == 0 || powmod(w, t, ell) == 1) out.push_back({x0, zeta});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FreyPoint> build_A_bruteforce(u64 ell, u64 t, unsigned k,
                                          const DecompositionPair& pair, const IntPoly& f_k) {
    if (!is_prime_u64(ell)) throw std::invalid_argument("build_A_bruteforce: ell must be prime");
    u64 d1 = pair.d1 % ell, d2 = pair.d2 % ell;
    u64 inv_2d2 = invmod(2 * d2 % ell, ell);
    u64 scale = mulmod(d2, invmod(mulmod(powmod(2, k - 2, ell), d1, ell), ell), ell);
    std::vector<FreyPoint> out;
    for (u64 x0 = 0; x0 < ell; ++x0) {
        u64 x2p1 = (mulmod(x0, x0, ell) + 1) % ell;
        u64 zeta = mulmod(mulmod(d1, x2p1, ell), inv_2d2, ell);
        if (zeta == 0 || powmod(zeta, t, ell) != 1) continue;
        u64 w = mulmod(scale, f_k.eval_mod(mulmod(x0, x0, ell), ell), ell);
        if (w == 0 || powmod(w, t, ell) == 1) out.push_back({x0, zeta});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace powersum
