#include "betanum/padic.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "betanum/error.hpp"

namespace betanum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

int vp(const Integer& z, long p) {
    if (z == 0) return INT_MAX;
    Integer t = z;
    int v = 0;
    while (t % p == 0) {
        t /= p;
        ++v;
    }
    return v;
}

Integer ipow(long p, int k) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return r;
}

Integer mod_pos(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

IntPoly reduce(IntPoly a, const Integer& m) {
    for (auto& c : a) c = mod_pos(c, m);
    poly::trim(a);
    return a;
}

// Division by a monic polynomial with integer coefficients, everything mod m.
IntPoly rem_monic(IntPoly a, const IntPoly& b, const Integer& m, IntPoly* quot = nullptr) {
    a = reduce(a, m);
    const int db = poly::degree(b);
    IntPoly q;
    if (poly::degree(a) >= db) q.assign(static_cast<std::size_t>(poly::degree(a) - db + 1), 0);
    for (int k = poly::degree(a); k >= db; --k) {
        Integer c = a[k];
        if (c == 0) continue;
        q[k - db] = c;
        for (int i = 0; i <= db; ++i) a[k - db + i] = mod_pos(a[k - db + i] - c * b[i], m);
    }
    if (quot) *quot = reduce(q, m);
    return reduce(a, m);
}

// Extended Euclid over F_p: s a + t b = 1.
void ext_gcd_mod_p(const IntPoly& a, const IntPoly& b, long p, IntPoly& s, IntPoly& t) {
    const Integer P(p);
    auto inv = [&](const Integer& x) {
        Integer r;
        mpz_invert(r.get_mpz_t(), x.get_mpz_t(), P.get_mpz_t());
        return r;
    };
    auto make_monic = [&](IntPoly& r, IntPoly& x, IntPoly& y) {
        Integer l = inv(r[poly::degree(r)]);
        r = reduce(poly::mul(r, {l}), P);
        x = reduce(poly::mul(x, {l}), P);
        y = reduce(poly::mul(y, {l}), P);
    };
    IntPoly r0 = reduce(a, P), r1 = reduce(b, P);
    IntPoly s0{1}, t0{}, s1{}, t1{1};
    make_monic(r0, s0, t0);
    make_monic(r1, s1, t1);
    while (!r1.empty()) {
        IntPoly q;
        IntPoly r2 = rem_monic(r0, r1, P, &q);
        IntPoly s2 = reduce(poly::sub(s0, poly::mul(q, s1)), P);
        IntPoly t2 = reduce(poly::sub(t0, poly::mul(q, t1)), P);
        r0 = std::move(r1);
        s0 = std::move(s1);
        t0 = std::move(t1);
        r1 = std::move(r2);
        s1 = std::move(s2);
        t1 = std::move(t2);
        if (!r1.empty()) make_monic(r1, s1, t1);
    }
    if (poly::degree(r0) != 0) throw UnsupportedRamification("local factors are not coprime mod p");
    s = s0;
    t = t0;
}

// Hensel lift of P = F H from P = F0 H0 (mod p), F0 monic, to precision p^k.
IntPoly hensel_factor(const IntPoly& P, IntPoly F, IntPoly H, long p, int k) {
    IntPoly s, t;
    ext_gcd_mod_p(F, H, p, s, t);
    const Integer P1(p);
    Integer pk = P1;
    for (int step = 1; step < k; ++step) {
        IntPoly err = poly::sub(P, poly::mul(F, H));
        for (auto& c : err) c /= pk;  // exact
        err = reduce(err, P1);
        IntPoly dF = rem_monic(poly::mul(t, err), F, P1);
        IntPoly dH;
        rem_monic(poly::sub(err, poly::mul(dF, H)), F, P1, &dH);
        F = poly::add(F, poly::mul(dF, {pk}));
        H = poly::add(H, poly::mul(dH, {pk}));
        pk *= p;
    }
    return reduce(F, pk);
}

// Root of Q (simple mod p, starting at y0) lifted to precision p^k.
Integer hensel_root(const IntPoly& Q, const Integer& y0, long p, int k) {
    Integer m = ipow(p, k);
    IntPoly dQ = poly::derivative(Q);
    Integer y = y0;
    for (int it = 0; it < 2 * k + 8; ++it) {
        Integer fy = mod_pos(poly::eval(Q, Rational(y)).get_num(), m);
        if (fy == 0) break;
        Integer d = mod_pos(poly::eval(dQ, Rational(y)).get_num(), m), dinv;
        if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0)
            throw UnsupportedRamification("root is not simple modulo p");
        y = mod_pos(y - fy * dinv, m);
    }
    return y;
}

struct HullSegment {
    int i1, i2;
    int v1, v2;
};

std::vector<HullSegment> lower_hull(const std::vector<int>& v, int m) {
    std::vector<int> pts;
    for (int i = 0; i <= m; ++i) {
        if (v[i] == INT_MAX) continue;
        while (pts.size() >= 2) {
            int a = pts[pts.size() - 2], b = pts.back();
            // drop b if it lies on or above segment a-i
            long cross = static_cast<long>(v[b] - v[a]) * (i - a) - static_cast<long>(v[i] - v[a]) * (b - a);
            if (cross >= 0)
                pts.pop_back();
            else
                break;
        }
        pts.push_back(i);
    }
    std::vector<HullSegment> segs;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) segs.push_back({pts[k], pts[k + 1], v[pts[k]], v[pts[k + 1]]});
    return segs;
}

}  // namespace

int max_padic_digits(long p) {
    int M = 0;
    u128 v = static_cast<u128>(p);
    while (v * static_cast<u128>(p) < (static_cast<u128>(1) << 62)) {
        v *= static_cast<u128>(p);
        ++M;
    }
    return M;
}

std::vector<PadicPlace> PadicPlace::above(const IntPoly& P, long p) {
    const int r = poly::degree(P);
    std::vector<int> v(static_cast<std::size_t>(r + 1));
    for (int i = 0; i <= r; ++i) v[i] = vp(P[i], p);
    int m = 0;
    while (v[m] != 0) ++m;
    if (m == 0) return {};

    const int M = max_padic_digits(p);
    if (M < 8) throw UnsupportedRamification("prime " + std::to_string(p) + " too large for fixed precision");
    std::vector<PadicPlace> places;
    auto base = [&](int e) {
        PadicPlace pl;
        pl.p_ = p;
        pl.e_ = e;
        pl.M_ = M;
        pl.mod_ = ipow(p, M).get_ui();
        return pl;
    };

    auto segs = lower_hull(v, m);
    if (segs.size() == 1 && segs[0].v1 == 1 && m > 1) {
        if (m > 3) throw UnsupportedRamification("totally ramified factor of degree " + std::to_string(m));
        // Eisenstein factor F = X^m (mod p), lifted one digit beyond M so f_i / p is known mod p^M.
        IntPoly F;
        if (m == r) {
            F = P;
        } else {
            IntPoly F0(static_cast<std::size_t>(m + 1));
            F0[m] = 1;
            IntPoly H0(P.begin() + m, P.end());
            F = hensel_factor(P, F0, reduce(H0, Integer(p)), p, M + 1);
        }
        PadicPlace pl = base(m);
        const Integer mod(pl.mod_);
        const Integer big = ipow(p, M + 1);
        pl.factor_ = reduce(F, mod);
        pl.lambda_num_ = 1;
        pl.lambda_den_ = m;
        // pi^m = -sum f_i pi^i ; u = pi^m / p = -sum (f_i / p) pi^i
        std::array<u64, 3> u{};
        for (int i = 0; i < m; ++i) {
            Integer fi = mod_pos(F[i], big);
            pl.red_[i] = mod_pos(-fi, mod).get_ui();
            u[i] = mod_pos(-(fi / p), mod).get_ui();
        }
        // u^{-1} by Newton iteration w <- w (2 - u w), seeded with the inverse of u mod pi.
        Integer u0inv;
        Integer u0(u[0]);
        mpz_invert(u0inv.get_mpz_t(), u0.get_mpz_t(), mod.get_mpz_t());
        PadicElement uu{u, 0}, w{{u0inv.get_ui(), 0, 0}, 0};
        PadicElement two{{2, 0, 0}, 0};
        for (int it = 0; it < 12; ++it) w = pl.mul(w, pl.sub(two, pl.mul(uu, w)));
        pl.u_inv_ = w.c;
        pl.u_ = u;
        pl.beta_ = PadicElement{{0, 1, 0}, 0};
        places.push_back(pl);
        return places;
    }

    for (const auto& s : segs) {
        const int len = s.i2 - s.i1, drop = s.v1 - s.v2;
        if (drop % len != 0)
            throw UnsupportedRamification("Newton slope " + std::to_string(drop) + "/" + std::to_string(len) +
                                          " at p=" + std::to_string(p));
        const int lambda = drop / len;
        // residual polynomial on the segment
        IntPoly res(static_cast<std::size_t>(len + 1));
        for (int i = s.i1; i <= s.i2; ++i) {
            if (v[i] == INT_MAX || v[i] != s.v1 - lambda * (i - s.i1)) continue;
            res[i - s.i1] = mod_pos(P[i] / ipow(p, v[i]), Integer(p));
        }
        std::vector<long> roots;
        for (long y = 1; y < p; ++y)
            if (mod_pos(poly::eval(res, Rational(y)).get_num(), Integer(p)) == 0) roots.push_back(y);
        if (static_cast<int>(roots.size()) != len ||
            poly::degree(poly::gcd(res, poly::derivative(res))) > 0)
            throw UnsupportedRamification("residual polynomial at p=" + std::to_string(p) +
                                          " does not split into simple roots");
        // Q(Y) = P(p^lambda Y) / p^val is integral with simple roots mod p.
        const int val = s.v1 + lambda * s.i1;
        IntPoly Q(P.size());
        for (int i = 0; i <= r; ++i) {
            Integer c = P[i] * ipow(p, lambda * i);
            Integer pv = ipow(p, val);
            Q[i] = c / pv;  // exact for every i by convexity
        }
        for (long y0 : roots) {
            PadicPlace pl = base(1);
            const Integer mod(pl.mod_);
            Integer y = hensel_root(Q, Integer(y0), p, M);
            Integer rho = mod_pos(y * ipow(p, lambda), mod);
            pl.factor_ = IntPoly{mod_pos(-rho, mod), 1};
            pl.lambda_num_ = lambda;
            pl.lambda_den_ = 1;
            pl.red_[0] = static_cast<u64>(p);
            pl.u_inv_ = {1, 0, 0};
            pl.u_ = {1, 0, 0};
            pl.beta_ = PadicElement{{rho.get_ui(), 0, 0}, 0};
            places.push_back(pl);
        }
    }
    return places;
}

u64 PadicPlace::mulmod(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % mod_); }
u64 PadicPlace::addmod(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= mod_ ? s - mod_ : s;
}

std::array<u64, 3> PadicPlace::raise(const std::array<u64, 3>& c, int by) const {
    std::array<u64, 3> r = c;
    for (int k = 0; k < by; ++k)
        for (int i = 0; i < e_; ++i) r[i] = mulmod(r[i], static_cast<u64>(p_));
    return r;
}

PadicElement PadicPlace::from_integer(const Integer& z) const {
    PadicElement a;
    a.c[0] = mod_pos(z, Integer(mod_)).get_ui();
    return a;
}

PadicElement PadicPlace::from_rational(const Rational& q) const {
    Integer den = q.get_den();
    int k = 0;
    while (den % p_ == 0) {
        den /= p_;
        ++k;
    }
    if (k >= M_) throw PrecisionExhausted("denominator divisible by " + std::to_string(p_) + "^" + std::to_string(k));
    Integer inv;
    const Integer mod(mod_);
    Integer dm = mod_pos(den, mod);
    mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), mod.get_mpz_t());
    PadicElement a;
    a.c[0] = mod_pos(q.get_num() * inv, mod).get_ui();
    a.shift = k;
    return a;
}

PadicElement PadicPlace::add(const PadicElement& a, const PadicElement& b) const {
    const int s = std::max(a.shift, b.shift);
    auto ca = raise(a.c, s - a.shift), cb = raise(b.c, s - b.shift);
    PadicElement r;
    r.shift = s;
    for (int i = 0; i < e_; ++i) r.c[i] = addmod(ca[i], cb[i]);
    return r;
}

PadicElement PadicPlace::neg(const PadicElement& a) const {
    PadicElement r = a;
    for (int i = 0; i < e_; ++i) r.c[i] = a.c[i] ? mod_ - a.c[i] : 0;
    return r;
}

PadicElement PadicPlace::sub(const PadicElement& a, const PadicElement& b) const { return add(a, neg(b)); }

PadicElement PadicPlace::mul(const PadicElement& a, const PadicElement& b) const {
    std::array<u64, 5> t{};
    for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) t[i + j] = addmod(t[i + j], mulmod(a.c[i], b.c[j]));
    for (int k = 2 * e_ - 2; k >= e_; --k) {
        if (!t[k]) continue;
        for (int i = 0; i < e_; ++i) t[k - e_ + i] = addmod(t[k - e_ + i], mulmod(t[k], red_[i]));
        t[k] = 0;
    }
    PadicElement r;
    r.shift = a.shift + b.shift;
    for (int i = 0; i < e_; ++i) r.c[i] = t[i];
    return r;
}

PadicElement PadicPlace::scale(const PadicElement& a, const Integer& k) const {
    return mul(a, from_integer(k));
}

int PadicPlace::valuation(const PadicElement& a) const {
    int best = e_ * M_;
    for (int i = 0; i < e_; ++i) {
        if (!a.c[i]) continue;
        int v = 0;
        u64 x = a.c[i];
        while (x % static_cast<u64>(p_) == 0) {
            x /= static_cast<u64>(p_);
            ++v;
        }
        best = std::min(best, e_ * v + i);
    }
    return best - e_ * a.shift;
}

double PadicPlace::abs(const PadicElement& a) const {
    const int v = valuation(a);
    if (v >= absolute_precision(a)) return 0.0;
    return std::pow(static_cast<double>(p_), -static_cast<double>(v) / e_);
}

std::vector<int> PadicPlace::digits(const PadicElement& a, int count) const {
    // p^-s = pi^(-e s) u^s, so digits of u^s * c start at index -e s.
    PadicElement y{a.c, 0};
    for (int k = 0; k < a.shift; ++k) y = mul(y, PadicElement{u_, 0});
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count));
    const u64 p = static_cast<u64>(p_);
    for (int j = 0; j < count; ++j) {
        const u64 d = y.c[0] % p;
        out.push_back(static_cast<int>(d));
        // (y - d) / pi: the constant term moves up through p / pi = pi^(e-1) u^-1.
        u64 c0 = (y.c[0] + mod_ - d) % mod_ / p;
        PadicElement next;
        for (int i = 0; i + 1 < e_; ++i) next.c[i] = y.c[i + 1];
        PadicElement carry{{c0, 0, 0}, 0};
        PadicElement top{{}, 0};
        top.c[e_ - 1] = 1;
        carry = mul(mul(carry, top), PadicElement{u_inv_, 0});
        y = add(next, carry);
    }
    return out;
}

double PadicPlace::project(const PadicElement& a, int count) const {
    auto ds = digits(a, count);
    const int first = -e_ * a.shift;
    double s = 0;
    for (int j = 0; j < count; ++j)
        s += ds[j] * std::pow(static_cast<double>(p_), -static_cast<double>(first + j) - 1.0);
    return s;
}

double PadicPlace::metric_modulus() const {
    return std::pow(static_cast<double>(p_), -static_cast<double>(lambda_num_) / lambda_den_);
}

double PadicPlace::haar_modulus() const {
    // |N(beta)|_p = p^-(e f v_p(beta))
    return std::pow(static_cast<double>(p_), -static_cast<double>(lambda_num_) * e_ / lambda_den_);
}

}  // namespace betanum
