#include "betanum/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "betanum/error.hpp"

namespace betanum {
namespace {

using cld = std::complex<long double>;

ComplexQ csub(const ComplexQ& a, const ComplexQ& b) { return {a.re - b.re, a.im - b.im}; }
ComplexQ cmul(const ComplexQ& a, const ComplexQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Rational cnorm(const ComplexQ& a) { return a.re * a.re + a.im * a.im; }
ComplexQ cdiv(const ComplexQ& a, const ComplexQ& b) {
    Rational n = cnorm(b);
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

ComplexQ ceval(const IntPoly& p, const ComplexQ& z) {
    ComplexQ acc{0, 0};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = cmul(acc, z);
        acc.re += *it;
    }
    return acc;
}

// Aberth-Ehrlich simultaneous iteration; good to long double precision for
// simple roots, which is all we need to seed the exact refinement.
std::vector<cld> aberth(const IntPoly& p) {
    const int n = poly::degree(p);
    std::vector<cld> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = cld(p[i].get_d(), 0);
    long double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i]) / std::abs(c[n]));
    bound = 1 + bound;
    std::vector<cld> z(n);
    for (int k = 0; k < n; ++k) {
        long double ang = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
        z[k] = std::polar(bound * 0.7L, ang);
    }
    auto evalp = [&](cld x, cld& dp) {
        cld v = c[n];
        dp = 0;
        for (int i = n - 1; i >= 0; --i) {
            dp = dp * x + v;
            v = v * x + c[i];
        }
        return v;
    };
    for (int iter = 0; iter < 2000; ++iter) {
        long double maxstep = 0;
        for (int k = 0; k < n; ++k) {
            cld dp;
            cld v = evalp(z[k], dp);
            if (v == cld(0)) continue;
            cld ratio = v / dp;
            cld s = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) s += 1.0L / (z[k] - z[j]);
            cld w = ratio / (1.0L - ratio * s);
            z[k] -= w;
            maxstep = std::max(maxstep, std::abs(w) / (1 + std::abs(z[k])));
        }
        if (maxstep < 1e-19L) break;
    }
    return z;
}

Rational to_rational(long double x) {
    // long double -> exact dyadic via frexp.
    if (x == 0) return 0;
    int e;
    long double m = std::frexp(x, &e);
    auto mant = static_cast<long long>(std::ldexp(m, 63));
    Rational r{Integer(static_cast<long>(mant))};
    if (e - 63 >= 0)
        r *= Rational(Integer(1) << (e - 63));
    else
        r /= Rational(Integer(1) << (63 - e));
    return r;
}

}  // namespace

Rational round_dyadic(const Rational& x, int bits) {
    Integer scale = Integer(1) << bits;
    Rational y = x * scale + Rational(1, 2);
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    Rational out(f, scale);
    out.canonicalize();
    return out;
}

Rational sqrt_upper(const Rational& q, int bits) {
    if (q <= 0) return 0;
    Integer ab = q.get_num() * q.get_den();
    ab <<= 2 * bits;
    Integer s;
    mpz_sqrt(s.get_mpz_t(), ab.get_mpz_t());
    Rational r(s + 1, q.get_den() << bits);
    r.canonicalize();
    return r;
}

Rational sqrt_lower(const Rational& q, int bits) {
    if (q <= 0) return 0;
    Integer ab = q.get_num() * q.get_den();
    ab <<= 2 * bits;
    Integer s;
    mpz_sqrt(s.get_mpz_t(), ab.get_mpz_t());
    Rational r(s, q.get_den() << bits);
    r.canonicalize();
    return r;
}

std::complex<long double> RootDisc::approx() const {
    auto ld = [](const Rational& q) {
        double hi = q.get_d();
        return static_cast<long double>(hi) + static_cast<long double>(Rational(q - hi).get_d());
    };
    return {ld(center.re), ld(center.im)};
}

Rational RootDisc::max_modulus_sq() const {
    Rational m = sqrt_upper(cnorm(center)) + radius;
    return m * m;
}

Rational RootDisc::min_modulus_sq() const {
    Rational m = sqrt_lower(cnorm(center)) - radius;
    if (m <= 0) return 0;
    return m * m;
}

UnitCirclePosition unit_circle_position(const RootDisc& d) {
    const Rational c2 = cnorm(d.center);
    if (d.radius < 1) {
        Rational t = 1 - d.radius;
        if (c2 < t * t) return UnitCirclePosition::Inside;
    }
    Rational t = 1 + d.radius;
    if (c2 > t * t) return UnitCirclePosition::Outside;
    return UnitCirclePosition::Undecided;
}

std::vector<RootDisc> isolate_roots(const IntPoly& squarefree, int bits) {
    IntPoly p = squarefree;
    poly::trim(p);
    const int n = poly::degree(p);
    if (n < 1) throw DegenerateInput("cannot isolate roots of a constant");
    if (n == 1) {
        RootDisc d;
        d.center = {Rational(-p[0], p[1]), 0};
        d.center.re.canonicalize();
        d.radius = 0;
        d.real = true;
        return {d};
    }

    const int real_count = poly::count_real_roots(p);
    std::vector<cld> approx = aberth(p);
    std::sort(approx.begin(), approx.end(),
              [](cld a, cld b) { return std::abs(a.imag()) < std::abs(b.imag()); });

    // Real roots first (snapped onto the axis), then one representative with
    // positive imaginary part per conjugate pair.
    std::vector<Rational> reals;
    for (int i = 0; i < real_count; ++i) reals.push_back(to_rational(approx[i].real()));
    std::vector<cld> rest(approx.begin() + real_count, approx.end());
    std::sort(rest.begin(), rest.end(), [](cld a, cld b) { return a.imag() > b.imag(); });
    const int pairs = (n - real_count) / 2;
    std::vector<ComplexQ> uppers;
    for (int i = 0; i < pairs; ++i)
        uppers.push_back({to_rational(rest[i].real()), to_rational(std::abs(rest[i].imag()))});

    // Newton refinement in exact arithmetic, rounded to the working grid.
    const IntPoly dp = poly::derivative(p);
    for (auto& x : reals) {
        for (int it = 0; it < 64; ++it) {
            Rational d = poly::eval(dp, x);
            if (d == 0) break;
            Rational step = poly::eval(p, x) / d;
            x = round_dyadic(x - step, bits);
            Rational tiny(Integer(1), Integer(1) << bits);
            if (abs(step) <= tiny) break;
        }
    }
    for (auto& z : uppers) {
        for (int it = 0; it < 64; ++it) {
            ComplexQ d = ceval(dp, z);
            if (cnorm(d) == 0) break;
            ComplexQ step = cdiv(ceval(p, z), d);
            z = {round_dyadic(z.re - step.re, bits), round_dyadic(z.im - step.im, bits)};
            Rational tiny(Integer(1), Integer(1) << (2 * bits));
            if (cnorm(step) <= tiny) break;
        }
    }

    std::vector<ComplexQ> all;
    std::vector<bool> is_real;
    for (auto& x : reals) {
        all.push_back({x, 0});
        is_real.push_back(true);
    }
    for (auto& z : uppers) {
        all.push_back(z);
        is_real.push_back(false);
        all.push_back({z.re, -z.im});
        is_real.push_back(false);
    }
    if (static_cast<int>(all.size()) != n) return {};

    // Braess-Hadeler inclusion: every root lies in the union of the discs
    // |z - z_i| <= n |W_i|; a component made of m discs holds m roots.
    std::vector<RootDisc> discs(all.size());
    const ComplexQ lc{p[n], 0};
    for (int i = 0; i < n; ++i) {
        ComplexQ prod = lc;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            ComplexQ diff = csub(all[i], all[j]);
            if (cnorm(diff) == 0) return {};
            prod = cmul(prod, diff);
        }
        ComplexQ w = cdiv(ceval(p, all[i]), prod);
        discs[i].center = all[i];
        discs[i].radius = sqrt_upper(cnorm(w)) * n;
        discs[i].real = is_real[i];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rational rr = discs[i].radius + discs[j].radius;
            if (cnorm(csub(discs[i].center, discs[j].center)) <= rr * rr) return {};
        }
    return discs;
}

std::vector<RootDisc> isolate_roots_adaptive(const IntPoly& squarefree, int max_bits) {
    for (int bits = 64; bits <= max_bits; bits *= 2) {
        auto d = isolate_roots(squarefree, bits);
        if (!d.empty()) return d;
    }
    throw DegenerateInput("root isolation did not separate the roots of " +
                          poly::to_string(squarefree));
}

RealInterval refine_real_root(const IntPoly& p, RealInterval iv, const Rational& max_width) {
    int slo = poly::sign_at(p, iv.lo);
    int shi = poly::sign_at(p, iv.hi);
    if (slo == 0) return {iv.lo, iv.lo};
    if (shi == 0) return {iv.hi, iv.hi};
    if (slo == shi) throw DegenerateInput("interval does not bracket a sign change");
    while (iv.width() > max_width) {
        Rational mid = (iv.lo + iv.hi) / 2;
        int sm = poly::sign_at(p, mid);
        if (sm == 0) return {mid, mid};
        if (sm == slo)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    return iv;
}

}  // namespace betanum
