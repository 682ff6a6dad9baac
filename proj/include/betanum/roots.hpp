#pragma once

#include <complex>
#include <vector>

#include "betanum/polynomial.hpp"

namespace betanum {

struct ComplexQ {
    Rational re;
    Rational im;
};

/// Closed disc that provably contains exactly one root of the polynomial it
/// was isolated from. Real roots carry a real center.
struct RootDisc {
    ComplexQ center;
    Rational radius;
    bool real = false;

    std::complex<long double> approx() const;
    /// Certified upper/lower bounds of |z - 0| over the disc (as squares).
    Rational max_modulus_sq() const;
    Rational min_modulus_sq() const;  // 0 when the disc contains the origin
};

struct RealInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    double mid() const { return Rational((lo + hi) / 2).get_d(); }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

enum class UnitCirclePosition { Inside, Outside, Undecided };

/// Where a disc lies relative to the unit circle (certified).
UnitCirclePosition unit_circle_position(const RootDisc& d);

/// Isolates every root of a square-free polynomial. `bits` is the working
/// precision of the refined centers. Returns an empty vector when the inclusion
/// discs are not yet pairwise disjoint at that precision.
std::vector<RootDisc> isolate_roots(const IntPoly& squarefree, int bits);

/// Doubles the working precision (from 64 up to max_bits) until the discs
/// separate. Throws DegenerateInput if isolation never succeeds.
std::vector<RootDisc> isolate_roots_adaptive(const IntPoly& squarefree, int max_bits = 4096);

/// Same, but keeps refining while `decided` returns false.
template <class Pred>
std::vector<RootDisc> isolate_until(const IntPoly& squarefree, Pred decided, int max_bits = 4096) {
    std::vector<RootDisc> last;
    for (int bits = 64; bits <= max_bits; bits *= 2) {
        auto discs = isolate_roots(squarefree, bits);
        if (discs.empty()) continue;
        last = std::move(discs);
        if (decided(last)) return last;
    }
    return last;
}

/// Bisects a sign-change interval of a simple real root until width <= max_width.
RealInterval refine_real_root(const IntPoly& p, RealInterval iv, const Rational& max_width);

/// Rational upper bound of sqrt(q) with relative slack of about 2^-bits.
Rational sqrt_upper(const Rational& q, int bits = 96);
Rational sqrt_lower(const Rational& q, int bits = 96);

/// Rounds to the dyadic grid 2^-bits.
Rational round_dyadic(const Rational& x, int bits);

}  // namespace betanum
