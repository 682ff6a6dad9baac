#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "betanum/polynomial.hpp"

namespace betanum {

/// p^-shift * sum c_i pi^i, coefficients reduced mod p^M.
struct PadicElement {
    std::array<std::uint64_t, 3> c{};
    int shift = 0;
};

/// One completion Q_p(pi) of Q(beta) in which beta is small. Either a linear
/// factor (e = 1, pi = p) or a totally ramified Eisenstein factor of degree
/// e <= 3 (pi = image of beta).
class PadicPlace {
   public:
    /// All places above p where |beta| < 1. Throws UnsupportedRamification.
    static std::vector<PadicPlace> above(const IntPoly& minpoly, long p);

    long prime() const { return p_; }
    int ramification() const { return e_; }
    int residue_degree() const { return 1; }
    int precision() const { return M_; }
    std::uint64_t modulus() const { return mod_; }
    /// The lifted local factor (monic, reduced mod p^M).
    const IntPoly& factor() const { return factor_; }
    /// v_p(beta) at this place, as num/den.
    int beta_valuation_num() const { return lambda_num_; }
    int beta_valuation_den() const { return lambda_den_; }

    const PadicElement& beta() const { return beta_; }
    PadicElement zero() const { return {}; }
    PadicElement from_integer(const Integer& z) const;
    /// Throws PrecisionExhausted if the p-part of the denominator eats the precision.
    PadicElement from_rational(const Rational& q) const;

    PadicElement add(const PadicElement& a, const PadicElement& b) const;
    PadicElement sub(const PadicElement& a, const PadicElement& b) const;
    PadicElement neg(const PadicElement& a) const;
    PadicElement mul(const PadicElement& a, const PadicElement& b) const;
    PadicElement scale(const PadicElement& a, const Integer& k) const;

    /// Valuation in units of 1/e (pi-adic), or absolute_precision(a) if a vanishes to that precision.
    int valuation(const PadicElement& a) const;
    int absolute_precision(const PadicElement& a) const { return e_ * (M_ - a.shift); }
    /// p^(-v/e)
    double abs(const PadicElement& a) const;
    double distance(const PadicElement& a, const PadicElement& b) const { return abs(sub(a, b)); }

    /// pi-adic digits d_j for j = first .. first+count-1 with first = -e*shift.
    std::vector<int> digits(const PadicElement& a, int count) const;
    /// sum d_j p^(-j-1) over the first `count` digits
    double project(const PadicElement& a, int count) const;

    /// |beta| in the normalized metric, p^(-v_p(beta)).
    double metric_modulus() const;
    /// Haar scaling of multiplication by beta, |N(beta)|_p.
    double haar_modulus() const;

   private:
    std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t addmod(std::uint64_t a, std::uint64_t b) const;
    std::array<std::uint64_t, 3> raise(const std::array<std::uint64_t, 3>& c, int by) const;

    long p_ = 2;
    int e_ = 1;
    int M_ = 1;
    std::uint64_t mod_ = 2;
    int lambda_num_ = 1;
    int lambda_den_ = 1;
    IntPoly factor_;
    // pi^e = sum red_[i] pi^i and pi^e = p * u
    std::array<std::uint64_t, 3> red_{};
    std::array<std::uint64_t, 3> u_{};
    std::array<std::uint64_t, 3> u_inv_{};
    PadicElement beta_;
};

/// Largest M with p^(M+1) < 2^62.
int max_padic_digits(long p);

}  // namespace betanum
