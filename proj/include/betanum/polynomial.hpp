#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace betanum {

using Integer = mpz_class;
using Rational = mpq_class;

// Dense polynomials, constant term first. The zero polynomial is the empty vector.
using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<Rational>;

namespace poly {

int degree(const IntPoly& p);
int degree(const RatPoly& p);
void trim(IntPoly& p);
void trim(RatPoly& p);

IntPoly from_ints(const std::vector<long>& coeffs);
RatPoly to_rational(const IntPoly& p);

/// Clears denominators and divides out the content; leading coefficient made positive.
IntPoly primitive_part(const RatPoly& p);
Integer content(const IntPoly& p);

IntPoly derivative(const IntPoly& p);
IntPoly add(const IntPoly& a, const IntPoly& b);
IntPoly sub(const IntPoly& a, const IntPoly& b);
IntPoly mul(const IntPoly& a, const IntPoly& b);

/// Euclidean division over Q; b must be nonzero.
RatPoly divmod(const RatPoly& a, const RatPoly& b, RatPoly& remainder);

/// Primitive gcd with positive leading coefficient (constant 1 when coprime).
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// a / b when b divides a over Z[X]; throws DegenerateInput otherwise.
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);
bool divides(const IntPoly& b, const IntPoly& a);

Rational eval(const IntPoly& p, const Rational& x);
int sign_at(const IntPoly& p, const Rational& x);

/// X^deg p(1/X).
IntPoly reciprocal(const IntPoly& p);

/// The n-th cyclotomic polynomial.
IntPoly cyclotomic(int n);

/// Number of distinct real roots (Sturm).
int count_real_roots(const IntPoly& p);

std::string to_string(const IntPoly& p, char var = 'X');

}  // namespace poly
}  // namespace betanum
