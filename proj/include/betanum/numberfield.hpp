#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "betanum/polynomial.hpp"
#include "betanum/roots.hpp"

namespace betanum {

class FieldElement;

/// Q(beta) for a Pisot number beta given by its minimal polynomial. Cheap to
/// copy; all copies share the same immutable root data.
class PisotField {
   public:
    /// Coefficients constant term first, monic. Throws NotPisot or DegenerateInput.
    static PisotField make(const std::vector<long>& coeffs);
    static PisotField from_minpoly(const IntPoly& minpoly);

    int degree() const;
    const IntPoly& minpoly() const;

    /// Certified isolating interval of beta (width about 2^-160).
    const RealInterval& dominant() const;
    /// Interval of width <= max_width; does not touch the stored data.
    RealInterval dominant_refined(const Rational& max_width) const;
    long double beta_approx() const;

    /// Conjugates other than beta: real ones first, then one representative
    /// (positive imaginary part) per complex pair.
    const std::vector<RootDisc>& conjugates() const;
    const std::vector<std::complex<long double>>& conjugate_approx() const;
    int real_conjugate_count() const;
    int complex_pair_count() const;

    Integer floor_beta() const;
    bool integer_base() const { return degree() == 1; }

    /// "c0 c1 ... 1", the field descriptor line.
    std::string descriptor() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement beta() const;
    FieldElement from_rational(const Rational& q) const;
    FieldElement from_coeffs(const std::vector<Rational>& coeffs) const;
    FieldElement from_int(long n) const;

    bool operator==(const PisotField& o) const;
    bool operator!=(const PisotField& o) const { return !(*this == o); }

   private:
    struct Data;
    std::shared_ptr<const Data> d_;
    friend class FieldElement;
};

/// Parses a descriptor line of integer coefficients. Throws ParseError.
std::vector<long> parse_descriptor(const std::string& line);

/// sum num[i] beta^i / den in canonical form.
class FieldElement {
   public:
    FieldElement(PisotField field, std::vector<Integer> num, Integer den);

    const PisotField& field() const { return field_; }
    const std::vector<Integer>& numerator() const { return num_; }
    const Integer& denominator() const { return den_; }
    Rational coeff(int i) const;

    bool is_zero() const;
    bool is_rational() const;
    /// Requires is_rational().
    Rational as_rational() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement pow(long k) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    /// Image under beta -> dominant root, enclosed in an interval of width <= eps.
    RealInterval real_value(const Rational& eps) const;
    long double approx() const;
    Integer floor() const;
    int sign() const;
    /// 0 <= x < 1
    bool in_unit_interval() const;

    /// Evaluation at an arbitrary complex number (embedding helpers).
    std::complex<long double> eval(std::complex<long double> z) const;

    /// "n0 n1 .../den"
    std::string to_string() const;
    std::size_t hash() const;

   private:
    void canonicalize();
    PisotField field_;
    std::vector<Integer> num_;
    Integer den_;
};

int compare(const FieldElement& a, const FieldElement& b);

/// Parses "p/q", an integer, or "c0 c1 .../den" coefficient form.
FieldElement parse_element(const PisotField& field, const std::string& text);

}  // namespace betanum

template <>
struct std::hash<betanum::FieldElement> {
    std::size_t operator()(const betanum::FieldElement& x) const noexcept { return x.hash(); }
};
