#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "betanum/numberfield.hpp"
#include "betanum/padic.hpp"

namespace betanum {

enum class PlaceKind { RealConjugate, ComplexConjugate, PadicFactor };

struct PlaceDescriptor {
    PlaceKind kind;
    /// Index into the field's conjugate list or into RepresentationSpace::padic().
    int index;
    /// |beta| at this place (metric contraction).
    double modulus;
    /// Haar scaling of multiplication by beta.
    double haar;
    std::string label() const;
};

struct EmbeddedPoint {
    std::vector<std::complex<long double>> arch;
    std::vector<PadicElement> padic;
    std::optional<long double> real_coord;
};

struct PrecisionPolicy {
    double eps = 1e-12;
    /// Target p-adic digits; a place whose p^-M is finer than 2^-padic_digits is accepted with M digits.
    int padic_digits = 32;
};

/// K_beta: one coordinate per real conjugate, per complex pair, and per
/// p-adic place where beta is small.
class RepresentationSpace {
   public:
    explicit RepresentationSpace(PisotField field, PrecisionPolicy policy = {});

    const PisotField& field() const { return field_; }
    const std::vector<PlaceDescriptor>& places() const { return places_; }
    const std::vector<PadicPlace>& padic() const { return padic_; }
    const PrecisionPolicy& policy() const { return policy_; }
    /// Digits kept at p-adic place k: the policy count, capped by the place precision.
    int padic_digits(int k) const;
    int arch_count() const { return static_cast<int>(field_.conjugates().size()); }
    /// Real dimension of the Archimedean part.
    int arch_dimension() const;
    const std::complex<long double>& arch_root(int i) const { return field_.conjugate_approx()[i]; }
    bool arch_is_complex(int i) const { return i >= field_.real_conjugate_count(); }

    /// x at arch place i. Large coefficients are evaluated in extended precision.
    std::complex<long double> arch_value(const FieldElement& x, int i) const;
    /// Throws PrecisionExhausted.
    EmbeddedPoint delta(const FieldElement& x) const;
    /// Image at p-adic place k with no precision check. Throws PrecisionExhausted only when the
    /// denominator exceeds the place modulus.
    PadicElement padic_image(const FieldElement& x, int k) const;
    EmbeddedPoint h_beta(const EmbeddedPoint& pt) const;
    EmbeddedPoint zero() const;
    EmbeddedPoint add(const EmbeddedPoint& a, const EmbeddedPoint& b) const;
    EmbeddedPoint sub(const EmbeddedPoint& a, const EmbeddedPoint& b) const;
    EmbeddedPoint neg(const EmbeddedPoint& a) const;
    EmbeddedPoint scale(const EmbeddedPoint& a, long k) const;
    EmbeddedPoint mul(const EmbeddedPoint& a, const EmbeddedPoint& b) const;

    /// Sup over places of the per-place distance (p-adic places use p^-v).
    double distance(const EmbeddedPoint& a, const EmbeddedPoint& b) const;
    double max_modulus() const;

    /// One record line: arch pairs, p-adic digit strings (least significant first), real coordinate.
    std::string serialize(const EmbeddedPoint& pt) const;

   private:
    PisotField field_;
    PrecisionPolicy policy_;
    std::vector<PlaceDescriptor> places_;
    std::vector<PadicPlace> padic_;
    /// Conjugates at kRootBits, empty if that refinement failed.
    std::vector<std::pair<mpf_class, mpf_class>> roots_hp_;
};

RepresentationSpace places(const PisotField& field, PrecisionPolicy policy = {});
std::vector<double> contraction_moduli(const RepresentationSpace& space);

/// Prime divisors of |n|.
std::vector<long> prime_divisors(const Integer& n);

}  // namespace betanum
