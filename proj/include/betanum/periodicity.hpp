#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "betanum/rauzy.hpp"

namespace betanum {

/// A point (a, b) of K_beta x R. When `exact` is set, b is that element and
/// point.real_coord is its approximation.
struct NaturalExtensionState {
    EmbeddedPoint point;
    std::optional<FieldElement> exact;
};

NaturalExtensionState extension_state(const RepresentationSpace& space, const FieldElement& x);

/// (a, b) -> (h(a) - [beta b] delta(1), beta b - [beta b]). Throws OutOfRange, FloorUndecidable.
NaturalExtensionState natural_extension_step(const RepresentationSpace& space, const NaturalExtensionState& s);

/// Two-sided word: left part w_0 w_1 ... (finite, w_0 nearest the point), right part u_1 u_2 ...
struct TwoSidedWord {
    DigitWord left;
    EventuallyPeriodicWord right;
};

/// phi~(w, u) = (-delta(sum w_i beta^i), sum u_i beta^-i), with the real part exact.
NaturalExtensionState represent(const RepresentationSpace& space, const TwoSidedWord& w);
TwoSidedWord shift(const TwoSidedWord& w);
TwoSidedWord shift_inverse(const TwoSidedWord& w);
/// (a, b) -> (h^-1(a + c delta(1)), (b + c) / beta)
NaturalExtensionState inverse_step(const RepresentationSpace& space, const NaturalExtensionState& s, int c);

/// Sup deviation over arch places, p-adic places and the real coordinate.
double state_deviation(const RepresentationSpace& space, const NaturalExtensionState& a,
                       const NaturalExtensionState& b);

/// Random bi-infinite admissible words read off walks of the automaton. Right parts are
/// strictly admissible, so u = d* and its tails never occur.
std::vector<TwoSidedWord> sample_two_sided(const ParryData& parry, int count, int left_length,
                                           std::uint64_t seed);
enum class SampleKind { Mixed, Rational, NonRational };
/// Random elements of [0,1): reduced p/q with q <= 50, and a*beta + b with small rational a, b.
/// NonRational needs degree >= 2.
std::vector<FieldElement> sample_elements(const PisotField& field, int count, std::uint64_t seed,
                                          SampleKind kind = SampleKind::Mixed);

struct CommutationReport {
    int samples = 0;
    int excluded = 0;
    /// Words with w_0 u = d*, where the inverse step reaches b = 1.
    int minus_excluded = 0;
    double prop1 = 0;
    double prop2 = 0;
    double minus = 0;
    double max() const;
};

/// Evaluates both sides of the two commutation relations and the inverse-step identity.
/// Words whose right part is not strictly admissible are counted in `excluded`; the inverse-step
/// identity also skips words with w_0 u not strictly admissible.
CommutationReport check_commutation(const RepresentationSpace& space, const ParryData& parry,
                                    const std::vector<TwoSidedWord>& words, const std::vector<FieldElement>& points);

struct ExactVerdict {
    bool purely_periodic = false;
    /// Period length of the expansion (1 for finite expansions).
    int period = 0;
    DigitWord period_word;
};

/// Throws OutOfRange, OrbitBudgetExceeded.
ExactVerdict is_purely_periodic_exact(const PisotField& field, const FieldElement& x);
MembershipVerdict is_purely_periodic_geometric(const RepresentationSpace& space, const CylinderSet& cyl,
                                               const FieldElement& x);

enum class Agreement { Agree, GeometricUndecided, CONFLICT };
std::string agreement_name(Agreement a);

struct PeriodicityReport {
    FieldElement x;
    /// Set for rational inputs; (q, p) orders the reports.
    std::optional<Rational> rational;
    bool exact_verdict = false;
    int exact_period = 0;
    MembershipVerdict geometric_verdict;
    Agreement agreement = Agreement::GeometricUndecided;
};

Agreement classify_agreement(bool exact, const MembershipVerdict& geometric);
PeriodicityReport decide(const CylinderSet& cyl, const FieldElement& x);

struct CrossCheckOptions {
    int depth = 16;
    int extra_samples = 0;
    std::uint64_t seed = 20240601;
    int workers = 0;  // 0: hardware concurrency
};

/// Every reduced p/q in [0,1) with q <= max_q, then the extra samples.
std::vector<PeriodicityReport> cross_check(const PisotField& field, int max_q, const CrossCheckOptions& opt = {});
std::vector<PeriodicityReport> cross_check(const CylinderSet& cyl, const std::vector<FieldElement>& xs,
                                           int workers = 0);

struct CrossCheckSummary {
    int tested = 0;
    int agree = 0;
    int undecided = 0;
    int conflicts = 0;
    int periodic = 0;
};
CrossCheckSummary summarize(const std::vector<PeriodicityReport>& reports);

/// One record per x, then the summary block.
std::string report_text(const std::vector<PeriodicityReport>& reports);

}  // namespace betanum
