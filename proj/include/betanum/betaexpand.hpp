#pragma once

#include <string>
#include <vector>

#include "betanum/numberfield.hpp"

namespace betanum {

using DigitWord = std::vector<int>;

/// Digits 0-9 print as themselves, larger ones as {12}.
std::string digits_string(const DigitWord& w);
DigitWord parse_digits(const std::string& s);

/// preperiod . period^inf; an empty period stands for a finite word (0^inf tail).
struct EventuallyPeriodicWord {
    DigitWord preperiod;
    DigitWord period;

    int digit(std::size_t i) const;
    bool finite() const;
    /// "11", "31^∞", "(110)^∞"
    std::string to_string() const;
    bool operator==(const EventuallyPeriodicWord& o) const = default;
};

/// Primitive period, minimal preperiod; a zero period becomes the finite form.
EventuallyPeriodicWord canonical(DigitWord preperiod, DigitWord period);

/// Lexicographic order on infinite words.
int lex_compare(const EventuallyPeriodicWord& a, const EventuallyPeriodicWord& b);

enum class ParryKind { SimpleParry, NonSimpleParry };

struct ParryData {
    EventuallyPeriodicWord d_beta_one;
    EventuallyPeriodicWord d_star;
    ParryKind kind = ParryKind::SimpleParry;
    int n = 0;
    int p = 0;
    int d = 0;
    /// t_1..t_d, the digits of d_beta(1) labelling the automaton chain.
    DigitWord t;
    /// Largest digit allowed in expansions of x < 1.
    int max_digit = 0;
};

struct ExpansionResult {
    DigitWord preperiod;
    DigitWord period;
    bool purely_periodic = false;
};

constexpr long kDefaultMaxSteps = 1000000;

/// beta x mod 1 for 0 <= x < 1. Throws OutOfRange.
FieldElement t_beta(const FieldElement& x);

/// Greedy expansion with exact cycle detection. Throws OutOfRange, OrbitBudgetExceeded.
ExpansionResult expand(const FieldElement& x, long max_steps = kDefaultMaxSteps);

ParryData classify_parry(const PisotField& field, long max_steps = kDefaultMaxSteps);

enum class Side { Right, LeftFactor };

/// Right: every suffix of w.0^inf is < d* (<= d* when strict is false).
/// LeftFactor: w labels a path of the automaton (equivalently its reversal in the reversed one).
bool admissible(const ParryData& parry, const DigitWord& w, Side side, bool strict = true);

/// Every suffix of the infinite word compared against d*.
bool admissible(const ParryData& parry, const EventuallyPeriodicWord& w, bool strict = true);

/// Exact value of sum u_i beta^-i for u = preperiod.period^inf. Throws InadmissibleWord.
FieldElement value_of_periodic(const PisotField& field, const ParryData& parry, const DigitWord& preperiod,
                               const DigitWord& period);
FieldElement value_of_periodic(const PisotField& field, const DigitWord& preperiod, const DigitWord& period);

}  // namespace betanum
