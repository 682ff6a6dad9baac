#pragma once

#include <string>
#include <vector>

#include "betanum/betaexpand.hpp"

namespace betanum {

struct Edge {
    int from;
    int label;
    int to;
    auto operator<=>(const Edge&) const = default;
};

/// States are 0..d-1 standing for a_1..a_d; every state is initial and accepting.
struct SoficAutomaton {
    int state_count = 0;
    std::vector<Edge> edges;

    std::vector<Edge> out_edges(int state) const;
    /// entry (i, j) = number of edges a_i -> a_j
    std::vector<std::vector<long>> adjacency() const;
    bool deterministic() const;
    bool operator==(const SoficAutomaton& o) const;
};

using Matrix = std::vector<std::vector<long>>;

struct Substitution {
    /// images[i] is sigma(i+1) as 1-based letters.
    std::vector<std::vector<int>> images;

    int size() const { return static_cast<int>(images.size()); }
    /// "1 -> 12" lines
    std::string to_string() const;
    std::string image_string(int letter) const;
};

SoficAutomaton build_automaton(const ParryData& parry);
SoficAutomaton reverse(const SoficAutomaton& aut);
bool is_factor(const SoficAutomaton& aut, const DigitWord& w);

/// Graph description text (digraph with label attributes).
std::string to_dot(const SoficAutomaton& aut, const std::string& name = "M");

Substitution build_substitution(const ParryData& parry);
Matrix incidence(const Substitution& sub);
Matrix transpose(const Matrix& m);

/// det(X I - M), exact.
IntPoly char_poly(const Matrix& m);
/// Dominant eigenvalue simple, every other eigenvalue nonzero of modulus < 1.
bool is_pisot_type(const Matrix& m);

/// Splits p into known, cyclotomic, linear and leftover factors (with repetition).
std::vector<IntPoly> factor_for_display(const IntPoly& p, const std::vector<IntPoly>& known = {});
/// "(X^3 - X - 1)(X^2 - X + 1)"
std::string factorization_string(const std::vector<IntPoly>& factors);

/// U_0..U_N of the canonical numeration system. Throws OutOfRange on overflow.
std::vector<Integer> numeration(const ParryData& parry, int N);
/// Greedy digits w_{N-1} .. w_0 (most significant first) with i = sum w_k U_k.
DigitWord greedy_rep(const ParryData& parry, const Integer& i, int N);
DigitWord greedy_rep(const std::vector<Integer>& u, const Integer& i, int N);

}  // namespace betanum
