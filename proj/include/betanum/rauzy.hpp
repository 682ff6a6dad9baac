#pragma once

#include <complex>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "betanum/embedding.hpp"
#include "betanum/sofic.hpp"

namespace betanum {

/// Flat storage: arch_count complex values and padic_count p-adic values per point.
struct PointCloud {
    int arch_count = 0;
    int padic_count = 0;
    std::vector<std::complex<double>> arch;
    std::vector<PadicElement> padic;

    std::size_t size() const;
    void push(const std::complex<long double>* a, const PadicElement* p);
    void pop();
    EmbeddedPoint point(const RepresentationSpace& space, std::size_t i) const;
};

struct FractalApprox {
    int depth = 0;
    /// Pieces R(1..d), stored without the minus sign.
    std::vector<PointCloud> pieces;
    std::string seed = "origin";
};

/// Certified radii of the pieces, per state and per place.
struct RadiusBounds {
    std::vector<std::vector<double>> rad;  // [state][place]
    std::vector<double> moduli;            // |beta| per place
    /// max over places of |beta|_v^k * max_i rad[i][v]
    double diam(int k) const;
};

RadiusBounds radius_bounds(const RepresentationSpace& space, const SoficAutomaton& aut, long path_budget = 200000);

/// depth k+1 from depth k by R(i) = U delta(c) + h(R(j)) over edges a_j -c-> a_i.
FractalApprox iterate_ifs(const RepresentationSpace& space, const SoficAutomaton& aut, int depth);
/// Same set, built from the label paths of the reversed automaton.
FractalApprox enumerate_paths(const RepresentationSpace& space, const SoficAutomaton& aut, int depth);

/// Label words w_0 .. w_{k-1} per piece, by set recursion and by path walking.
std::vector<std::set<DigitWord>> ifs_words(const SoficAutomaton& aut, int depth);
std::vector<std::set<DigitWord>> path_words(const SoficAutomaton& aut, int depth);

/// delta(beta^l) for l = 0..n, with the p-adic multiples c * beta^l for c = 0..max_digit.
struct BetaPowers {
    int max_digit = 0;
    std::vector<std::vector<std::complex<long double>>> arch;   // [l][place]
    std::vector<std::vector<PadicElement>> padic;               // [l][c * np + k]
};
BetaPowers beta_powers(const RepresentationSpace& space, int n, int max_digit);

/// Calls f(arch, padic) for every length-`depth` path of the reversed automaton from `state`.
template <class F>
void for_each_path_point(const RepresentationSpace& space, const SoficAutomaton& aut, const BetaPowers& pw,
                         int state, int depth, F&& f);

/// Point counts per piece: row sums of (A^T)^k.
std::vector<Integer> piece_counts(const SoficAutomaton& aut, int depth);

/// Value of the maximal admissible future read from each state.
std::vector<FieldElement> cylinder_heights(const ParryData& parry, const PisotField& field);

enum class Verdict { In, Out, BoundaryUnknown };
std::string verdict_name(Verdict v);

struct MembershipVerdict {
    Verdict verdict = Verdict::BoundaryUnknown;
    /// Distance to the nearest depth-k point; a certified lower bound when Out.
    double distance = 0;
    int depth = 0;
    double tol_in = 0;
    double tol_out = 0;
    int piece = -1;
    /// In backed by an exact periodic path (exact inputs only).
    bool certified = false;
};

/// Union of (-R(i)) x [0, h_i).
struct CylinderSet {
    RepresentationSpace space;
    SoficAutomaton automaton;
    std::vector<FieldElement> heights;
    std::vector<double> height_values;
    RadiusBounds bounds;
    BetaPowers powers;
    int depth = 0;
};

CylinderSet make_cylinders(const RepresentationSpace& space, const ParryData& parry, int depth);

/// pt must carry real_coord.
MembershipVerdict membership(const CylinderSet& cyl, const EmbeddedPoint& pt);
/// Tests (delta(x), x) with the piece selection x < h_i decided exactly. In is reported only
/// when a witness path is found; otherwise a near point is BoundaryUnknown.
MembershipVerdict membership(const CylinderSet& cyl, const FieldElement& x);

enum class WitnessStatus { Found, Exhausted, BudgetExceeded };
struct Witness {
    WitnessStatus status = WitnessStatus::BudgetExceeded;
    int piece = -1;
    /// Labels w_0 w_1 ... up to the start of the cycle, then the cycle.
    DigitWord prefix;
    DigitWord cycle;
    long nodes = 0;
};
/// Searches the reversed automaton for an eventually periodic path from one of `pieces` whose
/// delta-sum is exactly `t`, via residuals r -> (r - c) / beta kept inside the piece radii.
Witness find_witness(const CylinderSet& cyl, const FieldElement& t, const std::vector<int>& pieces,
                     long budget = 200000);
/// Nearest depth-k point of -R(i) over the listed pieces.
MembershipVerdict membership_in(const CylinderSet& cyl, const EmbeddedPoint& pt, const std::vector<int>& pieces);

/// Projected real coordinates of a point: re (and im) per arch place, then one per p-adic place.
std::vector<double> project(const RepresentationSpace& space, const PointCloud& cloud, std::size_t i);
int projected_dimension(const RepresentationSpace& space);

/// Occupied cells times cell volume, per piece.
std::vector<double> measure_estimate(const RepresentationSpace& space, const FractalApprox& approx,
                                     double resolution);
/// Positive eigenvector for the dominant eigenvalue, unit length.
std::vector<double> perron_vector(const Matrix& m);
double angle_degrees(const std::vector<double>& a, const std::vector<double>& b);

enum class AxisKind { ArchReal, ArchImag, Padic, Height };
struct Axis {
    AxisKind kind;
    int index;
    std::string label() const;
};
/// Axes of K_beta in order; Height is not included.
std::vector<Axis> plottable_axes(const RepresentationSpace& space);
/// "re0", "im1", "p0", "h"
Axis parse_axis(const std::string& s);

struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;
    std::string to_pgm() const;
    int distinct_shades() const;
};

/// Throws NoPlottableAxes unless exactly two distinct usable axes are given.
/// With a Height axis the pieces are negated and drawn as cylinders.
Raster render(const RepresentationSpace& space, const FractalApprox& approx, const std::vector<Axis>& axes,
              int width, int height, const std::vector<double>& heights = {});

/// Header lines then one sorted record per point: piece index and serialized point.
std::string cloud_text(const RepresentationSpace& space, const FractalApprox& approx);

/// Grid-accelerated Hausdorff distance between a stored cloud and a stream of points,
/// exact up to `cap`; returns a value > cap if some point has no partner within cap.
class HausdorffAccumulator {
   public:
    HausdorffAccumulator(const RepresentationSpace& space, const PointCloud& stored, double cap);
    void add(const std::complex<long double>* arch, const PadicElement* padic);
    double result() const;

   private:
    struct Key {
        std::vector<long long> v;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };
    Key key_of(const std::complex<double>* arch, const PadicElement* padic) const;
    double dist(std::size_t i, const std::complex<long double>* arch, const PadicElement* padic) const;

    const RepresentationSpace& space_;
    const PointCloud& stored_;
    double cap_;
    double cell_;
    std::vector<int> padic_digits_;
    std::vector<double> best_stored_;
    double worst_stream_ = 0;
    std::unordered_map<Key, std::vector<std::size_t>, KeyHash> grid_;
};

/// Hausdorff distance between two clouds, exact up to `cap`; a value > cap otherwise.
double hausdorff_distance(const RepresentationSpace& space, const PointCloud& a, const PointCloud& b, double cap);

// ---------------------------------------------------------------------------

template <class F>
void for_each_path_point(const RepresentationSpace& space, const SoficAutomaton& aut, const BetaPowers& pw,
                         int state, int depth, F&& f) {
    const int na = space.arch_count();
    const int np = static_cast<int>(space.padic().size());
    std::vector<std::vector<Edge>> out(static_cast<std::size_t>(aut.state_count));
    for (const auto& e : aut.edges) out[static_cast<std::size_t>(e.to)].push_back({e.to, e.label, e.from});
    std::vector<std::complex<long double>> arch(static_cast<std::size_t>((depth + 1) * na));
    std::vector<PadicElement> padic(static_cast<std::size_t>((depth + 1) * np));
    auto rec = [&](auto&& self, int s, int l) -> void {
        const auto* a = arch.data() + l * na;
        const auto* p = padic.data() + l * np;
        if (l == depth) {
            f(a, p);
            return;
        }
        for (const auto& e : out[static_cast<std::size_t>(s)]) {
            auto* a2 = arch.data() + (l + 1) * na;
            auto* p2 = padic.data() + (l + 1) * np;
            for (int i = 0; i < na; ++i) a2[i] = a[i] + static_cast<long double>(e.label) * pw.arch[l][i];
            for (int k = 0; k < np; ++k) p2[k] = space.padic()[k].add(p[k], pw.padic[l][e.label * np + k]);
            self(self, e.to, l + 1);
        }
    };
    rec(rec, state, 0);
}

}  // namespace betanum
