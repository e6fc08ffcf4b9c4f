#pragma once

// Finite graded-commutative algebras over Z/2 of the shape
//
//     Z/2[y] / (y^N)  (x)  V(z_a, ..., z_b)
//
// where V is a simple system of generators: square-free monomials in the z's
// form a basis and each z_j squares to another generator or to zero. Every
// cohomology ring handled by this library has this form.
//
// Monomials are stored as (y exponent, bitmask of generator positions), so
// multiplication is bit twiddling plus a cascade of squaring rewrites.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace topoinv {

enum class SquareKind { Zero, MapsTo, Undetermined };

struct SquareRule {
    SquareKind kind = SquareKind::Zero;
    int target = 0;  // label of z_j^2, meaningful for MapsTo only

    static SquareRule zero() { return {SquareKind::Zero, 0}; }
    static SquareRule maps_to(int label) { return {SquareKind::MapsTo, label}; }
    static SquareRule undetermined() { return {SquareKind::Undetermined, 0}; }

    friend bool operator==(const SquareRule&, const SquareRule&) = default;
};

struct SimpleGenerator {
    int label;
    int degree;
    SquareRule square;

    friend bool operator==(const SimpleGenerator&, const SimpleGenerator&) = default;
};

// y of the given degree with y^order = 0.
struct Truncation {
    int degree;
    int order;

    friend bool operator==(const Truncation&, const Truncation&) = default;
};

// Which Steenrod action the presentation supports.
enum class PresentationKind {
    Custom,
    RealStiefel,
    ComplexStiefel,
    QuaternionicStiefel,
    Projective,
};

struct Monomial {
    std::uint32_t y_exp = 0;
    std::uint64_t gens = 0;  // bit i set <=> simple generator at position i

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

enum class UndeterminedPolicy {
    Throw,        // raise UndeterminedSquare
    TreatAsZero,  // kill the monomial and report it through the flag
};

class Presentation {
public:
    static constexpr std::size_t kMaxGenerators = 63;

    Presentation(std::optional<Truncation> trunc, std::vector<SimpleGenerator> gens, int ambient_bound,
                 PresentationKind kind = PresentationKind::Custom, std::string name = "custom",
                 std::string gen_symbol = "z");

    const std::optional<Truncation>& trunc() const noexcept { return trunc_; }
    const std::vector<SimpleGenerator>& gens() const noexcept { return gens_; }
    int ambient_bound() const noexcept { return ambient_bound_; }
    PresentationKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    const std::string& gen_symbol() const noexcept { return gen_symbol_; }

    // Truncation order N; 1 when there is no polynomial generator.
    int order() const noexcept { return trunc_ ? trunc_->order : 1; }
    std::size_t num_gens() const noexcept { return gens_.size(); }
    std::uint64_t dimension() const noexcept { return std::uint64_t(order()) << gens_.size(); }
    int top_degree() const noexcept;
    bool has_undetermined_square() const noexcept;

    std::optional<std::size_t> position_of(int label) const;
    int degree(Monomial m) const noexcept;
    bool is_valid(Monomial m) const noexcept;

    // Dense index in [0, dimension()).
    std::uint64_t index_of(Monomial m) const noexcept { return (std::uint64_t(m.y_exp) << gens_.size()) | m.gens; }
    Monomial monomial_at(std::uint64_t index) const noexcept;

    // Product of two basis monomials, or nullopt when it vanishes. With
    // TreatAsZero, *undetermined_hit is set whenever an undetermined square
    // was involved.
    std::optional<Monomial> multiply(Monomial a, Monomial b, UndeterminedPolicy policy = UndeterminedPolicy::Throw,
                                     bool* undetermined_hit = nullptr) const;

    std::string generator_name(std::size_t position) const;
    std::string monomial_name(Monomial m) const;

    friend bool operator==(const Presentation& a, const Presentation& b)
    {
        return a.trunc_ == b.trunc_ && a.gens_ == b.gens_ && a.ambient_bound_ == b.ambient_bound_ &&
               a.kind_ == b.kind_;
    }

private:
    static constexpr int kSquareZero = -1;
    static constexpr int kSquareUndetermined = -2;

    std::optional<Truncation> trunc_;
    std::vector<SimpleGenerator> gens_;
    int ambient_bound_;
    PresentationKind kind_;
    std::string name_;
    std::string gen_symbol_;
    std::vector<int> square_pos_;  // position of the square, or one of the kSquare* markers
};

// A Z/2-linear combination of monomials of one presentation. Terms are kept
// sorted and duplicate-free, so == is structural equality.
class Element {
public:
    explicit Element(const Presentation& p) : pres_(&p) {}

    static Element one(const Presentation& p);
    static Element monomial(const Presentation& p, Monomial m);
    static Element generator(const Presentation& p, int label);
    static Element y(const Presentation& p);

    const Presentation& presentation() const noexcept { return *pres_; }
    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    // Degree when homogeneous and nonzero.
    std::optional<int> degree() const;
    Element homogeneous_part(int d) const;

    // Adds (toggles) a single monomial.
    void toggle(Monomial m);
    Element& operator+=(const Element& other);
    friend Element operator+(Element a, const Element& b) { return a += b; }

    friend bool operator==(const Element& a, const Element& b)
    {
        return a.pres_ == b.pres_ && a.terms_ == b.terms_;
    }

private:
    friend Element from_unsorted(const Presentation& p, std::vector<Monomial> terms);
    const Presentation* pres_;
    std::vector<Monomial> terms_;
};

// Builds an element from a list of monomials with repetitions cancelling mod 2.
Element from_unsorted(const Presentation& p, std::vector<Monomial> terms);

Element mul(const Presentation& p, const Element& a, const Element& b);
inline Element operator*(const Element& a, const Element& b) { return mul(a.presentation(), a, b); }

// Z/2-dimension in each degree 0..top_degree.
std::vector<std::uint64_t> poincare(const Presentation& p);

int top_degree(const Presentation& p);

// Sq^i. Full action on real Stiefel rings; degreewise axioms only on complex
// and quaternionic Stiefel rings; pure powers of y elsewhere.
Element steenrod_sq(const Presentation& p, int i, const Element& a);

enum class CupMode { GeneratorSearch, ExhaustiveOracle };

struct CupLength {
    int value = 0;
    std::vector<std::string> witness;  // factors of one nonzero product of maximal length
    bool caveat = false;               // an undetermined square was taken to be zero
};

inline constexpr std::uint64_t kDefaultOracleCap = std::uint64_t(1) << 14;
inline constexpr std::uint64_t kDefaultSearchCap = std::uint64_t(1) << 24;

CupLength cup_length(const Presentation& p, CupMode mode, std::uint64_t cap = 0);

} // namespace topoinv
