#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "topoinv/parity.hpp"

namespace topoinv {

// Principal ideal <alpha^exponent> in Z/2[alpha], |alpha| = generator_degree.
// Exponents count powers of the generator, not total degree.
struct IndexIdeal {
    int generator_degree = 4;
    int exponent = 1;

    int total_degree() const noexcept { return generator_degree * exponent; }
    friend bool operator==(const IndexIdeal&, const IndexIdeal&) = default;
};

// The integral index of HV_{n,k} in its lowest degree 4(n-k+1) is generated
// by multiplier * k^{n-k+1}, k the degree-4 generator of H^*(BS^3; Z).
struct IntegralIndexComponent {
    int degree;
    BigInt multiplier;
};

// S^3 acting freely on S^{4n-1}.
IndexIdeal index_sphere(int n);
// S^3 acting diagonally on quaternionic k-frames in H^n.
IndexIdeal index_stiefel_mod2(int n, int k);
IntegralIndexComponent index_stiefel_integral_component(int n, int k);

// <alpha^a> contains <alpha^b>. Throws DegreeMismatch.
bool ideal_contains(const IndexIdeal& a, const IndexIdeal& b);

struct Sphere {
    int n;  // S^{4n-1}
};
struct StiefelH {
    int n;
    int k;
};
struct SymplecticGroup {
    int n;  // Sp(n) = HV_{n,n}
};
using GSpace = std::variant<Sphere, StiefelH, SymplecticGroup>;

// "S4n-1:5" (the sphere S^19), "HV:6,2", "Sp:4".
GSpace parse_gspace(std::string_view text);
std::string to_string(const GSpace& g);
void validate(const GSpace& g);

// Mod-2 index of the S^3-space.
IndexIdeal index_of(const GSpace& g);

// Lowest power of the degree-4 generator present in the integral index.
int integral_index_exponent(const GSpace& g);

enum class Verdict {
    Possible,     // an S^3-map exists
    NotRuledOut,  // every known necessary condition holds
    Impossible,   // a necessary condition fails
};

std::string_view to_string(Verdict v) noexcept;

struct FeasibilityVerdict {
    Verdict status;
    std::string by;      // which result decided it
    std::string reason;  // the violated condition, for Impossible
};

FeasibilityVerdict feasibility(const GSpace& source, const GSpace& target);

} // namespace topoinv
