#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "topoinv/gralg.hpp"

namespace topoinv {

// RV, CV, HV: real, complex and quaternionic Stiefel manifolds of k-frames in
// F^n. RX, CX, HX: their projective quotients. FV: flip Stiefel manifold
// FV_{n,2k}; here k is the half-width.
enum class Family { RV, CV, HV, RX, FV, CX, HX };

std::string_view to_string(Family f) noexcept;
Family parse_family(std::string_view text);

struct SpaceId {
    Family family;
    int n;
    int k;

    friend bool operator==(const SpaceId&, const SpaceId&) = default;
};

// "RX:5,2" and friends. Parsing checks syntax only; validate() checks ranges.
SpaceId parse_space(std::string_view text);
std::string to_string(const SpaceId& s);

bool is_valid(const SpaceId& s) noexcept;
void validate(const SpaceId& s);  // throws InvalidParameters

bool is_projective(Family f) noexcept;

// Degree of the class pulled back from the base of the fibration
// fiber -> space -> BG: 1 for RX and FV, 2 for CX, 4 for HX.
int base_degree(Family f);

Presentation presentation(const SpaceId& s);
long long dimension(const SpaceId& s);

struct IntRange {
    int lo;
    int hi;  // inclusive; lo > hi is empty
};

// "3..5" or a single "4".
IntRange parse_range(std::string_view text);

struct Catalog {
    std::vector<SpaceId> spaces;
    std::size_t skipped = 0;  // grid points that failed validation
};

// Family-major, then n, then k ascending.
Catalog catalog(const std::vector<Family>& families, IntRange n, IntRange k);

// Outcome of simulating the Serre spectral sequence of
// fiber -> space -> BG on a finite degree window.
struct SSReport {
    SpaceId space;
    int window = 0;
    int first_nonzero_differential_page = 0;  // 0 when every differential vanishes
    std::vector<std::uint64_t> e_infinity_series;
    std::vector<std::uint64_t> presentation_series;
    bool consistent = true;  // d o d landed in the boundaries on every page
    bool match = false;
};

inline constexpr std::uint64_t kDefaultSpectralCap = std::uint64_t(1) << 22;

// Only projective families (RX, FV, CX, HX). cap bounds the number of E_2
// basis elements on the window; 0 selects the default.
SSReport serre_verify(const SpaceId& s, int window, std::uint64_t cap = 0);

} // namespace topoinv
