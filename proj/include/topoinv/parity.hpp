#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace topoinv {

using BigInt = boost::multiprecision::cpp_int;

// Parity of binom(n, j) by Lucas' criterion at p = 2: odd iff every binary
// digit of j is dominated by the matching digit of n. j > n gives even.
constexpr bool binom_odd(std::uint64_t n, std::uint64_t j) noexcept
{
    return (j & ~n) == 0;
}

// Row n of Pascal's triangle mod 2, i.e. the coefficients of (1 + w)^n.
struct ParityRow {
    std::uint64_t n = 0;
    std::vector<std::uint8_t> bits;

    std::size_t ones() const noexcept;
};

ParityRow parity_row(std::uint64_t n);

// Exact binomial coefficient.
BigInt binomial(std::uint64_t n, std::uint64_t j);

enum class IndexFamily {
    Real,                   // c = 1, binom(n, j) over n-k+1 <= j <= n
    Flip,                   // c = 2, binom(k+j-1, j) over n-2k+1 <= j <= n
    ComplexOrQuaternionic,  // binom(n, j) over n-k+1 <= j <= n
};

std::string_view to_string(IndexFamily f) noexcept;

struct NIndex {
    IndexFamily family;
    int n;
    int k;
    int value;
};

// Smallest j in the family's range with an odd governing binomial. The range
// is closed at n for every family. Throws InvalidParameters or NoIndex.
NIndex n_index(IndexFamily family, int n, int k);

// Whether binom(n, n-k+1) divides binom(m, m-l+1), in exact arithmetic.
bool binom_divides(int n, int k, int m, int l);

} // namespace topoinv
