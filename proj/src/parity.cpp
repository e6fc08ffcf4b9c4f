#include "topoinv/parity.hpp"

#include <bit>
#include <string>

#include "topoinv/errors.hpp"

namespace topoinv {

std::size_t ParityRow::ones() const noexcept
{
    std::size_t count = 0;
    for (auto b : bits)
        count += b;
    return count;
}

ParityRow parity_row(std::uint64_t n)
{
    ParityRow row;
    row.n = n;
    row.bits.resize(n + 1);
    for (std::uint64_t j = 0; j <= n; ++j)
        row.bits[j] = binom_odd(n, j) ? 1 : 0;
    return row;
}

BigInt binomial(std::uint64_t n, std::uint64_t j)
{
    if (j > n)
        return 0;
    j = std::min(j, n - j);
    BigInt result = 1;
    // result stays integral: after step i it equals binom(n-j+i, i)
    for (std::uint64_t i = 1; i <= j; ++i) {
        result *= n - j + i;
        result /= i;
    }
    return result;
}

std::string_view to_string(IndexFamily f) noexcept
{
    switch (f) {
    case IndexFamily::Real: return "real";
    case IndexFamily::Flip: return "flip";
    case IndexFamily::ComplexOrQuaternionic: return "complex-or-quaternionic";
    }
    return "?";
}

NIndex n_index(IndexFamily family, int n, int k)
{
    auto bad = [&](const char* why) {
        return InvalidParameters(std::string("N-index (") + std::string(to_string(family)) + ", n=" +
                                 std::to_string(n) + ", k=" + std::to_string(k) + "): " + why);
    };

    int lo = 0;
    switch (family) {
    case IndexFamily::Real:
        if (!(1 < k && k < n))
            throw bad("requires 1 < k < n");
        lo = n - k + 1;
        break;
    case IndexFamily::Flip:
        if (!(k >= 1 && 2 * k < n))
            throw bad("requires k >= 1 and 2k < n");
        lo = n - 2 * k + 1;
        break;
    case IndexFamily::ComplexOrQuaternionic:
        if (!(1 <= k && k <= n))
            throw bad("requires 1 <= k <= n");
        lo = n - k + 1;
        break;
    }

    for (int j = lo; j <= n; ++j) {
        bool odd = family == IndexFamily::Flip
                       ? binom_odd(static_cast<std::uint64_t>(k + j - 1), static_cast<std::uint64_t>(j))
                       : binom_odd(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(j));
        if (odd)
            return {family, n, k, j};
    }
    throw NoIndex("no odd binomial in range " + std::to_string(lo) + ".." + std::to_string(n) +
                  " for flip N-index (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
}

bool binom_divides(int n, int k, int m, int l)
{
    if (!(1 <= k && k <= n && 1 <= l && l <= m))
        throw InvalidParameters("binom_divides requires 1 <= k <= n and 1 <= l <= m");
    BigInt a = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(n - k + 1));
    BigInt b = binomial(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(m - l + 1));
    return b % a == 0;
}

} // namespace topoinv
