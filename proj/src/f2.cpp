#include "topoinv/f2.hpp"

#include <bit>

namespace topoinv::f2 {

bool BitVec::is_zero() const noexcept
{
    for (auto w : words_)
        if (w)
            return false;
    return true;
}

std::optional<std::size_t> BitVec::pivot() const noexcept
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w])
            return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return std::nullopt;
}

void Subspace::reduce(BitVec& v) const
{
    // ascending scan: a row only has bits at or above its pivot
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i) && pivot_row_[i] >= 0)
            v ^= rows_[static_cast<std::size_t>(pivot_row_[i])];
}

bool Subspace::contains(BitVec v) const
{
    reduce(v);
    return v.is_zero();
}

bool Subspace::insert(BitVec v)
{
    reduce(v);
    auto p = v.pivot();
    if (!p)
        return false;
    pivot_row_[*p] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
}

} // namespace topoinv::f2
