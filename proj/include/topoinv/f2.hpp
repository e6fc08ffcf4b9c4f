#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace topoinv::f2 {

// Dense vector over Z/2.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }
    bool get(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1; }
    void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t(1) << (i % 64); }
    void set(std::size_t i) noexcept { words_[i / 64] |= std::uint64_t(1) << (i % 64); }

    BitVec& operator^=(const BitVec& o) noexcept
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            words_[w] ^= o.words_[w];
        return *this;
    }

    bool is_zero() const noexcept;
    // Index of the lowest set bit.
    std::optional<std::size_t> pivot() const noexcept;

    friend bool operator==(const BitVec&, const BitVec&) = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// A subspace kept in echelon form: each stored row has a distinct pivot and
// no other row has a bit at that pivot's position below it.
class Subspace {
public:
    explicit Subspace(std::size_t ambient) : ambient_(ambient), pivot_row_(ambient, -1) {}

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return rows_.size(); }
    const std::vector<BitVec>& rows() const noexcept { return rows_; }

    // Reduces v against the stored rows in place; zero iff v was in the span.
    void reduce(BitVec& v) const;
    bool contains(BitVec v) const;
    // Adds v; returns false when it was already in the span.
    bool insert(BitVec v);

private:
    std::size_t ambient_;
    std::vector<BitVec> rows_;
    std::vector<int> pivot_row_;
};

} // namespace topoinv::f2
