#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace k2rank {

/// Dense matrix over F2 with rows packed into 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool value);

    /// row[dst] ^= row[src]
    void add_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);
    BitMatrix without_row(std::size_t r) const;

    /// Rank by word-level Gaussian elimination on a copy.
    std::size_t rank() const;

    /// Rows as strings of '0'/'1'.
    std::vector<std::string> to_strings() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> data_;

    std::uint64_t* row_ptr(std::size_t r) { return data_.data() + r * words_; }
    const std::uint64_t* row_ptr(std::size_t r) const { return data_.data() + r * words_; }
};

}  // namespace k2rank
