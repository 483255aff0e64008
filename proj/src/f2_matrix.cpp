#include "k2rank/f2_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace k2rank {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("BitMatrix::get");
    return (row_ptr(r)[c / 64] >> (c % 64)) & 1U;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("BitMatrix::set");
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    auto& word = row_ptr(r)[c / 64];
    word = value ? (word | mask) : (word & ~mask);
}

void BitMatrix::add_row(std::size_t dst, std::size_t src) {
    if (dst >= rows_ || src >= rows_) throw std::out_of_range("BitMatrix::add_row");
    auto* d = row_ptr(dst);
    const auto* s = row_ptr(src);
    for (std::size_t w = 0; w < words_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a >= rows_ || b >= rows_) throw std::out_of_range("BitMatrix::swap_rows");
    std::swap_ranges(row_ptr(a), row_ptr(a) + words_, row_ptr(b));
}

BitMatrix BitMatrix::without_row(std::size_t r) const {
    if (r >= rows_) throw std::out_of_range("BitMatrix::without_row");
    BitMatrix out(rows_ - 1, cols_);
    std::size_t dst = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        std::copy(row_ptr(i), row_ptr(i) + words_, out.row_ptr(dst++));
    }
    return out;
}

std::size_t BitMatrix::rank() const {
    BitMatrix m = *this;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
        const std::size_t word = c / 64;
        const std::uint64_t mask = std::uint64_t{1} << (c % 64);
        std::size_t pivot = rank;
        while (pivot < rows_ && !(m.row_ptr(pivot)[word] & mask)) ++pivot;
        if (pivot == rows_) continue;
        m.swap_rows(pivot, rank);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r != rank && (m.row_ptr(r)[word] & mask)) m.add_row(r, rank);
        }
        ++rank;
    }
    return rank;
}

std::vector<std::string> BitMatrix::to_strings() const {
    std::vector<std::string> out;
    for (std::size_t r = 0; r < rows_; ++r) {
        std::string s;
        for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace k2rank
