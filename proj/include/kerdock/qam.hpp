#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kerdock/linalg.hpp"

namespace kerdock {

/// Square Gray-mapped QAM with unit average symbol energy.
///
/// A k-bit symbol word is split MSB-first into k/2 in-phase bits and k/2
/// quadrature bits. Per axis, the bits are read as a binary-reflected Gray
/// code whose decoded index i picks the amplitude (m-1) - 2i from
/// {+(m-1), ..., -(m-1)}, m = sqrt(order). Under this rule QPSK maps the
/// word 00 to (1+j)/sqrt(2).
class Qam {
  public:
    explicit Qam(int order) : order_(order) {
        if (order != 4 && order != 16 && order != 64)
            throw std::invalid_argument("Qam: order must be 4, 16 or 64");
        side_ = order == 4 ? 2 : order == 16 ? 4 : 8;
        axis_bits_ = order == 4 ? 1 : order == 16 ? 2 : 3;
        double mean_sq = 0.0;
        for (int i = 0; i < side_; ++i) {
            const double lv = double(side_ - 1 - 2 * i);
            mean_sq += lv * lv;
        }
        mean_sq /= side_;
        scale_ = 1.0 / std::sqrt(2.0 * mean_sq);
    }

    int order() const { return order_; }
    int bits_per_symbol() const { return 2 * axis_bits_; }
    double unit_scale() const { return scale_; }

    Complex modulate(unsigned word) const {
        if (word >= static_cast<unsigned>(order_))
            throw std::invalid_argument("Qam::modulate: word out of range");
        const unsigned gi = word >> axis_bits_;
        const unsigned gq = word & ((1u << axis_bits_) - 1u);
        return Complex{level(gray_decode(gi)), level(gray_decode(gq))};
    }

    /// Minimum-distance slicing back to the symbol word.
    unsigned demodulate(Complex z) const {
        const unsigned gi = gray_encode(slice(z.real()));
        const unsigned gq = gray_encode(slice(z.imag()));
        return (gi << axis_bits_) | gq;
    }

  private:
    double level(unsigned index) const { return double(side_ - 1 - 2 * int(index)) * scale_; }

    unsigned slice(double x) const {
        const double idx = (double(side_ - 1) - x / scale_) / 2.0;
        const long r = std::lround(idx);
        return static_cast<unsigned>(std::max(0l, std::min(long(side_ - 1), r)));
    }

    static unsigned gray_encode(unsigned i) { return i ^ (i >> 1); }

    static unsigned gray_decode(unsigned g) {
        unsigned b = g;
        b ^= b >> 1;
        b ^= b >> 2;
        return b & 0x7u;
    }

    int order_, side_, axis_bits_;
    double scale_;
};

}  // namespace kerdock
