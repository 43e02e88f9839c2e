#pragma once

#include "fput/grid.hpp"

namespace fput {

// Unnormalized forward DFT, normalized inverse (numpy convention).
CVec fft(const CVec& in);
CVec fft(const Vec& in);
CVec ifft(const CVec& in);
Vec ifft_real(const CVec& in);

// Spectral multiplier: F^{-1}[sym(k) F[f]] for real f, real part returned.
template <class Sym>
Vec apply_symbol(const Grid& g, const Vec& f, Sym&& sym) {
    CVec F = fft(f);
    for (int j = 0; j < g.N; ++j) F[j] *= sym(g.k[j]);
    return ifft_real(F);
}

}  // namespace fput
