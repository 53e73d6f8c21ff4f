#pragma once
#include <complex>
#include <vector>

namespace longmem {

// Minimal FFTW front end.  Plans are created with FFTW_ESTIMATE (deterministic
// plan choice) and FFTW_UNALIGNED (plain std::vector buffers), cached per size,
// and guarded by a mutex: FFTW's planner is not thread-safe, execution on
// distinct buffers is.

// real input length n -> n/2+1 complex bins, unnormalized forward transform
// out[k] = sum_{t=0}^{n-1} in[t] e^{-2pi i t k / n}
void rfft(const std::vector<double>& in, std::vector<std::complex<double>>& out);

// inverse of rfft; result scaled by 1/n so irfft(rfft(x)) == x
void irfft(const std::vector<std::complex<double>>& in, int n, std::vector<double>& out);

// linear convolution of two real sequences via zero-padded FFT
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b);

// smallest power of two >= v
std::size_t next_pow2(std::size_t v);

}  // namespace longmem
