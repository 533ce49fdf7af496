#pragma once

#include <complex>
#include <vector>

namespace gkdv::fft {

// Thin FFTW wrappers, all unnormalized (plain DFT sums).  Plans are cached
// per transform length behind a mutex; execution uses FFTW's new-array
// interface so concurrent calls on distinct buffers are safe.

// out[k] = sum_j in[j] e^{-2*pi*i*j*k/n}, k = 0..n/2  (real input)
void r2c(const double* in, std::complex<double>* out, int n);

// out[j] = sum_k spec[k] e^{+2*pi*i*j*k/n} with Hermitian extension of the
// half-spectrum spec[0..n/2].  The input buffer is left untouched.
void c2r(const std::complex<double>* spec, double* out, int n);

// out[k] = sum_j in[j] e^{sign*2*pi*i*j*k/n}, sign = -1 (forward) or +1.
void c2c(const std::complex<double>* in, std::complex<double>* out, int n,
         int sign);

std::vector<std::complex<double>> r2c(const std::vector<double>& in);
std::vector<double> c2r(const std::vector<std::complex<double>>& spec, int n);

}  // namespace gkdv::fft
