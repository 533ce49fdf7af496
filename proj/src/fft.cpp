#include "gkdv/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "gkdv/errors.hpp"

namespace gkdv::fft {
namespace {

// FFTW planning is not thread-safe; executing distinct buffers through a
// cached plan with the new-array interface is.  FFTW_UNALIGNED lets plans
// run on std::vector storage regardless of allocation alignment.
std::mutex plan_mutex;

fftw_plan r2c_plan(int n) {
  static std::map<int, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> in(n);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan p = fftw_plan_dft_r2c_1d(
      n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(n, p);
  return p;
}

fftw_plan c2r_plan(int n) {
  static std::map<int, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> in(n / 2 + 1);
  std::vector<double> out(n);
  fftw_plan p = fftw_plan_dft_c2r_1d(
      n, reinterpret_cast<fftw_complex*>(in.data()), out.data(),
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(n, p);
  return p;
}

fftw_plan c2c_plan(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find({n, sign});
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> in(n), out(n);
  fftw_plan p = fftw_plan_dft_1d(
      n, reinterpret_cast<fftw_complex*>(in.data()),
      reinterpret_cast<fftw_complex*>(out.data()),
      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(std::make_pair(n, sign), p);
  return p;
}

}  // namespace

void r2c(const double* in, std::complex<double>* out, int n) {
  if (n < 1) throw DimensionError("transform length must be positive");
  fftw_execute_dft_r2c(r2c_plan(n), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void c2r(const std::complex<double>* spec, double* out, int n) {
  if (n < 1) throw DimensionError("transform length must be positive");
  // c2r destroys its input, so run on a scratch copy.
  std::vector<std::complex<double>> scratch(spec, spec + n / 2 + 1);
  fftw_execute_dft_c2r(c2r_plan(n),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

void c2c(const std::complex<double>* in, std::complex<double>* out, int n,
         int sign) {
  if (n < 1) throw DimensionError("transform length must be positive");
  fftw_execute_dft(c2c_plan(n, sign),
                   reinterpret_cast<fftw_complex*>(
                       const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

std::vector<std::complex<double>> r2c(const std::vector<double>& in) {
  std::vector<std::complex<double>> out(in.size() / 2 + 1);
  r2c(in.data(), out.data(), static_cast<int>(in.size()));
  return out;
}

std::vector<double> c2r(const std::vector<std::complex<double>>& spec, int n) {
  if (static_cast<int>(spec.size()) < n / 2 + 1) {
    throw DimensionError("half-spectrum shorter than n/2+1");
  }
  std::vector<double> out(n);
  c2r(spec.data(), out.data(), n);
  return out;
}

}  // namespace gkdv::fft
