#include "longmem/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "longmem/errors.hpp"

namespace longmem {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// one cached plan per (size, direction); plans are reusable across buffers
// via the new-array execute functions
class PlanCache {
 public:
  fftw_plan forward(int n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto it = fwd_.find(n);
    if (it != fwd_.end()) return it->second;
    std::vector<double> in(static_cast<std::size_t>(n));
    std::vector<fftw_complex> out(static_cast<std::size_t>(n) / 2 + 1);
    fftw_plan p = fftw_plan_dft_r2c_1d(n, in.data(), out.data(),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw NumericalError("fftw r2c plan failed");
    fwd_[n] = p;
    return p;
  }
  fftw_plan backward(int n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto it = bwd_.find(n);
    if (it != bwd_.end()) return it->second;
    std::vector<fftw_complex> in(static_cast<std::size_t>(n) / 2 + 1);
    std::vector<double> out(static_cast<std::size_t>(n));
    fftw_plan p = fftw_plan_dft_c2r_1d(n, in.data(), out.data(),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw NumericalError("fftw c2r plan failed");
    bwd_[n] = p;
    return p;
  }
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }

 private:
  std::map<int, fftw_plan> fwd_, bwd_;
};

}  // namespace

void rfft(const std::vector<double>& in, std::vector<std::complex<double>>& out) {
  const int n = static_cast<int>(in.size());
  if (n == 0) throw ArgumentError("rfft: empty input");
  out.assign(static_cast<std::size_t>(n) / 2 + 1, {});
  fftw_plan p = PlanCache::instance().forward(n);
  fftw_execute_dft_r2c(p, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void irfft(const std::vector<std::complex<double>>& in, int n, std::vector<double>& out) {
  if (n <= 0 || in.size() != static_cast<std::size_t>(n) / 2 + 1)
    throw ArgumentError("irfft: size mismatch");
  // c2r destroys its input; work on a copy
  std::vector<std::complex<double>> tmp(in);
  out.assign(static_cast<std::size_t>(n), 0.0);
  fftw_plan p = PlanCache::instance().backward(n);
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(tmp.data()), out.data());
  const double scale = 1.0 / n;
  for (double& v : out) v *= scale;
}

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t L = next_pow2(full);
  std::vector<double> pa(L, 0.0), pb(L, 0.0);
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  std::vector<std::complex<double>> fa, fb;
  rfft(pa, fa);
  rfft(pb, fb);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  std::vector<double> out;
  irfft(fa, static_cast<int>(L), out);
  out.resize(full);
  return out;
}

}  // namespace longmem
