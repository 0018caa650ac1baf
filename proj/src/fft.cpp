#include "ergolab/fft.hpp"

#include <cstring>
#include <mutex>

#include <fftw3.h>

#include "ergolab/error.hpp"

namespace ergolab {

namespace {

// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (ptr == nullptr) throw CapacityError("dft: out of memory");
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* ptr;
};

// Transforms run in an fftw_malloc'd buffer so that the codelets chosen (and
// hence the rounding) never depend on the alignment of the caller's vector.
void run(std::vector<Complex>& data, int sign) {
  if (data.empty()) return;
  if (data.size() > static_cast<std::size_t>(1) << 30) throw CapacityError("dft: transform too large");
  FftwBuffer buf(data.size());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf.ptr, buf.ptr, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw Error("dft: FFTW could not create a plan");
  std::memcpy(buf.ptr, data.data(), sizeof(fftw_complex) * data.size());
  fftw_execute(plan);
  std::memcpy(static_cast<void*>(data.data()), buf.ptr, sizeof(fftw_complex) * data.size());
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

void dft_positive(std::vector<Complex>& data) { run(data, FFTW_BACKWARD); }

void dft_negative(std::vector<Complex>& data) { run(data, FFTW_FORWARD); }

}  // namespace ergolab
