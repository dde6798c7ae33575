#include "xlab/kernels.hpp"

#include <cmath>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xlab::kernels {

double Csr::at(int i, int j) const {
  for (int k = ptr[static_cast<size_t>(i)]; k < ptr[static_cast<size_t>(i) + 1]; ++k)
    if (idx[static_cast<size_t>(k)] == j) return val[static_cast<size_t>(k)];
  return 0.0;
}

namespace {

inline void spmm_row(const Csr& a, const double* b, double* c, int k, int i) {
  double* crow = c + static_cast<size_t>(i) * k;
  std::memset(crow, 0, sizeof(double) * static_cast<size_t>(k));
  for (int e = a.ptr[static_cast<size_t>(i)]; e < a.ptr[static_cast<size_t>(i) + 1]; ++e) {
    const double v = a.val[static_cast<size_t>(e)];
    const double* brow = b + static_cast<size_t>(a.idx[static_cast<size_t>(e)]) * k;
    for (int j = 0; j < k; ++j) crow[j] += v * brow[j];
  }
}

inline double tv_row(const double* prow, int n, const double* pi) {
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += std::abs(prow[j] - pi[j]);
  return 0.5 * s;
}

}  // namespace

void spmm_serial(const Csr& a, const double* b, double* c, int k) {
  for (int i = 0; i < a.rows; ++i) spmm_row(a, b, c, k, i);
}

void spmm_omp(const Csr& a, const double* b, double* c, int k) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.rows; ++i) spmm_row(a, b, c, k, i);
}

void spmm(const Csr& a, const double* b, double* c, int k) {
  if (parallel_enabled())
    spmm_omp(a, b, c, k);
  else
    spmm_serial(a, b, c, k);
}

void axpy_serial(double s, const double* x, double* y, size_t len) {
  for (size_t i = 0; i < len; ++i) y[i] += s * x[i];
}

void axpy_omp(double s, const double* x, double* y, size_t len) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(len); ++i)
    y[static_cast<size_t>(i)] += s * x[static_cast<size_t>(i)];
}

void axpy(double s, const double* x, double* y, size_t len) {
  if (parallel_enabled())
    axpy_omp(s, x, y, len);
  else
    axpy_serial(s, x, y, len);
}

double tv_max_rows_serial(const double* p, int n, const double* pi) {
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = tv_row(p + static_cast<size_t>(i) * n, n, pi);
    if (t > best) best = t;
  }
  return best;
}

double tv_max_rows_omp(const double* p, int n, const double* pi) {
  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (int i = 0; i < n; ++i) {
    const double t = tv_row(p + static_cast<size_t>(i) * n, n, pi);
    if (t > best) best = t;
  }
  return best;
}

double tv_max_rows(const double* p, int n, const double* pi) {
  if (parallel_enabled()) return tv_max_rows_omp(p, n, pi);
  return tv_max_rows_serial(p, n, pi);
}

bool parallel_enabled() {
#ifdef _OPENMP
  return omp_get_max_threads() > 1;
#else
  return false;
#endif
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace xlab::kernels
