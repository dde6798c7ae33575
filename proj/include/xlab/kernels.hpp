#pragma once
#include <cstddef>
#include <vector>

namespace xlab::kernels {

// Compressed sparse rows; val[ptr[i]..ptr[i+1]) are row i's entries.
struct Csr {
  int rows = 0, cols = 0;
  std::vector<int> ptr{0};
  std::vector<int> idx;
  std::vector<double> val;

  double at(int i, int j) const;  // 0 if absent (linear scan of row i)
};

// C = A * B with B, C dense row-major (a.cols x k and a.rows x k). Each
// output row is an independent gather, so the parallel variant is bitwise
// identical to the serial one.
void spmm_serial(const Csr& a, const double* b, double* c, int k);
void spmm_omp(const Csr& a, const double* b, double* c, int k);
void spmm(const Csr& a, const double* b, double* c, int k);

// y += s * x, elementwise.
void axpy_serial(double s, const double* x, double* y, size_t len);
void axpy_omp(double s, const double* x, double* y, size_t len);
void axpy(double s, const double* x, double* y, size_t len);

// max over rows i of (1/2) sum_j |p[i,j] - pi[j]|; p dense row-major n x n.
double tv_max_rows_serial(const double* p, int n, const double* pi);
double tv_max_rows_omp(const double* p, int n, const double* pi);
double tv_max_rows(const double* p, int n, const double* pi);

bool parallel_enabled();  // true when compiled with OpenMP and threads > 1
int thread_count();

}  // namespace xlab::kernels
