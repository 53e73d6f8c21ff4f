#pragma once
#include <string>
#include <vector>

#include "longmem/harness.hpp"
#include "longmem/simulate.hpp"

namespace longmem {

// shortest round-trip decimal form (printf %.17g semantics trimmed by strtod
// round-trip), so identical doubles always serialize to identical bytes
std::string format_double(double v);

// header + one line per row, fields joined by ','
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows);

// single-column series files with header `x`
void write_series(const std::string& path, const TimeSeries& x);
TimeSeries read_series(const std::string& path);

// schema: n,m,r,innovation,bias,mse,se_bias,se_mse — one row per grid entry
void write_mse_scan(const std::string& path, const ExperimentConfig& cfg,
                    const McResult& res);

// schema: n,innovation,m_opt,bias_at_opt,mse_at_opt
struct BenchmarkRow {
  std::size_t n = 0;
  std::string innovation;
  std::size_t m_opt = 0;
  double bias_at_opt = 0.0;
  double mse_at_opt = 0.0;
};
void write_benchmark(const std::string& path, const std::vector<BenchmarkRow>& rows);

// schema: n,k,j,dev,bound,fitted_C
void write_decorrelation(const std::string& path, const std::vector<DecorrelationRow>& rows);

// schema: n,reps,l1_gauss,l1_edgeworth
void write_edgeworth(const std::string& path,
                     const std::vector<EdgeworthFitResult>& rows);

// One row of expansion diagnostics: cumulant-tensor magnitudes and the
// spectrum of the exact covariance of the normalized DFT vector.
// schema: n,k,order,tensor_max,trace_Vn,lambda_min,lambda_max
struct ExpansionDiagnostics {
  std::size_t n = 0;
  std::size_t k = 0;
  int order = 0;
  double tensor_max = 0.0;
  double trace_vn = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

void write_expansion_diagnostics(const std::string& path,
                                 const std::vector<ExpansionDiagnostics>& rows);

// replicate-level estimates: rep,m<grid[0]>,m<grid[1]>,... — one row per
// replication (excluded replications serialize as nan)
void write_dhat_matrix(const std::string& path, const McResult& res);

}  // namespace longmem
