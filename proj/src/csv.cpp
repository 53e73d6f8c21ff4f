#include "longmem/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "longmem/errors.hpp"

namespace longmem {

std::string format_double(double v) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    const double back = std::strtod(buf, nullptr);
    if (back == v || (std::isnan(back) && std::isnan(v))) break;
  }
  return buf;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw ResourceError("cannot open for writing: " + path);
  out << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  if (!out.flush()) throw ResourceError("write failed: " + path);
}

void write_series(const std::string& path, const TimeSeries& x) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(x.size());
  for (double v : x) rows.push_back({format_double(v)});
  write_csv(path, "x", rows);
}

TimeSeries read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError("empty series file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x")
    throw ArgumentError("series file must start with header 'x': " + path);
  TimeSeries x;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (end == line.c_str() || *end != '\0')
      throw ArgumentError("bad series value '" + line + "' in " + path);
    x.push_back(v);
  }
  if (x.empty()) throw ArgumentError("series file has no data rows: " + path);
  return x;
}

void write_mse_scan(const std::string& path, const ExperimentConfig& cfg,
                    const McResult& res) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(res.grid.size());
  const std::string name = to_string(cfg.innovations.kind);
  for (std::size_t gi = 0; gi < res.grid.size(); ++gi)
    rows.push_back({std::to_string(cfg.n), std::to_string(res.grid[gi]),
                    std::to_string(cfg.taper_order), name, format_double(res.bias[gi]),
                    format_double(res.mse[gi]), format_double(res.se_bias[gi]),
                    format_double(res.se_mse[gi])});
  write_csv(path, "n,m,r,innovation,bias,mse,se_bias,se_mse", rows);
}

void write_benchmark(const std::string& path, const std::vector<BenchmarkRow>& rows) {
  std::vector<std::vector<std::string>> out;
  out.reserve(rows.size());
  for (const auto& row : rows)
    out.push_back({std::to_string(row.n), row.innovation, std::to_string(row.m_opt),
                   format_double(row.bias_at_opt), format_double(row.mse_at_opt)});
  write_csv(path, "n,innovation,m_opt,bias_at_opt,mse_at_opt", out);
}

void write_decorrelation(const std::string& path, const std::vector<DecorrelationRow>& rows) {
  std::vector<std::vector<std::string>> out;
  out.reserve(rows.size());
  for (const auto& row : rows)
    out.push_back({std::to_string(row.n), std::to_string(row.k), std::to_string(row.j),
                   format_double(row.dev), format_double(row.bound),
                   format_double(row.fitted_c)});
  write_csv(path, "n,k,j,dev,bound,fitted_C", out);
}

void write_edgeworth(const std::string& path,
                     const std::vector<EdgeworthFitResult>& rows) {
  std::vector<std::vector<std::string>> out;
  out.reserve(rows.size());
  for (const auto& row : rows)
    out.push_back({std::to_string(row.n), std::to_string(row.reps),
                   format_double(row.l1_gauss), format_double(row.l1_edgeworth)});
  write_csv(path, "n,reps,l1_gauss,l1_edgeworth", out);
}

void write_expansion_diagnostics(const std::string& path,
                                 const std::vector<ExpansionDiagnostics>& rows) {
  std::vector<std::vector<std::string>> out;
  out.reserve(rows.size());
  for (const auto& row : rows)
    out.push_back({std::to_string(row.n), std::to_string(row.k),
                   std::to_string(row.order), format_double(row.tensor_max),
                   format_double(row.trace_vn), format_double(row.lambda_min),
                   format_double(row.lambda_max)});
  write_csv(path, "n,k,order,tensor_max,trace_Vn,lambda_min,lambda_max", out);
}

void write_dhat_matrix(const std::string& path, const McResult& res) {
  std::string header = "rep";
  for (std::size_t m : res.grid) header += ",m" + std::to_string(m);
  std::vector<std::vector<std::string>> rows;
  rows.reserve(res.d_hat.size());
  for (std::size_t rep = 0; rep < res.d_hat.size(); ++rep) {
    std::vector<std::string> row{std::to_string(rep)};
    for (double v : res.d_hat[rep]) row.push_back(format_double(v));
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

}  // namespace longmem
